// Copyright 2026 The BOPT-VQE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * GP with a topological prior mean, acquisition functions and their
 * multi-start optimization over the periodic box [0, 2*pi)^d.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "bopt/gp.hpp"
#include "bopt/lbfgs.hpp"
#include "bopt/rng.hpp"
#include "bopt/svgp.hpp"

namespace bopt {

/// Deterministic prior mean for the high-shot model.
struct TopologicalPrior {
    PriorMean mean_fn;

    [[nodiscard]] bool is_zero() const noexcept { return mean_fn.is_zero(); }
    double operator()(const Eigen::VectorXd &theta) const { return mean_fn(theta); }

    static TopologicalPrior zero() { return {}; }
    /// Prior given by the predictive mean of a trained sparse GP.
    static TopologicalPrior from_surrogate(std::shared_ptr<const SvgpModel> surrogate);
};

/**
 * @brief GP-TP model: prior mean plus a zero-mean GP on the residuals.
 *
 * The residual GP is trained on {theta_i, y_i - prior(theta_i)}; predictions
 * add the prior back. The variance is the residual posterior variance.
 */
class GpTpModel {
  public:
    GpTpModel(TopologicalPrior prior, GPModel residual, Eigen::VectorXd observations);

    /// Fit the residual GP hyperparameters and condition.
    static GpTpModel fit(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &observations,
                         TopologicalPrior prior, KernelKind kind,
                         const GpFitOptions &options = {});

    [[nodiscard]] GpPrediction predict(const Eigen::VectorXd &theta) const;
    [[nodiscard]] GpPredictionGrad predict_with_gradient(const Eigen::VectorXd &theta) const;

    [[nodiscard]] const TopologicalPrior &prior() const noexcept { return prior_; }
    [[nodiscard]] const GPModel &residual_gp() const noexcept { return residual_; }
    [[nodiscard]] KernelKind kind() const noexcept { return residual_.kind(); }
    [[nodiscard]] std::size_t size() const { return residual_.size(); }
    [[nodiscard]] std::size_t dim() const { return residual_.dim(); }
    [[nodiscard]] const Eigen::MatrixXd &inputs() const noexcept { return residual_.inputs(); }
    /// Raw observations y_i (not residuals).
    [[nodiscard]] const Eigen::VectorXd &observations() const noexcept { return y_; }

  private:
    TopologicalPrior prior_;
    GPModel residual_;
    Eigen::VectorXd y_;
};

enum class AcquisitionKind { Lcb, Ei, NoisyEi };

AcquisitionKind parse_acquisition_kind(std::string_view text);
std::string to_string(AcquisitionKind kind);

struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::Lcb;
    double beta = 4.0;
    std::size_t mc_samples = 64;

    /// Throws ConfigError unless beta >= 0 and mc_samples >= 1.
    void validate() const;
};

/// mean - sqrt(beta) * sd. Minimized.
double acq_lcb(double mean, double sd, double beta);
double acq_lcb(const GpTpModel &model, const Eigen::VectorXd &theta, double beta,
               Eigen::VectorXd *grad = nullptr);

/// Closed-form expected improvement below eta. Maximized.
double acq_ei(double mean, double sd, double eta);
double acq_ei(const GpTpModel &model, const Eigen::VectorXd &theta, double eta,
              Eigen::VectorXd *grad = nullptr);

/**
 * @brief Monte-Carlo noisy expected improvement with fixed base draws.
 *
 * Joint posterior samples of f over the training inputs and theta are built
 * from the columns of `base_draws` ((n + 1) x samples); the value is the mean
 * of max(min_j f(x_j) - f(theta), 0). The observed-point factor is computed
 * once, so each query costs O(n^2).
 */
class NoisyEi {
  public:
    NoisyEi(const GpTpModel &model, Eigen::MatrixXd base_draws);

    static Eigen::MatrixXd draw_base(std::size_t n, std::size_t samples, Rng &rng);

    double operator()(const Eigen::VectorXd &theta, Eigen::VectorXd *grad = nullptr) const;
    [[nodiscard]] std::size_t samples() const {
        return static_cast<std::size_t>(z_last_.size());
    }

  private:
    const GpTpModel *model_;
    Eigen::MatrixXd chol_obs_;   // factor of the posterior covariance at the inputs
    Eigen::RowVectorXd best_;    // per-sample min over observed latent values
    Eigen::MatrixXd z_obs_;      // n x samples
    Eigen::RowVectorXd z_last_;  // samples
};

double acq_noisy_ei(const GpTpModel &model, const Eigen::VectorXd &theta,
                    const Eigen::MatrixXd &base_draws);

struct AcquisitionOptimizerOptions {
    std::size_t raw_candidates = 1024;
    std::size_t starts = 32;
    /// Best observed inputs included among the starts.
    std::size_t observed_starts = 5;
    LbfgsOptions lbfgs{200, 8, 1e-9, 1e-6, 1e-12, 30};
};

/// Objective value with optional gradient, to be minimized.
using AcquisitionFn = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd *)>;

struct OptimumResult {
    Eigen::VectorXd theta;
    double value = 0.0;
};

/**
 * @brief Multi-start minimization over the periodic box.
 *
 * Scores `raw_candidates` low-discrepancy points, starts L-BFGS from the best
 * `starts - extra` of them plus every column of `extra_starts`, evaluating
 * the function at wrapped coordinates. Returns the best wrapped point; ties go
 * to the lowest start index.
 */
OptimumResult minimize_periodic(const AcquisitionFn &fn, std::size_t dim,
                                const Eigen::MatrixXd &extra_starts, Rng &rng,
                                const AcquisitionOptimizerOptions &options = {});

/// Up to `count` training inputs with the lowest observations, best first.
Eigen::MatrixXd best_observed_inputs(const GpTpModel &model, std::size_t count);

struct Incumbent {
    double eta = 0.0;
    Eigen::VectorXd theta;
};

/// Minimum of the posterior mean.
Incumbent incumbent_eta(const GpTpModel &model, Rng &rng,
                        const AcquisitionOptimizerOptions &options = {});

struct AcquisitionResult {
    Eigen::VectorXd theta;
    /// LCB value, or the (positive) improvement for EI variants.
    double value = 0.0;
    /// Incumbent used by EI; NaN otherwise.
    double eta = 0.0;
};

AcquisitionResult optimize_acquisition(const GpTpModel &model, const AcquisitionSpec &spec,
                                       Rng &rng,
                                       const AcquisitionOptimizerOptions &options = {});

} // namespace bopt
