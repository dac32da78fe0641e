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
 * Exact Gaussian-process regression with a user-supplied prior mean.
 *
 * Training targets are the residuals y - mu0(X). When standardization is on
 * the residuals are shifted to zero mean and scaled to unit variance; kernel
 * and noise hyperparameters then live in standardized units while every
 * prediction is returned in output units.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bopt/kernel.hpp"
#include "bopt/lbfgs.hpp"

namespace bopt {

/// Deterministic prior mean mu0(x). An empty value function means zero.
struct PriorMean {
    std::function<double(const Eigen::VectorXd &)> value;
    /// Optional analytic gradient; central differences are used otherwise.
    std::function<Eigen::VectorXd(const Eigen::VectorXd &)> gradient;

    [[nodiscard]] bool is_zero() const noexcept { return !value; }
    double operator()(const Eigen::VectorXd &x) const { return value ? value(x) : 0.0; }
    [[nodiscard]] Eigen::VectorXd grad(const Eigen::VectorXd &x) const;

    static PriorMean zero() { return {}; }
};

/// Output standardization: offset is the mean, scale the sample standard
/// deviation (1 when fewer than two points or the spread is negligible).
struct Standardization {
    double offset = 0.0;
    double scale = 1.0;
};
Standardization standardization_of(const Eigen::VectorXd &values, bool enabled = true);

/// Kernel and noise hyperparameters in standardized units.
struct GpHyperparameters {
    double signal_variance = 1.0;
    Eigen::VectorXd inv_sq_lengthscales;
    double noise_variance = 1e-2;

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(inv_sq_lengthscales.size());
    }
    /// [log sigma_k^2, log rho_1..d, log sigma^2].
    [[nodiscard]] Eigen::VectorXd to_log() const;
    static GpHyperparameters from_log(const Eigen::VectorXd &gamma);
    static GpHyperparameters defaults(KernelKind kind, std::size_t dim);
};

struct GpPrediction {
    double mean = 0.0;
    double variance = 0.0;
};

struct GpPredictionGrad {
    double mean = 0.0;
    double variance = 0.0;
    Eigen::VectorXd mean_grad;
    Eigen::VectorXd variance_grad;
};

/**
 * @brief Conditioned GP with a cached Cholesky factor.
 *
 * Immutable after construction; queries are const and thread-safe.
 */
class GPModel {
  public:
    /// `inputs` is d x n (one point per column).
    GPModel(Eigen::MatrixXd inputs, Eigen::VectorXd outputs, PriorMean prior,
            KernelKind kind, GpHyperparameters hyper, bool standardize = true);

    [[nodiscard]] GpPrediction predict(const Eigen::VectorXd &x) const;
    [[nodiscard]] GpPredictionGrad predict_with_gradient(const Eigen::VectorXd &x) const;

    /// Joint posterior covariance of f over the columns of `a`, output units.
    [[nodiscard]] Eigen::MatrixXd posterior_covariance(const Eigen::MatrixXd &a) const;
    /// Posterior cov(f(a_j), f(x)) for each column, output units.
    [[nodiscard]] Eigen::VectorXd posterior_cross_covariance(const Eigen::MatrixXd &a,
                                                             const Eigen::VectorXd &x) const;
    /// Posterior mean at every column of `a`.
    [[nodiscard]] Eigen::VectorXd predict_mean(const Eigen::MatrixXd &a) const;

    /// Negative log marginal likelihood at the current hyperparameters,
    /// standardized units.
    [[nodiscard]] double nlml() const { return nlml_; }

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(x_.cols()); }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(x_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd &inputs() const noexcept { return x_; }
    [[nodiscard]] const Eigen::VectorXd &outputs() const noexcept { return y_; }
    [[nodiscard]] const PriorMean &prior() const noexcept { return prior_; }
    [[nodiscard]] const GpHyperparameters &hyperparameters() const noexcept { return hyper_; }
    [[nodiscard]] const KernelParams &kernel() const noexcept { return kernel_; }
    [[nodiscard]] KernelKind kind() const noexcept { return kernel_.kind; }
    [[nodiscard]] bool standardized() const noexcept { return standardize_; }
    [[nodiscard]] double output_offset() const noexcept { return offset_; }
    [[nodiscard]] double output_scale() const noexcept { return scale_; }
    [[nodiscard]] double jitter() const noexcept { return jitter_; }
    /// Lower factor of K + (sigma^2 + jitter) I in standardized units; empty
    /// when there is no data.
    [[nodiscard]] const Eigen::MatrixXd &cholesky() const noexcept { return chol_; }
    /// Kernel against the training inputs, for fast repeated queries.
    [[nodiscard]] const KernelCache &kernel_cache() const noexcept { return cache_; }

  private:
    Eigen::MatrixXd x_;
    Eigen::VectorXd y_;
    PriorMean prior_;
    Eigen::VectorXd prior_at_x_;
    GpHyperparameters hyper_;
    KernelParams kernel_;
    KernelCache cache_;
    bool standardize_;
    double offset_ = 0.0;
    double scale_ = 1.0;
    double jitter_ = 0.0;
    Eigen::MatrixXd chol_;   // lower factor of K + (sigma^2 + jitter) I
    Eigen::VectorXd alpha_;  // (K + sigma^2 I)^-1 r
    double nlml_ = 0.0;
};

/// NLML of the model's data under other hyperparameters.
double nlml(const GPModel &model, const GpHyperparameters &hyper);

/**
 * @brief NLML in log-hyperparameter space with its analytic gradient.
 *
 * Precomputes the per-dimension distance features once so repeated
 * evaluations during fitting cost one Cholesky and one inverse each.
 */
class NlmlObjective {
  public:
    /// `residuals` are the (already standardized) targets.
    NlmlObjective(const Eigen::MatrixXd &inputs, Eigen::VectorXd residuals, KernelKind kind,
                  double period = 2.0 * std::numbers::pi);

    /// Returns +inf if the covariance is not positive definite at max jitter.
    /// If `fixed_log_noise` is set, gamma omits the last component.
    double operator()(const Eigen::VectorXd &gamma, Eigen::VectorXd *grad,
                      std::optional<double> fixed_log_noise = std::nullopt) const;

  private:
    KernelKind kind_;
    Eigen::VectorXd r_;
    std::vector<Eigen::MatrixXd> features_;
};

struct GpFitOptions {
    bool standardize = true;
    /// When false the supplied (or default) hyperparameters are kept.
    bool learn = true;
    /// Pinned observation-noise variance in output units.
    std::optional<double> fixed_noise_variance;
    /// Previous optimum, used as an extra start and as the fallback.
    std::optional<GpHyperparameters> warm_start;
    std::size_t restarts = 8;
    LbfgsOptions lbfgs{100, 8, 1e-5, 1e-7, 1e-10, 30};

    double min_inv_sq_lengthscale = 1e-3;
    double max_inv_sq_lengthscale = 1e3;
    double min_signal_variance = 1e-4;
    double max_signal_variance = 1e4;
    double min_noise_variance = 1e-8;
    double max_noise_variance = 1e1;
};

/**
 * @brief Fit hyperparameters by multi-start L-BFGS on the NLML and condition.
 *
 * With fewer than two points the warm start (or defaults) is kept.
 * Throws FitError if every start fails the positive-definiteness check.
 */
GPModel gp_fit(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &outputs,
               const PriorMean &prior, KernelKind kind, const GpFitOptions &options = {});

} // namespace bopt
