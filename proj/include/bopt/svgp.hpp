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
 * Sparse variational GP with a whitened inducing-point posterior.
 *
 * The inducing values are u = L v with L L^T = K_uu and q(v) = N(m, S),
 * S = L_S L_S^T. The predictive latent distribution at x is
 *
 *     mean = a^T m,  var = k(x, x) - a^T a + a^T S a,  a = L^{-1} k_u(x),
 *
 * and the bound is ELBO = (n / b) sum_batch E_q[log N(y | f, s2)] - KL(q || p)
 * with KL = (tr S + m^T m - l - log|S|) / 2. Targets are standardized
 * internally; kernel and noise parameters live in standardized units.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bopt/kernel.hpp"
#include "bopt/rng.hpp"

namespace bopt {

struct SvgpOptions {
    std::size_t num_inducing = 100; ///< clipped to the data size
    std::size_t batch_size = 256;
    std::size_t steps = 3000;
    double learning_rate = 1e-2;
    /// The step size is multiplied by `decay_factor` at each fraction.
    double decay_factor = 0.3;
    std::vector<double> decay_at{0.6, 0.85};
    bool train_hyperparameters = true;
    bool train_inducing = true;
    bool train_variational = true;
    bool standardize = true;
    double init_noise_variance = 0.1;

    double min_inv_sq_lengthscale = 1e-3;
    double max_inv_sq_lengthscale = 1e3;
    double min_signal_variance = 1e-4;
    double max_signal_variance = 1e4;
    double min_noise_variance = 1e-6;
    double max_noise_variance = 1e1;
};

/**
 * @brief Trained (or freshly initialized) sparse GP.
 *
 * Public fields are the model state; call refresh() after editing them so
 * the cached factors used by the queries are rebuilt. Queries are const and
 * thread-safe.
 */
class SvgpModel {
  public:
    KernelParams kernel;
    double noise_variance = 0.1;
    Eigen::MatrixXd inducing;  ///< d x l
    Eigen::VectorXd q_mean;    ///< whitened variational mean, l
    Eigen::MatrixXd q_sqrt;    ///< lower Cholesky factor of the whitened covariance
    double output_offset = 0.0;
    double output_scale = 1.0;
    std::size_t batch_size = 256;
    std::size_t steps_trained = 0;
    std::vector<double> elbo_trace;

    /// Rebuild cached factors; throws TrainingError(0, ...) if K_uu cannot
    /// be factorized.
    void refresh();

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(inducing.rows()); }
    [[nodiscard]] std::size_t num_inducing() const {
        return static_cast<std::size_t>(inducing.cols());
    }

    /// Predictive mean in output units.
    [[nodiscard]] double mean(const Eigen::VectorXd &x) const;
    /// Predictive mean in standardized units.
    [[nodiscard]] double standardized_mean(const Eigen::VectorXd &x) const;
    /// Latent predictive variance in output units.
    [[nodiscard]] double variance(const Eigen::VectorXd &x) const;
    /// Gradient of mean() with respect to x.
    [[nodiscard]] Eigen::VectorXd mean_gradient(const Eigen::VectorXd &x) const;

    [[nodiscard]] double jitter() const noexcept { return jitter_; }

  private:
    KernelCache cache_;            // kernel against the inducing points
    Eigen::MatrixXd chol_uu_;      // lower factor of K_uu + jitter I
    Eigen::VectorXd mean_weights_; // L^{-T} m
    double jitter_ = 0.0;
};

/**
 * @brief Inducing points by greedy farthest-point selection.
 *
 * The first point is drawn from `rng`; distances use the kernel's own
 * feature map (wrapped for periodic kernels). q_mean = 0, q_sqrt = I.
 */
SvgpModel svgp_init(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &outputs,
                    std::size_t num_inducing, KernelKind kind, Rng &rng,
                    const SvgpOptions &options = {});

/// Full-data ELBO in standardized units.
double svgp_elbo(const SvgpModel &model, const Eigen::MatrixXd &inputs,
                 const Eigen::VectorXd &outputs);

/**
 * @brief Mini-batch Adam ascent on the ELBO.
 *
 * Batches are drawn by reshuffling the data every epoch. Deterministic given
 * `rng` and the data order. Throws TrainingError on a non-finite bound.
 */
SvgpModel svgp_train(SvgpModel model, const Eigen::MatrixXd &inputs,
                     const Eigen::VectorXd &outputs, std::size_t steps, std::size_t batch_size,
                     Rng &rng, const SvgpOptions &options = {});

/// Training internals exposed for gradient checks.
namespace svgp_detail {

/// [log s_k^2, log rho_1..d, log s^2, Z (column-major), m, lower(L_S)]
/// with the diagonal of L_S stored as its logarithm.
Eigen::VectorXd pack(const SvgpModel &model);
void unpack(SvgpModel &model, const Eigen::VectorXd &params);

/// ELBO on standardized targets with each datum weighted by `weight`.
/// Writes the gradient with respect to pack() coordinates when requested.
double elbo(const SvgpModel &model, const Eigen::MatrixXd &inputs,
            const Eigen::VectorXd &std_targets, double weight, Eigen::VectorXd *grad);

} // namespace svgp_detail

std::string svgp_to_json(const SvgpModel &model);
SvgpModel svgp_from_json(std::string_view text);

} // namespace bopt
