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
 * Stationary ARD kernels.
 *
 * Both kernels share the form k = sigma_k^2 * h(u) with
 * u = sum_i rho_i * phi(theta_i - theta'_i):
 *
 *  - Matern 5/2: phi(d) = d^2, h(u) = (1 + sqrt5 r + 5 r^2 / 3) exp(-sqrt5 r),
 *    r = sqrt(u);
 *  - Periodic:   phi(d) = sin^2(pi d / p), h(u) = exp(-2 u).
 *
 * rho_i are inverse squared length scales. Inputs are columns of d x n
 * matrices.
 */
#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace bopt {

enum class KernelKind { Matern25, Periodic };

KernelKind parse_kernel_kind(std::string_view text);
std::string to_string(KernelKind kind);

struct KernelParams {
    KernelKind kind = KernelKind::Periodic;
    double signal_variance = 1.0;
    Eigen::VectorXd inv_sq_lengthscales;
    double period = 2.0 * std::numbers::pi;

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(inv_sq_lengthscales.size());
    }
    /// sigma_k^2 = 1 and rho_i = 1 / (d * E[phi]) for inputs uniform on a
    /// period, so that u is of order one between random points.
    static KernelParams defaults(KernelKind kind, std::size_t dim);
};

/// Per-coordinate distance feature phi(delta).
double kernel_feature(KernelKind kind, double delta, double period);
/// d phi / d delta.
double kernel_feature_derivative(KernelKind kind, double delta, double period);
/// (h(u), h'(u)).
std::pair<double, double> kernel_profile(KernelKind kind, double u);

double kernel_eval(const KernelParams &params, const Eigen::Ref<const Eigen::VectorXd> &a,
                   const Eigen::Ref<const Eigen::VectorXd> &b);

/// dk(x, y) / dx.
Eigen::VectorXd kernel_grad_x(const KernelParams &params,
                              const Eigen::Ref<const Eigen::VectorXd> &x,
                              const Eigen::Ref<const Eigen::VectorXd> &y);

/// Cross-covariance, rows index columns of `a`, columns index `b`.
Eigen::MatrixXd kernel_matrix(const KernelParams &params, const Eigen::MatrixXd &a,
                              const Eigen::MatrixXd &b);
Eigen::MatrixXd kernel_matrix(const KernelParams &params, const Eigen::MatrixXd &a);
/// k(x, a_j) for every column j.
Eigen::VectorXd kernel_vector(const KernelParams &params, const Eigen::MatrixXd &a,
                              const Eigen::Ref<const Eigen::VectorXd> &x);

/**
 * @brief Fixed point set with precomputed features for repeated queries.
 *
 * For the periodic kernel the sines and cosines of the points are stored so
 * that a query needs d trigonometric calls instead of d per point.
 */
class KernelCache {
  public:
    KernelCache() = default;
    KernelCache(KernelParams params, const Eigen::MatrixXd &points);

    /// k(x, p_j) for every point.
    [[nodiscard]] Eigen::VectorXd vector(const Eigen::VectorXd &x) const;
    /// k(x, p_j) and, as the columns of `grad`, dk(x, p_j) / dx.
    void vector_and_gradients(const Eigen::VectorXd &x, Eigen::VectorXd &k,
                              Eigen::MatrixXd &grad) const;

    [[nodiscard]] const KernelParams &params() const noexcept { return params_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return points_.cols(); }

  private:
    // Per-coordinate features phi and, if requested, dphi/dx (d x n).
    void features(const Eigen::VectorXd &x, Eigen::ArrayXXd &phi, Eigen::ArrayXXd *dphi) const;

    KernelParams params_;
    Eigen::MatrixXd points_;
    Eigen::ArrayXXd sin_;
    Eigen::ArrayXXd cos_;
};

} // namespace bopt
