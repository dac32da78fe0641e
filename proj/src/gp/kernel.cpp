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
#include "bopt/kernel.hpp"

#include <cmath>

#include "bopt/error.hpp"

namespace bopt {

namespace {
constexpr double kSqrt5 = 2.23606797749978969640917366873127623544061835961152572427;
} // namespace

KernelKind parse_kernel_kind(std::string_view text) {
    if (text == "matern25" || text == "matern") {
        return KernelKind::Matern25;
    }
    if (text == "periodic") {
        return KernelKind::Periodic;
    }
    throw ConfigError("unknown kernel '" + std::string(text) + "'");
}

std::string to_string(KernelKind kind) {
    return kind == KernelKind::Matern25 ? "matern25" : "periodic";
}

KernelParams KernelParams::defaults(KernelKind kind, std::size_t dim) {
    KernelParams p;
    p.kind = kind;
    p.signal_variance = 1.0;
    // E[sin^2(pi D / p)] = 1/2 and E[D^2] = p^2 / 6 for D the difference of
    // two uniforms on one period.
    const double mean_feature =
        kind == KernelKind::Periodic ? 0.5 : p.period * p.period / 6.0;
    p.inv_sq_lengthscales = Eigen::VectorXd::Constant(
        static_cast<Eigen::Index>(dim),
        1.0 / (static_cast<double>(std::max<std::size_t>(dim, 1)) * mean_feature));
    return p;
}

double kernel_feature(KernelKind kind, double delta, double period) {
    if (kind == KernelKind::Matern25) {
        return delta * delta;
    }
    const double s = std::sin(std::numbers::pi * delta / period);
    return s * s;
}

double kernel_feature_derivative(KernelKind kind, double delta, double period) {
    if (kind == KernelKind::Matern25) {
        return 2.0 * delta;
    }
    const double w = std::numbers::pi / period;
    return w * std::sin(2.0 * w * delta);
}

std::pair<double, double> kernel_profile(KernelKind kind, double u) {
    if (kind == KernelKind::Matern25) {
        const double r = std::sqrt(std::max(u, 0.0));
        const double e = std::exp(-kSqrt5 * r);
        return {(1.0 + kSqrt5 * r + 5.0 * u / 3.0) * e,
                -(5.0 / 6.0) * (1.0 + kSqrt5 * r) * e};
    }
    const double e = std::exp(-2.0 * u);
    return {e, -2.0 * e};
}

namespace {

double feature_sum(const KernelParams &p, const Eigen::Ref<const Eigen::VectorXd> &a,
                   const Eigen::Ref<const Eigen::VectorXd> &b) {
    double u = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        u += p.inv_sq_lengthscales(i) * kernel_feature(p.kind, a(i) - b(i), p.period);
    }
    return u;
}

void check_dims(const KernelParams &p, Eigen::Index rows) {
    if (rows != p.inv_sq_lengthscales.size()) {
        throw DimensionError("kernel dimension " +
                             std::to_string(p.inv_sq_lengthscales.size()) +
                             " does not match input dimension " + std::to_string(rows));
    }
}

} // namespace

double kernel_eval(const KernelParams &params, const Eigen::Ref<const Eigen::VectorXd> &a,
                   const Eigen::Ref<const Eigen::VectorXd> &b) {
    check_dims(params, a.size());
    check_dims(params, b.size());
    return params.signal_variance * kernel_profile(params.kind, feature_sum(params, a, b)).first;
}

Eigen::VectorXd kernel_grad_x(const KernelParams &params,
                              const Eigen::Ref<const Eigen::VectorXd> &x,
                              const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_dims(params, x.size());
    const auto [h, dh] = kernel_profile(params.kind, feature_sum(params, x, y));
    (void)h;
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        g(i) = params.signal_variance * dh * params.inv_sq_lengthscales(i) *
               kernel_feature_derivative(params.kind, x(i) - y(i), params.period);
    }
    return g;
}

Eigen::MatrixXd kernel_matrix(const KernelParams &params, const Eigen::MatrixXd &a,
                              const Eigen::MatrixXd &b) {
    check_dims(params, a.rows());
    check_dims(params, b.rows());
    Eigen::MatrixXd k(a.cols(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.cols(); ++i) {
            k(i, j) = params.signal_variance *
                      kernel_profile(params.kind, feature_sum(params, a.col(i), b.col(j))).first;
        }
    }
    return k;
}

Eigen::MatrixXd kernel_matrix(const KernelParams &params, const Eigen::MatrixXd &a) {
    check_dims(params, a.rows());
    const Eigen::Index n = a.cols();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        k(j, j) = params.signal_variance;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = params.signal_variance *
                             kernel_profile(params.kind, feature_sum(params, a.col(i), a.col(j))).first;
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Eigen::VectorXd kernel_vector(const KernelParams &params, const Eigen::MatrixXd &a,
                              const Eigen::Ref<const Eigen::VectorXd> &x) {
    check_dims(params, a.rows());
    check_dims(params, x.size());
    Eigen::VectorXd k(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        k(j) = params.signal_variance *
               kernel_profile(params.kind, feature_sum(params, a.col(j), x)).first;
    }
    return k;
}

KernelCache::KernelCache(KernelParams params, const Eigen::MatrixXd &points)
    : params_(std::move(params)), points_(points) {
    check_dims(params_, points.rows());
    if (params_.kind == KernelKind::Periodic) {
        const double w = std::numbers::pi / params_.period;
        sin_ = (w * points_.array()).sin();
        cos_ = (w * points_.array()).cos();
    }
}

void KernelCache::features(const Eigen::VectorXd &x, Eigen::ArrayXXd &phi,
                           Eigen::ArrayXXd *dphi) const {
    check_dims(params_, x.size());
    if (params_.kind == KernelKind::Matern25) {
        const Eigen::ArrayXXd delta = (-points_).colwise() + x;
        phi = delta.square();
        if (dphi != nullptr) {
            *dphi = 2.0 * delta;
        }
        return;
    }
    // sin(w(x - p)) and cos(w(x - p)) by the angle-difference identities.
    const double w = std::numbers::pi / params_.period;
    const Eigen::ArrayXd sx = (w * x.array()).sin();
    const Eigen::ArrayXd cx = (w * x.array()).cos();
    const Eigen::ArrayXXd s = cos_.colwise() * sx - sin_.colwise() * cx;
    phi = s.square();
    if (dphi != nullptr) {
        const Eigen::ArrayXXd c = cos_.colwise() * cx + sin_.colwise() * sx;
        *dphi = (2.0 * w) * s * c;
    }
}

Eigen::VectorXd KernelCache::vector(const Eigen::VectorXd &x) const {
    Eigen::ArrayXXd phi;
    features(x, phi, nullptr);
    const Eigen::VectorXd u = phi.matrix().transpose() * params_.inv_sq_lengthscales;
    Eigen::VectorXd k(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        k(j) = params_.signal_variance * kernel_profile(params_.kind, u(j)).first;
    }
    return k;
}

void KernelCache::vector_and_gradients(const Eigen::VectorXd &x, Eigen::VectorXd &k,
                                       Eigen::MatrixXd &grad) const {
    Eigen::ArrayXXd phi;
    Eigen::ArrayXXd dphi;
    features(x, phi, &dphi);
    const Eigen::VectorXd u = phi.matrix().transpose() * params_.inv_sq_lengthscales;
    k.resize(u.size());
    Eigen::RowVectorXd dh(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        const auto [h, hp] = kernel_profile(params_.kind, u(j));
        k(j) = params_.signal_variance * h;
        dh(j) = params_.signal_variance * hp;
    }
    grad = ((dphi.colwise() * params_.inv_sq_lengthscales.array()).rowwise() * dh.array())
               .matrix();
}

} // namespace bopt
