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
#include "bopt/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bopt/error.hpp"
#include "bopt/qmc.hpp"
#include "bopt/rng.hpp"

namespace bopt {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356065947281123527972279494727556682563;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd prior_values(const PriorMean &prior, const Eigen::MatrixXd &x) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(x.cols());
    if (!prior.is_zero()) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            m(j) = prior(x.col(j));
        }
    }
    return m;
}

// Lower Cholesky factor of `sigma` with escalating diagonal jitter
// 0, 1e-10, ..., 1e-6 times `scale`. Returns false if all attempts fail.
bool cholesky_with_jitter(const Eigen::MatrixXd &sigma, double scale, Eigen::LLT<Eigen::MatrixXd> &llt,
                          double &jitter) {
    jitter = 0.0;
    llt.compute(sigma);
    if (llt.info() == Eigen::Success) {
        return true;
    }
    for (double level = 1e-10; level <= 1e-6 * (1.0 + 1e-9); level *= 10.0) {
        jitter = level * scale;
        Eigen::MatrixXd s = sigma;
        s.diagonal().array() += jitter;
        llt.compute(s);
        if (llt.info() == Eigen::Success) {
            return true;
        }
    }
    return false;
}

void validate_hyper(const GpHyperparameters &h) {
    if (!(h.signal_variance > 0.0) || !std::isfinite(h.signal_variance)) {
        throw ConfigError("signal variance must be positive");
    }
    if (!(h.noise_variance >= 0.0) || !std::isfinite(h.noise_variance)) {
        throw ConfigError("noise variance must be non-negative");
    }
    if (!(h.inv_sq_lengthscales.array() > 0.0).all() || !h.inv_sq_lengthscales.allFinite()) {
        throw ConfigError("inverse squared length scales must be positive");
    }
}

} // namespace

Standardization standardization_of(const Eigen::VectorXd &values, bool enabled) {
    Standardization s;
    const Eigen::Index n = values.size();
    if (!enabled || n == 0) {
        return s;
    }
    s.offset = values.mean();
    if (n >= 2) {
        const double var =
            (values.array() - s.offset).square().sum() / static_cast<double>(n - 1);
        const double sd = std::sqrt(var);
        if (sd > 1e-12 * std::max(1.0, std::abs(s.offset))) {
            s.scale = sd;
        }
    }
    return s;
}

Eigen::VectorXd PriorMean::grad(const Eigen::VectorXd &x) const {
    if (!value) {
        return Eigen::VectorXd::Zero(x.size());
    }
    if (gradient) {
        return gradient(x);
    }
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const double fp = value(xp);
        xp(i) = x(i) - h;
        const double fm = value(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::VectorXd GpHyperparameters::to_log() const {
    const Eigen::Index d = inv_sq_lengthscales.size();
    Eigen::VectorXd g(d + 2);
    g(0) = std::log(signal_variance);
    g.segment(1, d) = inv_sq_lengthscales.array().log();
    g(d + 1) = std::log(noise_variance);
    return g;
}

GpHyperparameters GpHyperparameters::from_log(const Eigen::VectorXd &gamma) {
    if (gamma.size() < 2) {
        throw DimensionError("log-hyperparameter vector too short");
    }
    const Eigen::Index d = gamma.size() - 2;
    GpHyperparameters h;
    h.signal_variance = std::exp(gamma(0));
    h.inv_sq_lengthscales = gamma.segment(1, d).array().exp();
    h.noise_variance = std::exp(gamma(d + 1));
    return h;
}

GpHyperparameters GpHyperparameters::defaults(KernelKind kind, std::size_t dim) {
    const KernelParams k = KernelParams::defaults(kind, dim);
    GpHyperparameters h;
    h.signal_variance = k.signal_variance;
    h.inv_sq_lengthscales = k.inv_sq_lengthscales;
    h.noise_variance = 1e-2;
    return h;
}

GPModel::GPModel(Eigen::MatrixXd inputs, Eigen::VectorXd outputs, PriorMean prior,
                 KernelKind kind, GpHyperparameters hyper, bool standardize)
    : x_(std::move(inputs)), y_(std::move(outputs)), prior_(std::move(prior)),
      hyper_(std::move(hyper)), standardize_(standardize) {
    validate_hyper(hyper_);
    if (static_cast<std::size_t>(x_.rows()) != hyper_.dim()) {
        throw DimensionError("input dimension " + std::to_string(x_.rows()) +
                             " does not match kernel dimension " + std::to_string(hyper_.dim()));
    }
    if (y_.size() != x_.cols()) {
        throw DimensionError("input and output counts differ");
    }
    kernel_.kind = kind;
    kernel_.signal_variance = hyper_.signal_variance;
    kernel_.inv_sq_lengthscales = hyper_.inv_sq_lengthscales;
    cache_ = KernelCache(kernel_, x_);

    prior_at_x_ = prior_values(prior_, x_);
    const Eigen::VectorXd residual = y_ - prior_at_x_;
    const Standardization st = standardization_of(residual, standardize_);
    offset_ = st.offset;
    scale_ = st.scale;

    const Eigen::Index n = x_.cols();
    if (n == 0) {
        chol_.resize(0, 0);
        alpha_.resize(0);
        nlml_ = 0.0;
        return;
    }
    const Eigen::VectorXd r = (residual.array() - offset_) / scale_;
    Eigen::MatrixXd sigma = kernel_matrix(kernel_, x_);
    sigma.diagonal().array() += hyper_.noise_variance;
    Eigen::LLT<Eigen::MatrixXd> llt;
    if (!cholesky_with_jitter(sigma, hyper_.signal_variance, llt, jitter_)) {
        throw FitError("covariance matrix is not positive definite at maximum jitter");
    }
    chol_ = llt.matrixL();
    alpha_ = llt.solve(r);
    nlml_ = 0.5 * r.dot(alpha_) + chol_.diagonal().array().log().sum() +
            0.5 * static_cast<double>(n) * kLog2Pi;
}

GpPrediction GPModel::predict(const Eigen::VectorXd &x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) {
        throw DimensionError("query dimension mismatch");
    }
    GpPrediction p;
    const double m0 = prior_(x);
    if (x_.cols() == 0) {
        p.mean = m0 + offset_;
        p.variance = scale_ * scale_ * kernel_.signal_variance;
        return p;
    }
    const Eigen::VectorXd k = cache_.vector(x);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    p.mean = m0 + offset_ + scale_ * k.dot(alpha_);
    p.variance = scale_ * scale_ * std::max(0.0, kernel_.signal_variance - v.squaredNorm());
    return p;
}

Eigen::VectorXd GPModel::predict_mean(const Eigen::MatrixXd &a) const {
    Eigen::VectorXd m(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        m(j) = predict(a.col(j)).mean;
    }
    return m;
}

GpPredictionGrad GPModel::predict_with_gradient(const Eigen::VectorXd &x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) {
        throw DimensionError("query dimension mismatch");
    }
    const Eigen::Index d = x.size();
    const Eigen::Index n = x_.cols();
    GpPredictionGrad p;
    p.mean = prior_(x) + offset_;
    p.mean_grad = prior_.grad(x);
    p.variance_grad = Eigen::VectorXd::Zero(d);
    if (n == 0) {
        p.variance = scale_ * scale_ * kernel_.signal_variance;
        return p;
    }
    Eigen::VectorXd k;
    Eigen::MatrixXd dk;
    cache_.vector_and_gradients(x, k, dk);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    const Eigen::VectorXd w = chol_.transpose().triangularView<Eigen::Upper>().solve(v);
    p.mean += scale_ * k.dot(alpha_);
    p.mean_grad += scale_ * (dk * alpha_);
    const double var_std = kernel_.signal_variance - v.squaredNorm();
    if (var_std > 0.0) {
        p.variance = scale_ * scale_ * var_std;
        p.variance_grad = -2.0 * scale_ * scale_ * (dk * w);
    } else {
        p.variance = 0.0;
    }
    return p;
}

Eigen::MatrixXd GPModel::posterior_covariance(const Eigen::MatrixXd &a) const {
    Eigen::MatrixXd c = kernel_matrix(kernel_, a);
    if (x_.cols() > 0) {
        const Eigen::MatrixXd v =
            chol_.triangularView<Eigen::Lower>().solve(kernel_matrix(kernel_, x_, a));
        c.noalias() -= v.transpose() * v;
    }
    return scale_ * scale_ * c;
}

Eigen::VectorXd GPModel::posterior_cross_covariance(const Eigen::MatrixXd &a,
                                                    const Eigen::VectorXd &x) const {
    Eigen::VectorXd c = kernel_vector(kernel_, a, x);
    if (x_.cols() > 0) {
        const Eigen::MatrixXd va =
            chol_.triangularView<Eigen::Lower>().solve(kernel_matrix(kernel_, x_, a));
        const Eigen::VectorXd vx =
            chol_.triangularView<Eigen::Lower>().solve(kernel_vector(kernel_, x_, x));
        c.noalias() -= va.transpose() * vx;
    }
    return scale_ * scale_ * c;
}

NlmlObjective::NlmlObjective(const Eigen::MatrixXd &inputs, Eigen::VectorXd residuals,
                             KernelKind kind, double period)
    : kind_(kind), r_(std::move(residuals)) {
    if (r_.size() != inputs.cols()) {
        throw DimensionError("input and output counts differ");
    }
    const Eigen::Index n = inputs.cols();
    features_.reserve(static_cast<std::size_t>(inputs.rows()));
    for (Eigen::Index l = 0; l < inputs.rows(); ++l) {
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = j + 1; i < n; ++i) {
                const double f = kernel_feature(kind, inputs(l, i) - inputs(l, j), period);
                phi(i, j) = f;
                phi(j, i) = f;
            }
        }
        features_.push_back(std::move(phi));
    }
}

double NlmlObjective::operator()(const Eigen::VectorXd &gamma, Eigen::VectorXd *grad,
                                 std::optional<double> fixed_log_noise) const {
    const Eigen::Index d = static_cast<Eigen::Index>(features_.size());
    const Eigen::Index n = r_.size();
    const Eigen::Index expected = fixed_log_noise ? d + 1 : d + 2;
    if (gamma.size() != expected) {
        throw DimensionError("log-hyperparameter vector has the wrong length");
    }
    if (grad != nullptr) {
        grad->setZero(expected);
    }
    if (n == 0) {
        return 0.0;
    }
    const double sk2 = std::exp(gamma(0));
    const double s2 = std::exp(fixed_log_noise ? *fixed_log_noise : gamma(d + 1));

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index l = 0; l < d; ++l) {
        u.noalias() += std::exp(gamma(1 + l)) * features_[static_cast<std::size_t>(l)];
    }
    Eigen::MatrixXd h(n, n);
    Eigen::MatrixXd hp(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto [v, dv] = kernel_profile(kind_, u(i, j));
            h(i, j) = v;
            hp(i, j) = dv;
        }
    }
    Eigen::MatrixXd sigma = sk2 * h;
    sigma.diagonal().array() += s2;
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
    if (!std::isfinite(sk2) || !std::isfinite(s2) || !cholesky_with_jitter(sigma, sk2, llt, jitter)) {
        return kInf;
    }
    const Eigen::VectorXd alpha = llt.solve(r_);
    const Eigen::MatrixXd &l = llt.matrixLLT();
    const double logdet_half = l.diagonal().array().log().sum();
    const double value = 0.5 * r_.dot(alpha) + logdet_half + 0.5 * static_cast<double>(n) * kLog2Pi;
    if (grad == nullptr || !std::isfinite(value)) {
        return value;
    }
    Eigen::MatrixXd w = llt.solve(Eigen::MatrixXd::Identity(n, n));
    w.noalias() -= alpha * alpha.transpose();
    (*grad)(0) = 0.5 * sk2 * (w.array() * h.array()).sum();
    const Eigen::ArrayXXd g = sk2 * (w.array() * hp.array());
    for (Eigen::Index k = 0; k < d; ++k) {
        (*grad)(1 + k) = 0.5 * std::exp(gamma(1 + k)) *
                         (g * features_[static_cast<std::size_t>(k)].array()).sum();
    }
    if (!fixed_log_noise) {
        (*grad)(d + 1) = 0.5 * s2 * w.trace();
    }
    return value;
}

double nlml(const GPModel &model, const GpHyperparameters &hyper) {
    if (model.size() == 0) {
        throw FitError("NLML needs at least one observation");
    }
    if (hyper.dim() != model.dim()) {
        throw DimensionError("hyperparameter dimension mismatch");
    }
    validate_hyper(hyper);
    const Eigen::VectorXd r =
        ((model.outputs() - prior_values(model.prior(), model.inputs())).array() -
         model.output_offset()) /
        model.output_scale();
    const NlmlObjective objective(model.inputs(), r, model.kind(), model.kernel().period);
    const double v = objective(hyper.to_log(), nullptr);
    if (!std::isfinite(v)) {
        throw FitError("covariance matrix is not positive definite at maximum jitter");
    }
    return v;
}

GPModel gp_fit(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &outputs,
               const PriorMean &prior, KernelKind kind, const GpFitOptions &options) {
    const auto d = static_cast<std::size_t>(inputs.rows());
    const Eigen::Index n = inputs.cols();
    if (outputs.size() != n) {
        throw DimensionError("input and output counts differ");
    }
    const Eigen::VectorXd residual = outputs - prior_values(prior, inputs);
    const Standardization st = standardization_of(residual, options.standardize);

    GpHyperparameters base =
        options.warm_start ? *options.warm_start : GpHyperparameters::defaults(kind, d);
    if (base.dim() != d) {
        throw DimensionError("warm start dimension mismatch");
    }
    std::optional<double> fixed_log_noise;
    if (options.fixed_noise_variance) {
        if (!(*options.fixed_noise_variance >= 0.0)) {
            throw ConfigError("pinned noise variance must be non-negative");
        }
        base.noise_variance = *options.fixed_noise_variance / (st.scale * st.scale);
        fixed_log_noise = std::log(base.noise_variance);
    }
    if (!options.learn || n < 2) {
        return GPModel(inputs, outputs, prior, kind, base, options.standardize);
    }

    const auto di = static_cast<Eigen::Index>(d);
    const Eigen::Index p = fixed_log_noise ? di + 1 : di + 2;
    Eigen::VectorXd lo(p);
    Eigen::VectorXd hi(p);
    lo(0) = std::log(options.min_signal_variance);
    hi(0) = std::log(options.max_signal_variance);
    lo.segment(1, di).setConstant(std::log(options.min_inv_sq_lengthscale));
    hi.segment(1, di).setConstant(std::log(options.max_inv_sq_lengthscale));
    if (!fixed_log_noise) {
        lo(di + 1) = std::log(options.min_noise_variance);
        hi(di + 1) = std::log(options.max_noise_variance);
    }

    const Eigen::VectorXd r = (residual.array() - st.offset) / st.scale;
    const NlmlObjective objective(inputs, r, kind);
    const ValueGradFn fn = [&](const Eigen::VectorXd &g, Eigen::VectorXd &grad) {
        return objective(g, &grad, fixed_log_noise);
    };

    std::vector<Eigen::VectorXd> starts;
    starts.push_back(base.to_log().head(p).cwiseMax(lo).cwiseMin(hi));
    if (options.restarts > 0) {
        Rng design_rng(0x6770f17ULL + static_cast<std::uint64_t>(n), d);
        const Eigen::MatrixXd design = space_filling_design(
            static_cast<std::size_t>(p), options.restarts, 0.0, 1.0, design_rng);
        for (Eigen::Index j = 0; j < design.cols(); ++j) {
            starts.push_back(lo + (hi - lo).cwiseProduct(design.col(j)));
        }
    }

    double best_value = kInf;
    Eigen::VectorXd best;
    for (const Eigen::VectorXd &s : starts) {
        const LbfgsResult res = lbfgs_minimize(fn, s, lo, hi, options.lbfgs);
        if (std::isfinite(res.value) && res.value < best_value) {
            best_value = res.value;
            best = res.x;
        }
    }
    if (!std::isfinite(best_value)) {
        throw FitError("every hyperparameter restart failed the positive-definiteness check");
    }
    GpHyperparameters fitted;
    fitted.signal_variance = std::exp(best(0));
    fitted.inv_sq_lengthscales = best.segment(1, di).array().exp();
    fitted.noise_variance = fixed_log_noise ? base.noise_variance : std::exp(best(di + 1));
    return GPModel(inputs, outputs, prior, kind, fitted, options.standardize);
}

} // namespace bopt
