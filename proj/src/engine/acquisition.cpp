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
#include "bopt/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "bopt/error.hpp"
#include "bopt/qmc.hpp"

namespace bopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTinySd = 1e-12;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

TopologicalPrior TopologicalPrior::from_surrogate(std::shared_ptr<const SvgpModel> surrogate) {
    if (!surrogate) {
        throw ConfigError("surrogate model is missing");
    }
    TopologicalPrior p;
    p.mean_fn.value = [surrogate](const Eigen::VectorXd &x) { return surrogate->mean(x); };
    p.mean_fn.gradient = [surrogate](const Eigen::VectorXd &x) {
        return surrogate->mean_gradient(x);
    };
    return p;
}

GpTpModel::GpTpModel(TopologicalPrior prior, GPModel residual, Eigen::VectorXd observations)
    : prior_(std::move(prior)), residual_(std::move(residual)), y_(std::move(observations)) {
    if (static_cast<std::size_t>(y_.size()) != residual_.size()) {
        throw DimensionError("observation count does not match the residual model");
    }
    if (!residual_.prior().is_zero()) {
        throw ConfigError("residual model must have a zero prior mean");
    }
}

GpTpModel GpTpModel::fit(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &observations,
                         TopologicalPrior prior, KernelKind kind,
                         const GpFitOptions &options) {
    if (observations.size() != inputs.cols()) {
        throw DimensionError("input and output counts differ");
    }
    Eigen::VectorXd residual(observations.size());
    for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
        residual(j) = observations(j) - prior(inputs.col(j));
    }
    GPModel gp = gp_fit(inputs, residual, PriorMean::zero(), kind, options);
    return {std::move(prior), std::move(gp), observations};
}

GpPrediction GpTpModel::predict(const Eigen::VectorXd &theta) const {
    GpPrediction p = residual_.predict(theta);
    p.mean += prior_(theta);
    return p;
}

GpPredictionGrad GpTpModel::predict_with_gradient(const Eigen::VectorXd &theta) const {
    GpPredictionGrad p = residual_.predict_with_gradient(theta);
    if (!prior_.is_zero()) {
        p.mean += prior_(theta);
        p.mean_grad += prior_.mean_fn.grad(theta);
    }
    return p;
}

AcquisitionKind parse_acquisition_kind(std::string_view text) {
    if (text == "lcb") {
        return AcquisitionKind::Lcb;
    }
    if (text == "ei") {
        return AcquisitionKind::Ei;
    }
    if (text == "noisy_ei") {
        return AcquisitionKind::NoisyEi;
    }
    throw ConfigError("unknown acquisition '" + std::string(text) + "'");
}

std::string to_string(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::Lcb:
        return "lcb";
    case AcquisitionKind::Ei:
        return "ei";
    case AcquisitionKind::NoisyEi:
        return "noisy_ei";
    }
    return "lcb";
}

void AcquisitionSpec::validate() const {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ConfigError("LCB beta must be finite and non-negative");
    }
    if (mc_samples < 1) {
        throw ConfigError("noisy EI needs at least one Monte-Carlo sample");
    }
}

double acq_lcb(double mean, double sd, double beta) { return mean - std::sqrt(beta) * sd; }

double acq_lcb(const GpTpModel &model, const Eigen::VectorXd &theta, double beta,
               Eigen::VectorXd *grad) {
    if (grad == nullptr) {
        const GpPrediction p = model.predict(theta);
        return acq_lcb(p.mean, std::sqrt(std::max(p.variance, 0.0)), beta);
    }
    const GpPredictionGrad p = model.predict_with_gradient(theta);
    const double sd = std::sqrt(std::max(p.variance, 0.0));
    *grad = p.mean_grad;
    if (sd > kTinySd) {
        *grad -= std::sqrt(beta) / (2.0 * sd) * p.variance_grad;
    }
    return acq_lcb(p.mean, sd, beta);
}

double acq_ei(double mean, double sd, double eta) {
    if (!(sd > 0.0)) {
        return std::max(eta - mean, 0.0);
    }
    const double z = (eta - mean) / sd;
    return std::max(sd * (z * normal_cdf(z) + normal_pdf(z)), 0.0);
}

double acq_ei(const GpTpModel &model, const Eigen::VectorXd &theta, double eta,
              Eigen::VectorXd *grad) {
    if (grad == nullptr) {
        const GpPrediction p = model.predict(theta);
        return acq_ei(p.mean, std::sqrt(std::max(p.variance, 0.0)), eta);
    }
    const GpPredictionGrad p = model.predict_with_gradient(theta);
    const double sd = std::sqrt(std::max(p.variance, 0.0));
    if (sd <= kTinySd) {
        if (eta > p.mean) {
            *grad = -p.mean_grad;
        } else {
            *grad = Eigen::VectorXd::Zero(theta.size());
        }
        return acq_ei(p.mean, sd, eta);
    }
    const double z = (eta - p.mean) / sd;
    *grad = -normal_cdf(z) * p.mean_grad + normal_pdf(z) / (2.0 * sd) * p.variance_grad;
    return acq_ei(p.mean, sd, eta);
}

NoisyEi::NoisyEi(const GpTpModel &model, Eigen::MatrixXd base_draws) : model_(&model) {
    const auto n = static_cast<Eigen::Index>(model.size());
    if (n == 0) {
        throw DataError("noisy EI needs at least one observation");
    }
    if (base_draws.rows() != n + 1 || base_draws.cols() < 1) {
        throw DimensionError("base draws must have n + 1 rows and at least one column");
    }
    const Eigen::MatrixXd &x = model.inputs();
    Eigen::VectorXd mean(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        mean(j) = model.predict(x.col(j)).mean;
    }
    const Eigen::MatrixXd cov = model.residual_gp().posterior_covariance(x);
    const double level = std::max(cov.diagonal().maxCoeff(), 1e-300);
    bool ok = false;
    for (double rel : {0.0, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4}) {
        Eigen::MatrixXd c = cov;
        c.diagonal().array() += rel * level;
        Eigen::LLT<Eigen::MatrixXd> llt(c);
        if (llt.info() == Eigen::Success) {
            chol_obs_ = llt.matrixL();
            ok = true;
            break;
        }
    }
    if (!ok) {
        throw FitError("joint posterior covariance is degenerate");
    }
    z_obs_ = base_draws.topRows(n);
    z_last_ = base_draws.row(n);
    const Eigen::MatrixXd f = (chol_obs_ * z_obs_).colwise() + mean;
    best_ = f.colwise().minCoeff();
}

Eigen::MatrixXd NoisyEi::draw_base(std::size_t n, std::size_t samples, Rng &rng) {
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(samples));
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        for (Eigen::Index i = 0; i < z.rows(); ++i) {
            z(i, j) = rng.normal();
        }
    }
    return z;
}

double NoisyEi::operator()(const Eigen::VectorXd &theta, Eigen::VectorXd *grad) const {
    const GPModel &gp = model_->residual_gp();
    const auto lview = gp.cholesky().triangularView<Eigen::Lower>();
    const auto uview = gp.cholesky().transpose().triangularView<Eigen::Upper>();
    const auto oview = chol_obs_.triangularView<Eigen::Lower>();
    const double s = gp.hyperparameters().noise_variance + gp.jitter();
    const double c2 = gp.output_scale() * gp.output_scale() * s;

    GpPredictionGrad p;
    if (grad != nullptr) {
        p = model_->predict_with_gradient(theta);
    } else {
        const GpPrediction q = model_->predict(theta);
        p.mean = q.mean;
        p.variance = q.variance;
    }
    // cov(f(x_j), f(theta)) = scale^2 s [(K + s I)^-1 k(X, theta)]_j
    Eigen::VectorXd k;
    Eigen::MatrixXd dk;
    if (grad != nullptr) {
        gp.kernel_cache().vector_and_gradients(theta, k, dk);
    } else {
        k = gp.kernel_cache().vector(theta);
    }
    const Eigen::VectorXd c = c2 * uview.solve(lview.solve(k));
    const Eigen::VectorXd l = oview.solve(c);
    const double q = std::sqrt(std::max(p.variance - l.squaredNorm(), 0.0));

    const Eigen::RowVectorXd f = (l.transpose() * z_obs_ + q * z_last_).array() + p.mean;
    const Eigen::ArrayXd gain = (best_ - f).transpose().array();
    const double inv = 1.0 / static_cast<double>(z_last_.size());
    const double value = gain.max(0.0).sum() * inv;
    if (grad == nullptr) {
        return value;
    }
    const Eigen::VectorXd active = (gain > 0.0).cast<double>().matrix();
    const double count = active.sum();
    const Eigen::MatrixXd dc = c2 * uview.solve(lview.solve(dk.transpose()));
    const Eigen::MatrixXd dl = oview.solve(dc);
    Eigen::VectorXd dq = Eigen::VectorXd::Zero(theta.size());
    if (q > kTinySd) {
        dq = (p.variance_grad - 2.0 * dl.transpose() * l) / (2.0 * q);
    }
    *grad = -inv * (count * p.mean_grad + dl.transpose() * (z_obs_ * active) +
                    z_last_.dot(active) * dq);
    return value;
}

double acq_noisy_ei(const GpTpModel &model, const Eigen::VectorXd &theta,
                    const Eigen::MatrixXd &base_draws) {
    return NoisyEi(model, base_draws)(theta);
}

OptimumResult minimize_periodic(const AcquisitionFn &fn, std::size_t dim,
                                const Eigen::MatrixXd &extra_starts, Rng &rng,
                                const AcquisitionOptimizerOptions &options) {
    if (dim == 0) {
        throw DimensionError("cannot optimize over a zero-dimensional box");
    }
    if (extra_starts.cols() > 0 && static_cast<std::size_t>(extra_starts.rows()) != dim) {
        throw DimensionError("extra start dimension mismatch");
    }
    const auto safe = [&](const Eigen::VectorXd &x, Eigen::VectorXd *g) {
        const double v = fn(x, g);
        return std::isfinite(v) ? v : kInf;
    };

    std::vector<Eigen::VectorXd> starts;
    const auto n_extra =
        std::min<std::size_t>(static_cast<std::size_t>(extra_starts.cols()), options.starts);
    const std::size_t n_raw = options.starts - n_extra;
    if (options.raw_candidates > 0 && n_raw > 0) {
        const Eigen::MatrixXd raw =
            space_filling_design(dim, options.raw_candidates, 0.0, kTwoPi, rng);
        std::vector<double> score(static_cast<std::size_t>(raw.cols()));
        for (Eigen::Index j = 0; j < raw.cols(); ++j) {
            score[static_cast<std::size_t>(j)] = safe(raw.col(j), nullptr);
        }
        std::vector<std::size_t> order(score.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
        for (std::size_t i = 0; i < std::min(n_raw, order.size()); ++i) {
            starts.emplace_back(raw.col(static_cast<Eigen::Index>(order[i])));
        }
    }
    for (std::size_t j = 0; j < n_extra; ++j) {
        starts.push_back(wrap_angles(extra_starts.col(static_cast<Eigen::Index>(j))));
    }

    const ValueGradFn wrapped = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
        return safe(wrap_angles(x), &g);
    };
    OptimumResult best;
    best.value = kInf;
    for (const Eigen::VectorXd &s : starts) {
        Eigen::VectorXd x = s;
        double v = safe(s, nullptr);
        if (std::isfinite(v)) {
            const LbfgsResult res = lbfgs_minimize(wrapped, s, options.lbfgs);
            if (res.value < v) {
                x = res.x;
                v = res.value;
            }
        }
        if (v < best.value || best.theta.size() == 0) {
            best.value = v;
            best.theta = wrap_angles(x);
        }
    }
    return best;
}

Eigen::MatrixXd best_observed_inputs(const GpTpModel &model, std::size_t count) {
    const Eigen::VectorXd &y = model.observations();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(y.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return y(a) < y(b); });
    const auto k = static_cast<Eigen::Index>(std::min(count, order.size()));
    Eigen::MatrixXd out(static_cast<Eigen::Index>(model.dim()), k);
    for (Eigen::Index j = 0; j < k; ++j) {
        out.col(j) = model.inputs().col(order[static_cast<std::size_t>(j)]);
    }
    return out;
}

Incumbent incumbent_eta(const GpTpModel &model, Rng &rng,
                        const AcquisitionOptimizerOptions &options) {
    const AcquisitionFn fn = [&](const Eigen::VectorXd &t, Eigen::VectorXd *g) {
        if (g == nullptr) {
            return model.predict(t).mean;
        }
        const GpPredictionGrad p = model.predict_with_gradient(t);
        *g = p.mean_grad;
        return p.mean;
    };
    const OptimumResult r = minimize_periodic(
        fn, model.dim(), best_observed_inputs(model, options.observed_starts), rng, options);
    return {r.value, r.theta};
}

AcquisitionResult optimize_acquisition(const GpTpModel &model, const AcquisitionSpec &spec,
                                       Rng &rng, const AcquisitionOptimizerOptions &options) {
    spec.validate();
    const Eigen::MatrixXd extra = best_observed_inputs(model, options.observed_starts);
    AcquisitionResult out;
    out.eta = std::numeric_limits<double>::quiet_NaN();
    // Without observations noisy EI has no reference values; the analytic
    // form with the posterior-mean incumbent is its noise-free limit.
    AcquisitionKind kind = spec.kind;
    if (kind == AcquisitionKind::NoisyEi && model.size() == 0) {
        kind = AcquisitionKind::Ei;
    }
    switch (kind) {
    case AcquisitionKind::Lcb: {
        const AcquisitionFn fn = [&](const Eigen::VectorXd &t, Eigen::VectorXd *g) {
            return acq_lcb(model, t, spec.beta, g);
        };
        const OptimumResult r = minimize_periodic(fn, model.dim(), extra, rng, options);
        out.theta = r.theta;
        out.value = r.value;
        break;
    }
    case AcquisitionKind::Ei: {
        const Incumbent inc = incumbent_eta(model, rng, options);
        const AcquisitionFn fn = [&](const Eigen::VectorXd &t, Eigen::VectorXd *g) {
            const double v = acq_ei(model, t, inc.eta, g);
            if (g != nullptr) {
                *g = -*g;
            }
            return -v;
        };
        const OptimumResult r = minimize_periodic(fn, model.dim(), extra, rng, options);
        out.theta = r.theta;
        out.value = -r.value;
        out.eta = inc.eta;
        break;
    }
    case AcquisitionKind::NoisyEi: {
        const NoisyEi nei(model, NoisyEi::draw_base(model.size(), spec.mc_samples, rng));
        const AcquisitionFn fn = [&](const Eigen::VectorXd &t, Eigen::VectorXd *g) {
            const double v = nei(t, g);
            if (g != nullptr) {
                *g = -*g;
            }
            return -v;
        };
        const OptimumResult r = minimize_periodic(fn, model.dim(), extra, rng, options);
        out.theta = r.theta;
        out.value = -r.value;
        break;
    }
    }
    return out;
}

} // namespace bopt
