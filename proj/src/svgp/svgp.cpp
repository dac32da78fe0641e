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
#include "bopt/svgp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "bopt/error.hpp"
#include "bopt/gp.hpp"

namespace bopt {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873127623544061835961152572427;
constexpr double kLog2Pi = 1.83787706640934548356065947281123527972279494727556682563;

// Separable expansion of the per-dimension distance feature. For the periodic
// kernel sin^2(w(z - x)) = (1 - cos 2wz cos 2wx - sin 2wz sin 2wx) / 2 and for
// Matern (z - x)^2 = z^2 - 2zx + x^2, so the weighted sum u and the gradient
// contractions reduce to matrix products.
struct Basis {
    Eigen::MatrixXd p; // periodic: cos 2wx; Matern: x
    Eigen::MatrixXd q; // periodic: sin 2wx; Matern: x^2
};

Basis basis(const KernelParams &k, const Eigen::MatrixXd &x) {
    if (k.kind == KernelKind::Matern25) {
        return {x, x.array().square().matrix()};
    }
    const double w2 = 2.0 * std::numbers::pi / k.period;
    return {(w2 * x.array()).cos().matrix(), (w2 * x.array()).sin().matrix()};
}

// u(i, j) = sum_k rho_k phi(z_ki - x_kj), clamped at zero.
Eigen::MatrixXd weighted_features(const KernelParams &k, const Basis &bz, const Basis &bx) {
    const Eigen::VectorXd &rho = k.inv_sq_lengthscales;
    Eigen::MatrixXd u;
    if (k.kind == KernelKind::Matern25) {
        u = -2.0 * (rho.asDiagonal() * bz.p).transpose() * bx.p;
        u.colwise() += bz.q.transpose() * rho;
        u.rowwise() += rho.transpose() * bx.q;
    } else {
        u = -0.5 * ((rho.asDiagonal() * bz.p).transpose() * bx.p +
                    (rho.asDiagonal() * bz.q).transpose() * bx.q);
        u.array() += 0.5 * rho.sum();
    }
    return u.cwiseMax(0.0);
}

// h(u) and h'(u) elementwise.
void profiles(KernelKind kind, const Eigen::MatrixXd &u, Eigen::ArrayXXd &h,
              Eigen::ArrayXXd &hp) {
    if (kind == KernelKind::Periodic) {
        h = (-2.0 * u.array()).exp();
        hp = -2.0 * h;
        return;
    }
    const Eigen::ArrayXXd r = u.array().sqrt();
    const Eigen::ArrayXXd e = (-kSqrt5 * r).exp();
    h = (1.0 + kSqrt5 * r + (5.0 / 3.0) * u.array()) * e;
    hp = -(5.0 / 6.0) * (1.0 + kSqrt5 * r) * e;
}

// For a weight matrix G over pairs, adds sum_ij G_ij phi_k(i, j) to g_phi(k)
// and z_scale * sum_j G_ij dphi_k(i, j) / dz_ki to g_z(k, i).
void contract(const KernelParams &k, const Basis &bz, const Basis &bx, const Eigen::MatrixXd &z,
              const Eigen::MatrixXd &gm, double z_scale, Eigen::VectorXd &g_phi,
              Eigen::MatrixXd &g_z) {
    const Eigen::MatrixXd gp = (gm * bx.p.transpose()).transpose();
    const Eigen::MatrixXd gq = (gm * bx.q.transpose()).transpose();
    const Eigen::RowVectorXd g1 = gm.rowwise().sum().transpose();
    if (k.kind == KernelKind::Matern25) {
        g_phi += (z.array().square().rowwise() * g1.array() - 2.0 * z.array() * gp.array() +
                  gq.array())
                     .rowwise()
                     .sum()
                     .matrix();
        g_z += (2.0 * z_scale) * (z.array().rowwise() * g1.array() - gp.array()).matrix();
        return;
    }
    const double w = std::numbers::pi / k.period;
    g_phi += (0.5 * g1.sum() -
              0.5 * (bz.p.array() * gp.array() + bz.q.array() * gq.array()).rowwise().sum())
                 .matrix();
    g_z += (z_scale * w) * (bz.q.array() * gp.array() - bz.p.array() * gq.array()).matrix();
}

// Factor K_uu with a small relative jitter, escalating on failure.
bool factor_kuu(const Eigen::MatrixXd &kuu, double signal_variance, Eigen::MatrixXd &chol,
                double &jitter) {
    for (double level = 1e-8; level <= 1e-3 * (1.0 + 1e-9); level *= 10.0) {
        jitter = level * signal_variance;
        Eigen::MatrixXd s = kuu;
        s.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(s);
        if (llt.info() == Eigen::Success) {
            chol = llt.matrixL();
            return true;
        }
    }
    return false;
}

Eigen::Index packed_size(Eigen::Index d, Eigen::Index l) {
    return 2 + d + d * l + l + l * (l + 1) / 2;
}

void check_data(const SvgpModel &model, const Eigen::MatrixXd &x, const Eigen::VectorXd &y) {
    if (x.cols() != y.size()) {
        throw DimensionError("input and output counts differ");
    }
    if (static_cast<std::size_t>(x.rows()) != model.dim()) {
        throw DimensionError("input dimension does not match the inducing points");
    }
}

} // namespace

void SvgpModel::refresh() {
    const Eigen::MatrixXd kuu = kernel_matrix(kernel, inducing);
    if (!factor_kuu(kuu, kernel.signal_variance, chol_uu_, jitter_)) {
        throw TrainingError(steps_trained, "inducing covariance is not positive definite");
    }
    mean_weights_ = chol_uu_.transpose().triangularView<Eigen::Upper>().solve(q_mean);
    cache_ = KernelCache(kernel, inducing);
}

double SvgpModel::standardized_mean(const Eigen::VectorXd &x) const {
    return cache_.vector(x).dot(mean_weights_);
}

double SvgpModel::mean(const Eigen::VectorXd &x) const {
    return output_offset + output_scale * standardized_mean(x);
}

double SvgpModel::variance(const Eigen::VectorXd &x) const {
    const Eigen::VectorXd a =
        chol_uu_.triangularView<Eigen::Lower>().solve(cache_.vector(x));
    const Eigen::VectorXd sa = q_sqrt.triangularView<Eigen::Lower>().transpose() * a;
    const double v = kernel.signal_variance - a.squaredNorm() + sa.squaredNorm();
    return output_scale * output_scale * std::max(v, 0.0);
}

Eigen::VectorXd SvgpModel::mean_gradient(const Eigen::VectorXd &x) const {
    Eigen::VectorXd k;
    Eigen::MatrixXd dk;
    cache_.vector_and_gradients(x, k, dk);
    return output_scale * (dk * mean_weights_);
}

SvgpModel svgp_init(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &outputs,
                    std::size_t num_inducing, KernelKind kind, Rng &rng,
                    const SvgpOptions &options) {
    const Eigen::Index n = inputs.cols();
    if (n == 0) {
        throw DataError("sparse GP needs at least one observation");
    }
    if (outputs.size() != n) {
        throw DimensionError("input and output counts differ");
    }
    if (num_inducing < 1 || num_inducing > static_cast<std::size_t>(n)) {
        throw ConfigError("inducing count must lie in [1, number of observations]");
    }
    const auto d = static_cast<std::size_t>(inputs.rows());
    SvgpModel model;
    model.kernel = KernelParams::defaults(kind, d);
    model.noise_variance = options.init_noise_variance;
    const Standardization st = standardization_of(outputs, options.standardize);
    model.output_offset = st.offset;
    model.output_scale = st.scale;
    model.batch_size = options.batch_size;

    // Greedy farthest-point selection in the kernel's feature space.
    const auto l = static_cast<Eigen::Index>(num_inducing);
    std::vector<Eigen::Index> chosen;
    chosen.reserve(num_inducing);
    Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    Eigen::Index next = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    for (Eigen::Index k = 0; k < l; ++k) {
        chosen.push_back(next);
        for (Eigen::Index j = 0; j < n; ++j) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
                s += kernel_feature(kind, inputs(i, j) - inputs(i, next), model.kernel.period);
            }
            dist(j) = std::min(dist(j), s);
        }
        dist.maxCoeff(&next);
    }
    model.inducing.resize(inputs.rows(), l);
    for (Eigen::Index k = 0; k < l; ++k) {
        model.inducing.col(k) = inputs.col(chosen[static_cast<std::size_t>(k)]);
    }
    model.q_mean = Eigen::VectorXd::Zero(l);
    model.q_sqrt = Eigen::MatrixXd::Identity(l, l);
    model.refresh();
    return model;
}

namespace svgp_detail {

Eigen::VectorXd pack(const SvgpModel &model) {
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    const Eigen::Index l = static_cast<Eigen::Index>(model.num_inducing());
    Eigen::VectorXd p(packed_size(d, l));
    Eigen::Index o = 0;
    p(o++) = std::log(model.kernel.signal_variance);
    p.segment(o, d) = model.kernel.inv_sq_lengthscales.array().log();
    o += d;
    p(o++) = std::log(model.noise_variance);
    p.segment(o, d * l) = model.inducing.reshaped();
    o += d * l;
    p.segment(o, l) = model.q_mean;
    o += l;
    for (Eigen::Index j = 0; j < l; ++j) {
        p(o++) = std::log(model.q_sqrt(j, j));
        for (Eigen::Index i = j + 1; i < l; ++i) {
            p(o++) = model.q_sqrt(i, j);
        }
    }
    return p;
}

void unpack(SvgpModel &model, const Eigen::VectorXd &p) {
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    const Eigen::Index l = static_cast<Eigen::Index>(model.num_inducing());
    if (p.size() != packed_size(d, l)) {
        throw DimensionError("packed parameter vector has the wrong length");
    }
    Eigen::Index o = 0;
    model.kernel.signal_variance = std::exp(p(o++));
    model.kernel.inv_sq_lengthscales = p.segment(o, d).array().exp();
    o += d;
    model.noise_variance = std::exp(p(o++));
    model.inducing = p.segment(o, d * l).reshaped(d, l);
    o += d * l;
    model.q_mean = p.segment(o, l);
    o += l;
    model.q_sqrt = Eigen::MatrixXd::Zero(l, l);
    for (Eigen::Index j = 0; j < l; ++j) {
        model.q_sqrt(j, j) = std::exp(p(o++));
        for (Eigen::Index i = j + 1; i < l; ++i) {
            model.q_sqrt(i, j) = p(o++);
        }
    }
}

double elbo(const SvgpModel &model, const Eigen::MatrixXd &x, const Eigen::VectorXd &y,
            double weight, Eigen::VectorXd *grad) {
    const KernelParams &kp = model.kernel;
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    const Eigen::Index l = static_cast<Eigen::Index>(model.num_inducing());
    const Eigen::Index b = x.cols();
    const double sk2 = kp.signal_variance;
    const double s2 = model.noise_variance;
    const Eigen::MatrixXd &z = model.inducing;
    const Eigen::VectorXd &m = model.q_mean;
    const Eigen::MatrixXd ls = model.q_sqrt.triangularView<Eigen::Lower>();

    const bool want_grad = grad != nullptr;
    const Basis bz = basis(kp, z);
    const Basis bx = basis(kp, x);
    Eigen::MatrixXd uuu = weighted_features(kp, bz, bz);
    uuu.diagonal().setZero();
    Eigen::ArrayXXd huu, hpuu, huf, hpuf;
    profiles(kp.kind, uuu, huu, hpuu);
    profiles(kp.kind, weighted_features(kp, bz, bx), huf, hpuf);
    const Eigen::MatrixXd kuu = (sk2 * huu).matrix();
    const Eigen::MatrixXd kuf = (sk2 * huf).matrix();

    Eigen::MatrixXd chol;
    double jitter = 0.0;
    if (!factor_kuu(kuu, sk2, chol, jitter)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto lview = chol.triangularView<Eigen::Lower>();
    const auto uview = chol.transpose().triangularView<Eigen::Upper>();
    const Eigen::MatrixXd a = lview.solve(kuf);
    const Eigen::VectorXd mu = a.transpose() * m;
    const Eigen::MatrixXd lsa = ls.transpose() * a;
    const Eigen::ArrayXd var =
        sk2 - a.colwise().squaredNorm().transpose().array() + lsa.colwise().squaredNorm().transpose().array();
    const Eigen::ArrayXd r = (y - mu).array();
    const double expected =
        (-0.5 * (kLog2Pi + std::log(s2)) - (r.square() + var) / (2.0 * s2)).sum();
    const double kl = 0.5 * (ls.squaredNorm() + m.squaredNorm() - static_cast<double>(l) -
                             2.0 * ls.diagonal().array().log().sum());
    const double value = weight * expected - kl;
    if (!want_grad) {
        return value;
    }

    Eigen::VectorXd &g = *grad;
    g.setZero(packed_size(d, l));
    const Eigen::VectorXd g_mu = (weight / s2) * r.matrix();
    const double g_var = -weight / (2.0 * s2);

    // Variational parameters.
    const Eigen::VectorXd g_m = a * g_mu - m;
    Eigen::MatrixXd g_ls = (2.0 * g_var) * (a * lsa.transpose()) - ls;
    g_ls.diagonal().array() += ls.diagonal().array().inverse();

    // Back-propagate through A = L^{-1} K_uf and L = chol(K_uu).
    const Eigen::MatrixXd g_a = m * g_mu.transpose() + (2.0 * g_var) * (ls * lsa - a);
    const Eigen::MatrixXd g_kuf = uview.solve(g_a);
    const Eigen::MatrixXd g_l = (-g_kuf * a.transpose()).triangularView<Eigen::Lower>();
    Eigen::MatrixXd phi = (chol.transpose() * g_l).triangularView<Eigen::Lower>();
    phi.diagonal() *= 0.5;
    const Eigen::MatrixXd sym = 0.5 * (phi + phi.transpose());
    const Eigen::MatrixXd g_kuu =
        uview.solve(uview.solve(sym).transpose()).transpose();

    Eigen::Index o = 0;
    // log signal variance: k(x, x) in var, K_uf, K_uu and the relative jitter.
    g(o++) = g_var * static_cast<double>(b) * sk2 + (g_kuf.array() * kuf.array()).sum() +
             (g_kuu.array() * kuu.array()).sum() + jitter * g_kuu.trace();
    const Eigen::MatrixXd gf = (g_kuf.array() * (sk2 * hpuf)).matrix();
    const Eigen::MatrixXd gu = (g_kuu.array() * (sk2 * hpuu)).matrix();
    Eigen::VectorXd g_phi = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd g_z = Eigen::MatrixXd::Zero(d, l);
    contract(kp, bz, bx, z, gf, 1.0, g_phi, g_z);
    // K_uu depends on z through both arguments.
    contract(kp, bz, bz, z, gu, 2.0, g_phi, g_z);
    g.segment(o, d) = kp.inv_sq_lengthscales.cwiseProduct(g_phi);
    g_z = kp.inv_sq_lengthscales.asDiagonal() * g_z;
    o += d;
    g(o++) = weight * (-0.5 + (r.square() + var) / (2.0 * s2)).sum();
    g.segment(o, d * l) = g_z.reshaped();
    o += d * l;
    g.segment(o, l) = g_m;
    o += l;
    for (Eigen::Index j = 0; j < l; ++j) {
        g(o++) = g_ls(j, j) * ls(j, j);
        for (Eigen::Index i = j + 1; i < l; ++i) {
            g(o++) = g_ls(i, j);
        }
    }
    return value;
}

} // namespace svgp_detail

double svgp_elbo(const SvgpModel &model, const Eigen::MatrixXd &inputs,
                 const Eigen::VectorXd &outputs) {
    check_data(model, inputs, outputs);
    if (inputs.cols() == 0) {
        throw DataError("ELBO needs at least one observation");
    }
    const Eigen::VectorXd t =
        (outputs.array() - model.output_offset) / model.output_scale;
    return svgp_detail::elbo(model, inputs, t, 1.0, nullptr);
}

SvgpModel svgp_train(SvgpModel model, const Eigen::MatrixXd &inputs,
                     const Eigen::VectorXd &outputs, std::size_t steps, std::size_t batch_size,
                     Rng &rng, const SvgpOptions &options) {
    check_data(model, inputs, outputs);
    const Eigen::Index n = inputs.cols();
    if (n == 0) {
        throw DataError("sparse GP needs at least one observation");
    }
    if (batch_size == 0) {
        throw ConfigError("batch size must be positive");
    }
    if (steps == 0) {
        return model;
    }
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    const Eigen::Index l = static_cast<Eigen::Index>(model.num_inducing());
    const Eigen::VectorXd targets =
        (outputs.array() - model.output_offset) / model.output_scale;

    Eigen::VectorXd params = svgp_detail::pack(model);
    const Eigen::Index np = params.size();
    Eigen::VectorXd mask = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(np, -std::numeric_limits<double>::infinity());
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(np, std::numeric_limits<double>::infinity());
    if (options.train_hyperparameters) {
        mask.head(d + 2).setOnes();
        lo(0) = std::log(options.min_signal_variance);
        hi(0) = std::log(options.max_signal_variance);
        lo.segment(1, d).setConstant(std::log(options.min_inv_sq_lengthscale));
        hi.segment(1, d).setConstant(std::log(options.max_inv_sq_lengthscale));
        lo(d + 1) = std::log(options.min_noise_variance);
        hi(d + 1) = std::log(options.max_noise_variance);
    }
    if (options.train_inducing) {
        mask.segment(d + 2, d * l).setOnes();
    }
    if (options.train_variational) {
        mask.tail(l + l * (l + 1) / 2).setOnes();
    }

    const bool full_batch = static_cast<Eigen::Index>(batch_size) >= n;
    const Eigen::Index b = full_batch ? n : static_cast<Eigen::Index>(batch_size);
    const double weight = static_cast<double>(n) / static_cast<double>(b);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::size_t cursor = order.size();

    Eigen::MatrixXd xb(d, b);
    Eigen::VectorXd yb(b);
    if (full_batch) {
        xb = inputs;
        yb = targets;
    }

    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd grad(np);
    double b1t = 1.0;
    double b2t = 1.0;
    model.elbo_trace.reserve(model.elbo_trace.size() + steps);

    for (std::size_t step = 0; step < steps; ++step) {
        if (!full_batch) {
            for (Eigen::Index j = 0; j < b; ++j) {
                if (cursor == order.size()) {
                    // Fisher-Yates reshuffle with the model's own stream.
                    for (std::size_t i = order.size() - 1; i > 0; --i) {
                        std::swap(order[i], order[rng.below(i + 1)]);
                    }
                    cursor = 0;
                }
                const Eigen::Index idx = order[cursor++];
                xb.col(j) = inputs.col(idx);
                yb(j) = targets(idx);
            }
        }
        const double value = svgp_detail::elbo(model, xb, yb, weight, &grad);
        if (!std::isfinite(value) || !grad.allFinite()) {
            throw TrainingError(model.steps_trained + step,
                                "evidence lower bound became non-finite");
        }
        model.elbo_trace.push_back(value);

        double lr = options.learning_rate;
        const double frac = static_cast<double>(step) / static_cast<double>(steps);
        for (double at : options.decay_at) {
            if (frac >= at) {
                lr *= options.decay_factor;
            }
        }
        b1t *= kBeta1;
        b2t *= kBeta2;
        m1 = kBeta1 * m1 + (1.0 - kBeta1) * grad;
        m2 = kBeta2 * m2 + (1.0 - kBeta2) * grad.cwiseAbs2();
        const Eigen::ArrayXd stepv =
            lr * (m1.array() / (1.0 - b1t)) / ((m2.array() / (1.0 - b2t)).sqrt() + kEps);
        params.array() += mask.array() * stepv;
        params = params.cwiseMax(lo).cwiseMin(hi);
        svgp_detail::unpack(model, params);
    }
    model.steps_trained += steps;
    model.batch_size = batch_size;
    model.refresh();
    return model;
}

std::string svgp_to_json(const SvgpModel &model) {
    nlohmann::json j;
    j["format"] = "bopt-svgp-v1";
    j["kernel"] = to_string(model.kernel.kind);
    j["period"] = model.kernel.period;
    j["signal_variance"] = model.kernel.signal_variance;
    j["inv_sq_lengthscales"] = std::vector<double>(model.kernel.inv_sq_lengthscales.begin(),
                                                   model.kernel.inv_sq_lengthscales.end());
    j["noise_variance"] = model.noise_variance;
    j["dim"] = model.dim();
    j["num_inducing"] = model.num_inducing();
    j["inducing"] = std::vector<double>(model.inducing.reshaped().begin(),
                                        model.inducing.reshaped().end());
    j["q_mean"] = std::vector<double>(model.q_mean.begin(), model.q_mean.end());
    j["q_sqrt"] = std::vector<double>(model.q_sqrt.reshaped().begin(),
                                      model.q_sqrt.reshaped().end());
    j["output_offset"] = model.output_offset;
    j["output_scale"] = model.output_scale;
    j["batch_size"] = model.batch_size;
    j["steps_trained"] = model.steps_trained;
    j["final_elbo"] = model.elbo_trace.empty() ? nlohmann::json(nullptr)
                                               : nlohmann::json(model.elbo_trace.back());
    return j.dump(1);
}

SvgpModel svgp_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("invalid sparse GP snapshot: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "bopt-svgp-v1") {
            throw DataError("unsupported sparse GP snapshot format");
        }
        SvgpModel m;
        const auto d = j.at("dim").get<Eigen::Index>();
        const auto l = j.at("num_inducing").get<Eigen::Index>();
        m.kernel.kind = parse_kernel_kind(j.at("kernel").get<std::string>());
        m.kernel.period = j.at("period").get<double>();
        m.kernel.signal_variance = j.at("signal_variance").get<double>();
        const auto rho = j.at("inv_sq_lengthscales").get<std::vector<double>>();
        const auto z = j.at("inducing").get<std::vector<double>>();
        const auto qm = j.at("q_mean").get<std::vector<double>>();
        const auto qs = j.at("q_sqrt").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(rho.size()) != d ||
            static_cast<Eigen::Index>(z.size()) != d * l ||
            static_cast<Eigen::Index>(qm.size()) != l ||
            static_cast<Eigen::Index>(qs.size()) != l * l) {
            throw DataError("sparse GP snapshot arrays have inconsistent sizes");
        }
        m.kernel.inv_sq_lengthscales = Eigen::Map<const Eigen::VectorXd>(rho.data(), d);
        m.noise_variance = j.at("noise_variance").get<double>();
        m.inducing = Eigen::Map<const Eigen::MatrixXd>(z.data(), d, l);
        m.q_mean = Eigen::Map<const Eigen::VectorXd>(qm.data(), l);
        m.q_sqrt = Eigen::Map<const Eigen::MatrixXd>(qs.data(), l, l);
        m.output_offset = j.at("output_offset").get<double>();
        m.output_scale = j.at("output_scale").get<double>();
        m.batch_size = j.at("batch_size").get<std::size_t>();
        m.steps_trained = j.at("steps_trained").get<std::size_t>();
        m.refresh();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("invalid sparse GP snapshot: ") + e.what());
    }
}

} // namespace bopt
