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
#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"

#include "bopt/error.hpp"
#include "bopt/gp.hpp"
#include "bopt/kernel.hpp"
#include "bopt/qmc.hpp"
#include "bopt/rng.hpp"

using namespace bopt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd random_points(std::size_t d, std::size_t n, Rng &rng) {
    Eigen::MatrixXd x(d, n);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            x(i, j) = kTwoPi * rng.uniform();
        }
    }
    return x;
}

GpHyperparameters random_hyper(std::size_t d, Rng &rng) {
    GpHyperparameters h;
    h.signal_variance = 0.5 + 1.5 * rng.uniform();
    h.inv_sq_lengthscales = Eigen::VectorXd(d);
    for (auto &r : h.inv_sq_lengthscales) {
        r = 0.1 + rng.uniform();
    }
    h.noise_variance = 0.01 + 0.2 * rng.uniform();
    return h;
}

KernelParams params_of(KernelKind kind, const GpHyperparameters &h) {
    KernelParams k;
    k.kind = kind;
    k.signal_variance = h.signal_variance;
    k.inv_sq_lengthscales = h.inv_sq_lengthscales;
    return k;
}

// Explicit-inverse posterior, no standardization.
GpPrediction oracle_posterior(KernelKind kind, const GpHyperparameters &h,
                              const Eigen::MatrixXd &x, const Eigen::VectorXd &y,
                              const Eigen::VectorXd &m0x, double m0, const Eigen::VectorXd &t) {
    const KernelParams k = params_of(kind, h);
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd sigma(n, n);
    Eigen::VectorXd kt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        kt(i) = kernel_eval(k, x.col(i), t);
        for (Eigen::Index j = 0; j < n; ++j) {
            sigma(i, j) = kernel_eval(k, x.col(i), x.col(j)) + (i == j ? h.noise_variance : 0.0);
        }
    }
    const Eigen::MatrixXd inv = sigma.inverse();
    return {m0 + kt.dot(inv * (y - m0x)), kernel_eval(k, t, t) - kt.dot(inv * kt)};
}

double oracle_log_density(KernelKind kind, const GpHyperparameters &h, const Eigen::MatrixXd &x,
                          const Eigen::VectorXd &r) {
    const KernelParams k = params_of(kind, h);
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd sigma(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            sigma(i, j) = kernel_eval(k, x.col(i), x.col(j)) + (i == j ? h.noise_variance : 0.0);
        }
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sigma);
    return -0.5 * r.dot(lu.inverse() * r) - 0.5 * std::log(lu.determinant()) -
           0.5 * static_cast<double>(n) * std::log(kTwoPi);
}

PriorMean sine_prior() {
    PriorMean p;
    p.value = [](const Eigen::VectorXd &x) { return std::sin(x(0)) + 0.3 * x.sum(); };
    return p;
}

} // namespace

TEST_CASE("kernel values", "[kernel]") {
    KernelParams m = KernelParams::defaults(KernelKind::Matern25, 1);
    m.inv_sq_lengthscales << 1.0;
    const Eigen::VectorXd a = Eigen::VectorXd::Constant(1, 0.3);
    const Eigen::VectorXd b = Eigen::VectorXd::Constant(1, 1.3);
    CHECK_THAT(kernel_eval(m, a, b), WithinAbs(0.52399, 5e-6));
    const double s5 = std::sqrt(5.0);
    CHECK_THAT(kernel_eval(m, a, b), WithinAbs((1.0 + s5 + 5.0 / 3.0) * std::exp(-s5), 1e-15));

    Rng rng(1);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        KernelParams k = KernelParams::defaults(kind, 3);
        k.signal_variance = 2.7;
        const Eigen::MatrixXd x = random_points(3, 1, rng);
        CHECK(kernel_eval(k, x.col(0), x.col(0)) == 2.7);
    }
    CHECK_THROWS_AS(kernel_eval(m, Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()), DimensionError);
    CHECK(parse_kernel_kind("periodic") == KernelKind::Periodic);
    CHECK(parse_kernel_kind("matern25") == KernelKind::Matern25);
    CHECK_THROWS_AS(parse_kernel_kind("rbf"), ConfigError);
}

TEST_CASE("periodic kernel is exactly periodic", "[kernel][property]") {
    Rng rng(2);
    KernelParams k = KernelParams::defaults(KernelKind::Periodic, 4);
    k.inv_sq_lengthscales << 0.3, 1.0, 2.0, 5.0;
    for (int t = 0; t < 200; ++t) {
        const Eigen::MatrixXd x = random_points(4, 2, rng);
        const Eigen::Index i = static_cast<Eigen::Index>(rng.below(4));
        Eigen::VectorXd shifted = x.col(1);
        shifted(i) += kTwoPi;
        CHECK_THAT(kernel_eval(k, x.col(0), shifted),
                   WithinAbs(kernel_eval(k, x.col(0), x.col(1)), 1e-14));
    }
}

TEST_CASE("kernel input gradients match finite differences", "[kernel][property]") {
    Rng rng(3);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        KernelParams k = KernelParams::defaults(kind, 3);
        k.inv_sq_lengthscales << 0.4, 1.1, 0.2;
        for (int t = 0; t < 20; ++t) {
            const Eigen::MatrixXd x = random_points(3, 2, rng);
            const Eigen::VectorXd g = kernel_grad_x(k, x.col(0), x.col(1));
            for (Eigen::Index i = 0; i < 3; ++i) {
                Eigen::VectorXd p = x.col(0);
                Eigen::VectorXd m = x.col(0);
                p(i) += 1e-6;
                m(i) -= 1e-6;
                const double fd = (kernel_eval(k, p, x.col(1)) - kernel_eval(k, m, x.col(1))) / 2e-6;
                CHECK_THAT(g(i), WithinAbs(fd, 1e-7));
            }
        }
    }
}

TEST_CASE("kernel matrices are symmetric and factorizable", "[kernel][property]") {
    Rng rng(4);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 10; ++t) {
            const GpHyperparameters h = random_hyper(3, rng);
            const Eigen::MatrixXd x = random_points(3, 20, rng);
            const Eigen::MatrixXd kxx = kernel_matrix(params_of(kind, h), x);
            CHECK((kxx - kxx.transpose()).cwiseAbs().maxCoeff() == 0.0);
            CHECK(kxx.isApprox(kernel_matrix(params_of(kind, h), x, x)));
            // Noise-free conditioning needs at most the maximum jitter.
            GpHyperparameters noiseless = h;
            noiseless.noise_variance = 0.0;
            const GPModel model(x, Eigen::VectorXd::Zero(20), {}, kind, noiseless, false);
            CHECK(model.jitter() <= 1e-6 * h.signal_variance);
        }
    }
}

TEST_CASE("empty model returns the prior", "[gp]") {
    const GpHyperparameters h = GpHyperparameters::defaults(KernelKind::Periodic, 2);
    const GPModel model(Eigen::MatrixXd(2, 0), Eigen::VectorXd(0), sine_prior(),
                        KernelKind::Periodic, h);
    const Eigen::Vector2d t(0.7, 1.9);
    const GpPrediction p = model.predict(t);
    CHECK(p.mean == sine_prior()(t));
    CHECK(p.variance == h.signal_variance);
}

TEST_CASE("noiseless interpolation", "[gp]") {
    Rng rng(5);
    const Eigen::MatrixXd x = random_points(2, 6, rng);
    Eigen::VectorXd y(6);
    for (Eigen::Index j = 0; j < 6; ++j) {
        y(j) = std::cos(x(0, j)) - x(1, j);
    }
    GpHyperparameters h = GpHyperparameters::defaults(KernelKind::Matern25, 2);
    h.noise_variance = 0.0;
    for (bool standardize : {false, true}) {
        const GPModel model(x, y, sine_prior(), KernelKind::Matern25, h, standardize);
        for (Eigen::Index j = 0; j < 6; ++j) {
            const GpPrediction p = model.predict(x.col(j));
            CHECK_THAT(p.mean, WithinAbs(y(j), 1e-8));
            CHECK_THAT(p.variance, WithinAbs(0.0, 1e-8));
        }
    }
}

TEST_CASE("posterior matches explicit-inverse formulas", "[gp][property]") {
    Rng rng(6);
    const PriorMean prior = sine_prior();
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 10; ++t) {
            const std::size_t d = 1 + rng.below(4);
            const std::size_t n = 1 + rng.below(15);
            const GpHyperparameters h = random_hyper(d, rng);
            const Eigen::MatrixXd x = random_points(d, n, rng);
            Eigen::VectorXd y(static_cast<Eigen::Index>(n));
            Eigen::VectorXd m0x(static_cast<Eigen::Index>(n));
            for (Eigen::Index j = 0; j < y.size(); ++j) {
                y(j) = rng.normal();
                m0x(j) = prior(x.col(j));
            }
            const GPModel model(x, y, prior, kind, h, false);
            for (int q = 0; q < 5; ++q) {
                const Eigen::VectorXd pt = random_points(d, 1, rng).col(0);
                const GpPrediction got = model.predict(pt);
                const GpPrediction want = oracle_posterior(kind, h, x, y, m0x, prior(pt), pt);
                CHECK_THAT(got.mean, WithinAbs(want.mean, 1e-8));
                CHECK_THAT(got.variance, WithinAbs(want.variance, 1e-8));
            }
        }
    }
}

TEST_CASE("standardization rescales consistently", "[gp]") {
    Rng rng(7);
    const Eigen::MatrixXd x = random_points(2, 9, rng);
    Eigen::VectorXd y(9);
    for (auto &v : y) {
        v = 5.0 + 3.0 * rng.normal();
    }
    const GpHyperparameters h = random_hyper(2, rng);
    const GPModel model(x, y, {}, KernelKind::Periodic, h, true);
    const double s = model.output_scale();
    const double c = model.output_offset();
    CHECK_THAT(c, WithinAbs(y.mean(), 1e-12));
    // Equivalent raw model: kernel and noise scaled by s^2, constant prior c.
    GpHyperparameters raw = h;
    raw.signal_variance *= s * s;
    raw.noise_variance *= s * s;
    PriorMean constant;
    constant.value = [c](const Eigen::VectorXd &) { return c; };
    const GPModel ref(x, y, constant, KernelKind::Periodic, raw, false);
    const Eigen::VectorXd t = random_points(2, 1, rng).col(0);
    CHECK_THAT(model.predict(t).mean, WithinAbs(ref.predict(t).mean, 1e-10));
    CHECK_THAT(model.predict(t).variance, WithinRel(ref.predict(t).variance, 1e-10));
}

TEST_CASE("nlml closed forms", "[gp]") {
    GpHyperparameters h = GpHyperparameters::defaults(KernelKind::Periodic, 1);
    h.signal_variance = 0.75;
    h.noise_variance = 0.25;
    const GPModel one(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Zero(1), {},
                      KernelKind::Periodic, h, false);
    CHECK_THAT(one.nlml(), WithinAbs(0.5 * std::log(kTwoPi), 1e-14));
    CHECK_THAT(nlml(one, h), WithinAbs(0.9189385332, 1e-9));

    // With y = 0 the data-fit term vanishes, leaving the complexity penalty.
    Rng rng(8);
    const Eigen::MatrixXd x = random_points(2, 6, rng);
    GpHyperparameters g = random_hyper(2, rng);
    const GPModel zero(x, Eigen::VectorXd::Zero(6), {}, KernelKind::Matern25, g, false);
    GpHyperparameters doubled = g;
    doubled.signal_variance *= 2.0;
    CHECK(nlml(zero, doubled) > nlml(zero, g));
    CHECK_THROWS_AS(nlml(GPModel(Eigen::MatrixXd(2, 0), Eigen::VectorXd(0), {},
                                 KernelKind::Matern25, g),
                         g),
                    FitError);
}

TEST_CASE("nlml matches a dense normal-density oracle", "[gp][property]") {
    Rng rng(9);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 10; ++t) {
            const std::size_t d = 1 + rng.below(4);
            const GpHyperparameters h = random_hyper(d, rng);
            const Eigen::MatrixXd x = random_points(d, 8, rng);
            Eigen::VectorXd y(8);
            for (auto &v : y) {
                v = rng.normal();
            }
            const GPModel model(x, y, sine_prior(), kind, h, false);
            Eigen::VectorXd r = y;
            for (Eigen::Index j = 0; j < 8; ++j) {
                r(j) -= sine_prior()(x.col(j));
            }
            CHECK_THAT(model.nlml(), WithinAbs(-oracle_log_density(kind, h, x, r), 1e-8));
            CHECK_THAT(nlml(model, h), WithinAbs(model.nlml(), 1e-10));
        }
    }
}

TEST_CASE("nlml gradients match central differences", "[gp][property]") {
    Rng rng(10);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 8; ++t) {
            const std::size_t d = 1 + rng.below(4);
            const Eigen::MatrixXd x = random_points(d, 12, rng);
            Eigen::VectorXd r(12);
            for (auto &v : r) {
                v = rng.normal();
            }
            const NlmlObjective obj(x, r, kind);
            const Eigen::VectorXd gamma = random_hyper(d, rng).to_log();
            Eigen::VectorXd g;
            obj(gamma, &g);
            for (Eigen::Index i = 0; i < gamma.size(); ++i) {
                Eigen::VectorXd p = gamma;
                Eigen::VectorXd m = gamma;
                p(i) += 1e-5;
                m(i) -= 1e-5;
                const double fd = (obj(p, nullptr) - obj(m, nullptr)) / 2e-5;
                CHECK(std::abs(g(i) - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
            }
            // Pinned noise drops the last coordinate.
            Eigen::VectorXd gp;
            const double pinned = obj(gamma.head(gamma.size() - 1), &gp, gamma(gamma.size() - 1));
            CHECK_THAT(pinned, WithinAbs(obj(gamma, nullptr), 1e-12));
            CHECK(gp.isApprox(g.head(g.size() - 1)));
        }
    }
}

TEST_CASE("posterior variance is bounded by the prior", "[gp][property]") {
    Rng rng(11);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 10; ++t) {
            const GpHyperparameters h = random_hyper(2, rng);
            const Eigen::MatrixXd x = random_points(2, 10, rng);
            const GPModel model(x, Eigen::VectorXd::Random(10), {}, kind, h, false);
            for (int q = 0; q < 10; ++q) {
                const Eigen::VectorXd pt = random_points(2, 1, rng).col(0);
                CHECK(model.predict(pt).variance <= h.signal_variance + 1e-9);
                CHECK(model.predict(pt).variance >= 0.0);
            }
        }
    }
}

TEST_CASE("more noiseless data never raises posterior variance", "[gp][property]") {
    Rng rng(12);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 10; ++t) {
            GpHyperparameters h = random_hyper(2, rng);
            h.noise_variance = 0.0;
            const Eigen::MatrixXd x = random_points(2, 8, rng);
            const Eigen::VectorXd y = Eigen::VectorXd::Zero(8);
            const GPModel small(x.leftCols(7), y.head(7), {}, kind, h, false);
            const GPModel large(x, y, {}, kind, h, false);
            for (int q = 0; q < 10; ++q) {
                const Eigen::VectorXd pt = random_points(2, 1, rng).col(0);
                CHECK(large.predict(pt).variance <= small.predict(pt).variance + 1e-9);
            }
        }
    }
}

TEST_CASE("prior-mean shift equivariance", "[gp][property]") {
    Rng rng(13);
    const PriorMean prior = sine_prior();
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        for (int t = 0; t < 5; ++t) {
            const Eigen::MatrixXd x = random_points(2, 10, rng);
            Eigen::VectorXd y(10);
            Eigen::VectorXd resid(10);
            for (Eigen::Index j = 0; j < 10; ++j) {
                y(j) = rng.normal();
                resid(j) = y(j) - prior(x.col(j));
            }
            GpFitOptions opt;
            opt.restarts = 2;
            const GPModel with_prior = gp_fit(x, y, prior, kind, opt);
            const GPModel zero_mean = gp_fit(x, resid, {}, kind, opt);
            for (int q = 0; q < 5; ++q) {
                const Eigen::VectorXd pt = random_points(2, 1, rng).col(0);
                CHECK_THAT(with_prior.predict(pt).mean,
                           WithinAbs(zero_mean.predict(pt).mean + prior(pt), 1e-10));
            }
        }
    }
}

TEST_CASE("posterior gradients match finite differences", "[gp][property]") {
    Rng rng(14);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        const GpHyperparameters h = random_hyper(3, rng);
        const Eigen::MatrixXd x = random_points(3, 12, rng);
        Eigen::VectorXd y(12);
        for (auto &v : y) {
            v = rng.normal();
        }
        const GPModel model(x, y, sine_prior(), kind, h, true);
        for (int q = 0; q < 5; ++q) {
            const Eigen::VectorXd pt = random_points(3, 1, rng).col(0);
            const GpPredictionGrad g = model.predict_with_gradient(pt);
            CHECK_THAT(g.mean, WithinAbs(model.predict(pt).mean, 1e-12));
            CHECK_THAT(g.variance, WithinAbs(model.predict(pt).variance, 1e-12));
            for (Eigen::Index i = 0; i < 3; ++i) {
                Eigen::VectorXd p = pt;
                Eigen::VectorXd m = pt;
                p(i) += 1e-6;
                m(i) -= 1e-6;
                const GpPrediction fp = model.predict(p);
                const GpPrediction fm = model.predict(m);
                CHECK_THAT(g.mean_grad(i), WithinAbs((fp.mean - fm.mean) / 2e-6, 1e-5));
                CHECK_THAT(g.variance_grad(i), WithinAbs((fp.variance - fm.variance) / 2e-6, 1e-5));
            }
        }
    }
}

TEST_CASE("joint posterior covariance is consistent", "[gp]") {
    Rng rng(15);
    const GpHyperparameters h = random_hyper(2, rng);
    const Eigen::MatrixXd x = random_points(2, 7, rng);
    const GPModel model(x, Eigen::VectorXd::Random(7), {}, KernelKind::Periodic, h, true);
    const Eigen::MatrixXd a = random_points(2, 4, rng);
    const Eigen::MatrixXd cov = model.posterior_covariance(a);
    const Eigen::VectorXd pt = random_points(2, 1, rng).col(0);
    Eigen::MatrixXd ax(2, 5);
    ax << a, pt;
    const Eigen::MatrixXd joint = model.posterior_covariance(ax);
    CHECK(joint.topLeftCorner(4, 4).isApprox(cov, 1e-12));
    CHECK(joint.col(4).head(4).isApprox(model.posterior_cross_covariance(a, pt), 1e-12));
    for (Eigen::Index j = 0; j < 4; ++j) {
        CHECK_THAT(cov(j, j), WithinAbs(model.predict(a.col(j)).variance, 1e-12));
    }
}

TEST_CASE("fitting does no worse than the generating hyperparameters", "[gp][fit]") {
    Rng rng(16);
    for (KernelKind kind : {KernelKind::Matern25, KernelKind::Periodic}) {
        GpHyperparameters truth;
        truth.signal_variance = 1.0;
        truth.inv_sq_lengthscales = Eigen::Vector2d(0.5, 1.5);
        truth.noise_variance = 0.05;
        const Eigen::MatrixXd x = random_points(2, 30, rng);
        Eigen::MatrixXd cov = kernel_matrix(params_of(kind, truth), x);
        cov.diagonal().array() += truth.noise_variance;
        const Eigen::MatrixXd l = cov.llt().matrixL();
        Eigen::VectorXd z(30);
        for (auto &v : z) {
            v = rng.normal();
        }
        const Eigen::VectorXd y = l * z;
        GpFitOptions opt;
        opt.standardize = false;
        const GPModel fitted = gp_fit(x, y, {}, kind, opt);
        CHECK(fitted.nlml() <= nlml(fitted, truth) + 1e-6);
    }
}

TEST_CASE("constant outputs are reproduced", "[gp][fit]") {
    Rng rng(17);
    const Eigen::MatrixXd x = random_points(2, 8, rng);
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(8, -1.137);
    const GPModel model = gp_fit(x, y, {}, KernelKind::Periodic);
    for (int q = 0; q < 5; ++q) {
        CHECK_THAT(model.predict(random_points(2, 1, rng).col(0)).mean, WithinAbs(-1.137, 1e-9));
    }
}

TEST_CASE("too few points keep the starting hyperparameters", "[gp][fit]") {
    GpFitOptions opt;
    GpHyperparameters start = GpHyperparameters::defaults(KernelKind::Matern25, 1);
    start.signal_variance = 3.0;
    opt.warm_start = start;
    const GPModel model = gp_fit(Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::VectorXd::Constant(1, 2.0),
                                 {}, KernelKind::Matern25, opt);
    CHECK(model.hyperparameters().signal_variance == 3.0);
    CHECK_THAT(model.predict(Eigen::VectorXd::Constant(1, 0.5)).mean, WithinAbs(2.0, 1e-12));
}

TEST_CASE("pinned noise is honoured in output units", "[gp][fit]") {
    Rng rng(18);
    const Eigen::MatrixXd x = random_points(1, 12, rng);
    Eigen::VectorXd y(12);
    for (Eigen::Index j = 0; j < 12; ++j) {
        y(j) = 4.0 * std::sin(x(0, j)) + 0.2 * rng.normal();
    }
    GpFitOptions opt;
    opt.fixed_noise_variance = 0.04;
    const GPModel model = gp_fit(x, y, {}, KernelKind::Periodic, opt);
    const double s = model.output_scale();
    CHECK_THAT(model.hyperparameters().noise_variance * s * s, WithinRel(0.04, 1e-12));
}

TEST_CASE("non-finite outputs fail the fit", "[gp][fit]") {
    Rng rng(19);
    const Eigen::MatrixXd x = random_points(1, 4, rng);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
    y(2) = std::nan("");
    CHECK_THROWS_AS(gp_fit(x, y, {}, KernelKind::Periodic), Error);
}

TEST_CASE("periodic kernel extrapolates a sine better than Matern", "[gp][fit]") {
    Rng rng(20);
    const int n = 16;
    Eigen::MatrixXd x(1, n);
    Eigen::VectorXd y(n);
    for (int j = 0; j < n; ++j) {
        x(0, j) = kTwoPi * (j + 0.5) / n;
        y(j) = std::sin(x(0, j)) + 0.05 * rng.normal();
    }
    const GPModel per = gp_fit(x, y, {}, KernelKind::Periodic);
    const GPModel mat = gp_fit(x, y, {}, KernelKind::Matern25);
    double err_per = 0.0;
    double err_mat = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double t = kTwoPi + kTwoPi * (k + 0.5) / 50.0;
        const Eigen::VectorXd pt = Eigen::VectorXd::Constant(1, t);
        err_per += std::pow(per.predict(pt).mean - std::sin(t), 2);
        err_mat += std::pow(mat.predict(pt).mean - std::sin(t), 2);
    }
    CHECK(std::sqrt(err_per / 50) < std::sqrt(err_mat / 50));
    CHECK(std::sqrt(err_per / 50) < 0.1);
}
