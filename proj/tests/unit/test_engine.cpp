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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "catch_amalgamated.hpp"

#include "bopt/acquisition.hpp"
#include "bopt/bopt.hpp"
#include "bopt/error.hpp"
#include "bopt/objective.hpp"
#include "bopt/powell.hpp"
#include "bopt/qmc.hpp"
#include "bopt/rng.hpp"

using namespace bopt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd random_points(std::size_t d, std::size_t n, Rng &rng) {
    Eigen::MatrixXd x(d, n);
    for (auto &v : x.reshaped()) {
        v = kTwoPi * rng.uniform();
    }
    return x;
}

GpHyperparameters fixed_hyper(std::size_t d, double noise) {
    GpHyperparameters h;
    h.signal_variance = 1.0;
    h.inv_sq_lengthscales = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(d), 1.0);
    h.noise_variance = noise;
    return h;
}

double smooth(const Eigen::VectorXd &t) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        s += std::sin(t(i) + 0.3 * static_cast<double>(i)) + 0.5 * std::cos(2.0 * t(i));
    }
    return s;
}

GpTpModel toy_model(std::size_t d, std::size_t n, double noise, KernelKind kind,
                    std::uint64_t seed, TopologicalPrior prior = TopologicalPrior::zero()) {
    Rng rng(seed);
    const Eigen::MatrixXd x = random_points(d, n, rng);
    Eigen::VectorXd y(x.cols());
    Eigen::VectorXd r(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        y(j) = smooth(x.col(j));
        r(j) = y(j) - prior(x.col(j));
    }
    GPModel residual(x, r, PriorMean::zero(), kind, fixed_hyper(d, noise));
    return GpTpModel(std::move(prior), std::move(residual), y);
}

template <class F>
Eigen::VectorXd central_difference(F f, const Eigen::VectorXd &x, double h = 1e-6) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd a = x;
        Eigen::VectorXd b = x;
        a(i) += h;
        b(i) -= h;
        g(i) = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

double wrapped_distance(double a, double b) {
    const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

BoConfig small_config(double budget, double init_budget) {
    BoConfig c;
    c.budget = budget;
    c.init_budget = init_budget;
    c.high_shots = 1000;
    c.low_shots = 100;
    c.svgp.steps = 200;
    c.svgp.num_inducing = 20;
    c.acq_optimizer.raw_candidates = 256;
    c.acq_optimizer.starts = 8;
    return c;
}

double grid_min(const std::function<double(double)> &f, int n = 10000) {
    double best = f(0.0);
    for (int i = 1; i < n; ++i) {
        best = std::min(best, f(kTwoPi * i / n));
    }
    return best;
}

} // namespace

TEST_CASE("LCB scalar examples", "[acquisition]") {
    CHECK(acq_lcb(-1.0, 0.1, 4.0) == Catch::Approx(-1.2).epsilon(1e-15));
    CHECK(acq_lcb(0.7, 3.0, 0.0) == 0.7);
}

TEST_CASE("LCB equals the observation at a noiseless training point", "[acquisition]") {
    const GpTpModel model = toy_model(2, 6, 1e-10, KernelKind::Periodic, 3);
    const Eigen::VectorXd x0 = model.inputs().col(2);
    CHECK_THAT(acq_lcb(model, x0, 4.0), WithinAbs(model.observations()(2), 1e-3));
}

TEST_CASE("EI scalar examples", "[acquisition]") {
    CHECK_THAT(acq_ei(0.5, 2.0, 0.5), WithinRel(2.0 / std::sqrt(kTwoPi), 1e-14));
    CHECK_THAT(acq_ei(-1.0, 0.0, 0.25), WithinAbs(1.25, 1e-15));
    CHECK(acq_ei(1.0, 0.0, 0.25) == 0.0);
    CHECK(acq_ei(0.0, 1.0, -50.0) >= 0.0);
}

TEST_CASE("EI matches a Monte-Carlo estimate", "[acquisition]") {
    const double triples[5][3] = {
        {0.0, 1.0, 0.0}, {0.3, 0.5, 0.1}, {-1.0, 2.0, 0.5}, {2.0, 1.0, 0.0}, {0.0, 0.1, 0.3}};
    Rng rng(11);
    constexpr int kDraws = 1000000;
    for (const auto &t : triples) {
        const double mu = t[0];
        const double sd = t[1];
        const double eta = t[2];
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            const double imp = std::max(eta - (mu + sd * rng.normal()), 0.0);
            sum += imp;
            sum2 += imp * imp;
        }
        const double mean = sum / kDraws;
        const double se = std::sqrt((sum2 / kDraws - mean * mean) / kDraws);
        CHECK(std::fabs(acq_ei(mu, sd, eta) - mean) <= 3.0 * se);
    }
}

TEST_CASE("LCB and EI gradients match finite differences", "[acquisition]") {
    for (KernelKind kind : {KernelKind::Periodic, KernelKind::Matern25}) {
        const GpTpModel model = toy_model(3, 8, 0.01, kind, 5);
        Rng rng(6);
        for (int trial = 0; trial < 5; ++trial) {
            const Eigen::VectorXd x = random_points(3, 1, rng).col(0);
            Eigen::VectorXd g;
            acq_lcb(model, x, 4.0, &g);
            const Eigen::VectorXd g_lcb = central_difference(
                [&](const Eigen::VectorXd &t) { return acq_lcb(model, t, 4.0); }, x);
            CHECK((g - g_lcb).norm() <= 1e-5 * (1.0 + g_lcb.norm()));

            const double eta = model.observations().minCoeff();
            acq_ei(model, x, eta, &g);
            const Eigen::VectorXd g_ei = central_difference(
                [&](const Eigen::VectorXd &t) { return acq_ei(model, t, eta); }, x);
            CHECK((g - g_ei).norm() <= 1e-5 * (1.0 + g_ei.norm()));
        }
    }
}

TEST_CASE("Noisy EI is zero at the noiseless best point", "[acquisition]") {
    const GpTpModel model = toy_model(2, 7, 1e-10, KernelKind::Periodic, 8);
    Eigen::Index best = 0;
    model.observations().minCoeff(&best);
    Rng rng(9);
    const Eigen::MatrixXd base = NoisyEi::draw_base(model.size(), 256, rng);
    CHECK_THAT(acq_noisy_ei(model, model.inputs().col(best), base), WithinAbs(0.0, 1e-4));
}

TEST_CASE("Noisy EI converges to analytic EI on a noise-free model", "[acquisition]") {
    const GpTpModel model = toy_model(2, 6, 1e-10, KernelKind::Periodic, 12);
    const double eta = model.observations().minCoeff();
    Rng rng(13);
    const Eigen::MatrixXd points = random_points(2, 3, rng);
    constexpr int kBatches = 40;
    constexpr std::size_t kPerBatch = 2000;
    for (Eigen::Index p = 0; p < points.cols(); ++p) {
        const Eigen::VectorXd x = points.col(p);
        std::vector<double> means;
        for (int b = 0; b < kBatches; ++b) {
            const NoisyEi nei(model, NoisyEi::draw_base(model.size(), kPerBatch, rng));
            means.push_back(nei(x));
        }
        double mean = 0.0;
        for (double m : means) {
            mean += m / kBatches;
        }
        double var = 0.0;
        for (double m : means) {
            var += (m - mean) * (m - mean) / (kBatches - 1);
        }
        const double se = std::sqrt(var / kBatches);
        const double analytic = acq_ei(model, x, eta);
        CHECK(std::fabs(mean - analytic) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("Noisy EI is deterministic under fixed base draws", "[acquisition]") {
    const GpTpModel model = toy_model(2, 6, 0.05, KernelKind::Periodic, 14);
    Rng rng(15);
    const Eigen::MatrixXd base = NoisyEi::draw_base(model.size(), 1, rng);
    REQUIRE(base.rows() == static_cast<Eigen::Index>(model.size() + 1));
    REQUIRE(base.cols() == 1);
    const Eigen::VectorXd x = random_points(2, 1, rng).col(0);
    const double a = acq_noisy_ei(model, x, base);
    const double b = acq_noisy_ei(model, x, base);
    CHECK(a == b);
    CHECK(a >= 0.0);
}

TEST_CASE("Noisy EI gradient matches finite differences", "[acquisition]") {
    const GpTpModel model = toy_model(3, 8, 0.05, KernelKind::Periodic, 16);
    Rng rng(17);
    const NoisyEi nei(model, NoisyEi::draw_base(model.size(), 64, rng));
    int checked = 0;
    for (int trial = 0; trial < 20 && checked < 5; ++trial) {
        const Eigen::VectorXd x = random_points(3, 1, rng).col(0);
        Eigen::VectorXd g;
        if (nei(x, &g) < 1e-6) {
            continue;
        }
        // Small step: the sample-wise max is only piecewise smooth.
        const Eigen::VectorXd fd =
            central_difference([&](const Eigen::VectorXd &t) { return nei(t); }, x, 1e-7);
        CHECK((g - fd).norm() <= 1e-4 * (1.0 + fd.norm()));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("Acquisition explores away from a single training point", "[acquisition]") {
    Eigen::MatrixXd x(2, 1);
    x << 1.0, 2.0;
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, 0.3);
    GPModel residual(x, y, PriorMean::zero(), KernelKind::Periodic, fixed_hyper(2, 1e-6));
    const GpTpModel model(TopologicalPrior::zero(), residual, y);
    AcquisitionSpec spec;
    spec.beta = 100.0;
    Rng rng(1);
    const AcquisitionResult r = optimize_acquisition(model, spec, rng);
    CHECK(r.value < acq_lcb(model, x.col(0), spec.beta));
    CHECK(wrapped_distance(r.theta(0), 1.0) + wrapped_distance(r.theta(1), 2.0) > 1.0);
}

TEST_CASE("Acquisition recovers a quadratic-bowl minimum", "[acquisition]") {
    const Eigen::Vector3d centre(1.5, 3.0, 4.2);
    TopologicalPrior prior;
    prior.mean_fn.value = [centre](const Eigen::VectorXd &t) {
        return (t - centre).squaredNorm();
    };
    prior.mean_fn.gradient = [centre](const Eigen::VectorXd &t) -> Eigen::VectorXd {
        return 2.0 * (t - centre);
    };
    GPModel residual(Eigen::MatrixXd(3, 0), Eigen::VectorXd(0), PriorMean::zero(),
                     KernelKind::Periodic, fixed_hyper(3, 1e-2));
    const GpTpModel model(prior, residual, Eigen::VectorXd(0));
    AcquisitionSpec spec;
    spec.beta = 0.0;
    Rng rng(2);
    const AcquisitionResult r = optimize_acquisition(model, spec, rng);
    CHECK((r.theta - centre).norm() < 1e-3);
}

TEST_CASE("Acquisition value is periodic at the optimum", "[acquisition]") {
    const GpTpModel model = toy_model(3, 10, 0.01, KernelKind::Periodic, 21);
    Rng rng(3);
    const AcquisitionResult r = optimize_acquisition(model, {}, rng);
    for (Eigen::Index i = 0; i < 3; ++i) {
        Eigen::VectorXd shifted = r.theta;
        shifted(i) += kTwoPi;
        CHECK_THAT(acq_lcb(model, shifted, 4.0), WithinAbs(acq_lcb(model, r.theta, 4.0), 1e-10));
    }
}

TEST_CASE("Incumbent with one noiseless observation", "[acquisition]") {
    Eigen::MatrixXd x(1, 1);
    x << 2.0;
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, -0.4);
    GPModel residual(x, y, PriorMean::zero(), KernelKind::Periodic, fixed_hyper(1, 1e-10));
    const GpTpModel model(TopologicalPrior::zero(), residual, y);
    Rng rng(4);
    CHECK(incumbent_eta(model, rng).eta <= -0.4 + 1e-9);
}

TEST_CASE("Incumbent under a perfect prior is the grid minimum", "[acquisition]") {
    const auto f = [](double t) { return std::cos(t) + 0.3 * std::sin(2.0 * t); };
    TopologicalPrior prior;
    prior.mean_fn.value = [f](const Eigen::VectorXd &t) { return f(t(0)); };
    GPModel residual(Eigen::MatrixXd(1, 0), Eigen::VectorXd(0), PriorMean::zero(),
                     KernelKind::Periodic, fixed_hyper(1, 1e-2));
    const GpTpModel model(prior, residual, Eigen::VectorXd(0));
    Rng rng(5);
    const Incumbent inc = incumbent_eta(model, rng);
    CHECK_THAT(inc.eta, WithinAbs(grid_min(f), 1e-6));
    CHECK(inc.eta <= grid_min(f) + 1e-12);
}

TEST_CASE("A lower observation never raises the incumbent", "[acquisition]") {
    const GpTpModel a = toy_model(2, 6, 1e-4, KernelKind::Periodic, 22);
    Rng rng(6);
    const double eta_a = incumbent_eta(a, rng).eta;

    Eigen::MatrixXd x = a.inputs();
    Eigen::VectorXd y = a.observations();
    x.conservativeResize(Eigen::NoChange, x.cols() + 1);
    x.col(x.cols() - 1) = Eigen::Vector2d(0.5, 5.5);
    y.conservativeResize(y.size() + 1);
    y(y.size() - 1) = eta_a - 1.0;
    GPModel residual(x, y, PriorMean::zero(), KernelKind::Periodic, fixed_hyper(2, 1e-4));
    const GpTpModel b(TopologicalPrior::zero(), residual, y);
    Rng rng_b(6);
    CHECK(incumbent_eta(b, rng_b).eta < eta_a);
}

TEST_CASE("GP-TP equals prior plus a residual GP", "[gptp]") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const std::size_t n = 3 + trial;
        const KernelKind kind = trial % 2 == 0 ? KernelKind::Periodic : KernelKind::Matern25;
        const double shift = rng.uniform();
        TopologicalPrior prior;
        prior.mean_fn.value = [shift](const Eigen::VectorXd &t) {
            return std::sin(t.sum() + shift) - 0.2 * std::cos(t(0));
        };
        const Eigen::MatrixXd x = random_points(d, n, rng);
        Eigen::VectorXd y(x.cols());
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            y(j) = smooth(x.col(j)) + 0.05 * rng.normal();
        }
        const GpTpModel model = GpTpModel::fit(x, y, prior, kind);

        Eigen::VectorXd r(y.size());
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            r(j) = y(j) - prior(x.col(j));
        }
        const GPModel zero_mean(x, r, PriorMean::zero(), kind,
                                model.residual_gp().hyperparameters());
        const Eigen::MatrixXd q = random_points(d, 5, rng);
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            const GpPrediction a = model.predict(q.col(j));
            const GpPrediction b = zero_mean.predict(q.col(j));
            CHECK_THAT(a.mean, WithinAbs(prior(q.col(j)) + b.mean, 1e-10));
            CHECK_THAT(a.variance, WithinAbs(b.variance, 1e-10));
        }
    }
}

TEST_CASE("GP-TP rejects a residual GP with its own prior", "[gptp]") {
    Eigen::MatrixXd x(1, 2);
    x << 0.5, 1.5;
    const Eigen::Vector2d y(0.1, 0.2);
    PriorMean p;
    p.value = [](const Eigen::VectorXd &) { return 1.0; };
    GPModel gp(x, y, p, KernelKind::Periodic, fixed_hyper(1, 1e-2));
    CHECK_THROWS_AS(GpTpModel(TopologicalPrior::zero(), gp, y), Error);
}

TEST_CASE("Acquisition names round-trip", "[acquisition]") {
    for (AcquisitionKind k : {AcquisitionKind::Lcb, AcquisitionKind::Ei, AcquisitionKind::NoisyEi}) {
        CHECK(parse_acquisition_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_acquisition_kind("ucb"), ConfigError);
    AcquisitionSpec spec;
    spec.beta = -1.0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("Arm names round-trip", "[engine]") {
    for (Arm a : all_arms()) {
        CHECK(parse_arm(to_string(a)) == a);
    }
    CHECK_THROWS_AS(parse_arm("TuRBO"), ConfigError);
    CHECK(arm_traits(Arm::Bopt).topological_prior);
    CHECK(arm_traits(Arm::Lcb).kernel == KernelKind::Matern25);
    CHECK_FALSE(arm_traits(Arm::Powell).bayesian);
}

TEST_CASE("Budget ledger is exact in shots", "[engine]") {
    BudgetLedger ledger(1.5, 100000);
    for (int i = 0; i < 50; ++i) {
        ledger.charge(1000);
    }
    CHECK(ledger.spent() == 0.5);
    ledger.charge(100000);
    CHECK(ledger.spent() == 1.5);
    CHECK_FALSE(ledger.can_afford(1));
    CHECK_THROWS_AS(ledger.charge(1), Error);
}

TEST_CASE("Run configuration is validated", "[engine]") {
    const FunctionObjective obj(1, [](const Eigen::VectorXd &t) { return std::cos(t(0)); });
    Rng rng(1);
    BoConfig c = small_config(10.0, 10.0);
    CHECK_THROWS_AS(bopt_run(obj, c, rng), ConfigError);
    c = small_config(10.0, 9.5);
    CHECK_THROWS_AS(bopt_run(obj, c, rng), ConfigError);
    c = small_config(10.0, 2.0);
    c.low_shots = c.high_shots;
    CHECK_THROWS_AS(standard_bo_run(obj, c, rng), ConfigError);
}

TEST_CASE("Standard BO charges exactly the budget", "[engine]") {
    const FunctionObjective obj(2, smooth);
    Rng rng(2);
    const RunRecord r = standard_bo_run(obj, small_config(12.0, 4.0), rng);
    REQUIRE(r.rows.size() == 12);
    std::uint64_t shots = 0;
    for (const RunRow &row : r.rows) {
        shots += row.shots;
    }
    CHECK(shots == 12 * 1000);
    CHECK(r.rows.back().cumulative_cost == 12.0);
}

TEST_CASE("BOPT spends the initialization budget on low-shot queries", "[engine]") {
    NoiseModel noise;
    noise.shot_mode = ShotMode::Gaussian;
    noise.sigma_s = 0.5;
    const FunctionObjective obj(2, smooth, noise);
    Rng rng(3);
    const RunRecord r = bopt_run(obj, small_config(10.0, 2.0), rng);
    REQUIRE(r.rows.size() == 20 + 8);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const RunRow &row = r.rows[i];
        CHECK(row.iteration == i + 1);
        CHECK(row.shots == (i < 20 ? 100u : 1000u));
        CHECK(std::isnan(row.best_observed) == (i < 20));
    }
    CHECK_THAT(r.rows.back().cumulative_cost, WithinAbs(10.0, 1e-12));

    double best = std::numeric_limits<double>::infinity();
    for (const RunRow &row : r.rows) {
        if (!std::isnan(row.best_observed)) {
            CHECK(row.best_observed <= best);
            best = row.best_observed;
        }
    }
    CHECK(r.final_best() == best);
}

TEST_CASE("Low-shot count is capped with a warning", "[engine]") {
    const FunctionObjective obj(1, [](const Eigen::VectorXd &t) { return std::cos(t(0)); });
    BoConfig c = small_config(6.0, 3.0);
    c.max_low_shot = 10;
    Rng rng(4);
    const RunRecord r = bopt_run(obj, c, rng);
    REQUIRE(r.warnings.size() == 1);
    CHECK(std::count_if(r.rows.begin(), r.rows.end(),
                        [](const RunRow &row) { return row.shots == 100; }) == 10);
}

TEST_CASE("Runs are deterministic", "[engine]") {
    NoiseModel noise;
    noise.shot_mode = ShotMode::Gaussian;
    const FunctionObjective obj(2, smooth, noise);
    for (Arm arm : {Arm::Bopt, Arm::BoptEi, Arm::Ei, Arm::Powell}) {
        const RunRecord a = run_arm(arm, obj, small_config(8.0, 2.0), 77);
        const RunRecord b = run_arm(arm, obj, small_config(8.0, 2.0), 77);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].theta == b.rows[i].theta);
            CHECK(a.rows[i].observed == b.rows[i].observed);
        }
    }
}

TEST_CASE("BOPT without initialization budget is standard BO", "[engine]") {
    const FunctionObjective obj(2, smooth);
    const BoConfig c = small_config(8.0, 0.0);
    Rng ra(5);
    Rng rb(5);
    const RunRecord a = bopt_run(obj, c, ra);
    const RunRecord b = standard_bo_run(obj, c, rb);
    REQUIRE(a.rows.size() == 8);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].theta == b.rows[i].theta);
        CHECK(a.rows[i].observed == b.rows[i].observed);
    }
}

TEST_CASE("BOPT finds the minimum of a 1-D test function", "[engine]") {
    const auto f = [](double t) { return std::sin(t) + 0.1 * t; };
    const FunctionObjective obj(1, [f](const Eigen::VectorXd &t) { return f(wrap_angle(t(0))); });
    Rng rng(6);
    const RunRecord r = bopt_run(obj, small_config(20.0, 2.0), rng);
    CHECK(r.final_best() - grid_min(f) < 1e-2);
}

TEST_CASE("Periodic kernel reaches a periodic minimum sooner", "[engine]") {
    const auto f = [](double t) { return std::cos(t - 1.0) + 0.6 * std::cos(2.0 * t + 0.5); };
    const double target = grid_min(f) + 1e-3;
    const FunctionObjective obj(1, [f](const Eigen::VectorXd &t) { return f(t(0)); });
    const BoConfig c = small_config(25.0, 3.0);
    const auto evaluations_to_target = [&](Arm arm, std::uint64_t seed) {
        const RunRecord r = run_arm(arm, obj, c, seed);
        for (const RunRow &row : r.rows) {
            if (row.best_observed <= target) {
                return static_cast<double>(row.iteration);
            }
        }
        return static_cast<double>(r.rows.size() + 1);
    };
    std::vector<double> periodic;
    std::vector<double> matern;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        periodic.push_back(evaluations_to_target(Arm::LcbP, seed));
        matern.push_back(evaluations_to_target(Arm::Lcb, seed));
    }
    const auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[4] + v[5]);
    };
    CHECK(median(periodic) <= median(matern));
}

TEST_CASE("Powell minimizes a 1-D quadratic", "[powell]") {
    const PowellResult r = powell_minimize(
        [](const Eigen::VectorXd &x) { return (x(0) - 1.0) * (x(0) - 1.0); },
        Eigen::VectorXd::Constant(1, -2.0), 200);
    CHECK_THAT(r.x(0), WithinAbs(1.0, 1e-6));
    CHECK(r.evaluations <= 200);
}

TEST_CASE("Powell minimizes the Rosenbrock function", "[powell]") {
    const auto rosen = [](const Eigen::VectorXd &x) {
        return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
    };
    PowellOptions o;
    o.max_line_evaluations = 60;
    o.line_tolerance = 1e-8;
    const PowellResult r = powell_minimize(rosen, Eigen::Vector2d(-1.2, 1.0), 5000, o);
    CHECK(r.value < 1e-4);
    CHECK((r.x - Eigen::Vector2d(1.0, 1.0)).norm() < 0.05);
}

TEST_CASE("Powell respects the evaluation cap", "[powell]") {
    const FunctionObjective obj(3, smooth);
    Rng rng(7);
    const RunRecord r = powell_run(obj, Eigen::Vector3d(1.0, 2.0, 3.0), 17, 1000, rng);
    CHECK(r.rows.size() <= 17);
    CHECK(r.rows.size() >= 4);
    for (const RunRow &row : r.rows) {
        CHECK((row.theta.array() >= 0.0).all());
        CHECK((row.theta.array() < kTwoPi).all());
    }
    CHECK_THROWS_AS(powell_run(obj, Eigen::Vector3d::Zero(), 3, 1000, rng), ConfigError);
}
