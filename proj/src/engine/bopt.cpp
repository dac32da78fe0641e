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
#include "bopt/bopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>

#include "bopt/error.hpp"

namespace bopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Substreams of the run generator.
enum Stream : std::uint64_t { kDesign = 1, kNoise = 2, kSurrogate = 3, kAcquisition = 4, kStart = 5 };

double to_seconds(std::chrono::steady_clock::duration d) {
    return std::chrono::duration<double>(d).count();
}

class RunLog {
  public:
    RunLog(const Objective &objective, const BoConfig &config, Rng &rng, RunRecord &record)
        : objective_(objective), ledger_(config.budget, config.high_shots),
          noise_(rng.split(kNoise)), record_(record) {}

    double query(const Eigen::VectorXd &theta, std::uint64_t shots, bool high_shot,
                 double incumbent = std::numeric_limits<double>::quiet_NaN()) {
        ledger_.charge(shots);
        const double y = objective_.evaluate(theta, shots, noise_);
        if (high_shot && y < best_) {
            best_ = y;
        }
        RunRow row;
        row.iteration = record_.rows.size() + 1;
        row.shots = shots;
        row.cumulative_cost = ledger_.spent();
        row.theta = theta;
        row.observed = y;
        row.best_observed = high_shot ? best_ : std::numeric_limits<double>::quiet_NaN();
        row.incumbent = incumbent;
        record_.rows.push_back(std::move(row));
        return y;
    }

    [[nodiscard]] const BudgetLedger &ledger() const noexcept { return ledger_; }

  private:
    const Objective &objective_;
    BudgetLedger ledger_;
    Rng noise_;
    RunRecord &record_;
    double best_ = std::numeric_limits<double>::infinity();
};

void bo_loop(RunLog &log, const BoConfig &config, const TopologicalPrior &prior,
             Eigen::MatrixXd x, std::vector<double> y, Rng &rng) {
    Rng acq_rng = rng.split(kAcquisition);
    std::optional<GpHyperparameters> warm;
    while (log.ledger().can_afford(config.high_shots)) {
        GpFitOptions fit = config.gp;
        fit.warm_start = warm;
        const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(
            y.data(), static_cast<Eigen::Index>(y.size()));
        const GpTpModel model = GpTpModel::fit(x, yv, prior, config.kernel, fit);
        if (model.size() >= 2) {
            warm = model.residual_gp().hyperparameters();
        }
        const AcquisitionResult next =
            optimize_acquisition(model, config.acquisition, acq_rng, config.acq_optimizer);
        const double obs = log.query(next.theta, config.high_shots, true, next.eta);
        x.conservativeResize(Eigen::NoChange, x.cols() + 1);
        x.col(x.cols() - 1) = next.theta;
        y.push_back(obs);
    }
}

RunRecord start_record(const Objective &objective, std::string arm, const Rng &rng) {
    RunRecord record;
    record.arm = std::move(arm);
    record.seed = rng.seed();
    record.dim = objective.dimension();
    return record;
}

} // namespace

Arm parse_arm(std::string_view text) {
    for (Arm a : all_arms()) {
        if (text == to_string(a)) {
            return a;
        }
    }
    throw ConfigError("unknown arm '" + std::string(text) + "'");
}

std::string to_string(Arm arm) {
    switch (arm) {
    case Arm::Bopt:
        return "BOPT";
    case Arm::BoptMatern:
        return "BOPT-Matern";
    case Arm::BoptEi:
        return "BOPT-EI";
    case Arm::Lcb:
        return "LCB";
    case Arm::LcbP:
        return "LCB-p";
    case Arm::Ei:
        return "EI";
    case Arm::EiP:
        return "EI-p";
    case Arm::Powell:
        return "Powell";
    }
    return "BOPT";
}

const std::vector<Arm> &all_arms() {
    static const std::vector<Arm> arms{Arm::Bopt, Arm::BoptMatern, Arm::BoptEi, Arm::Lcb,
                                       Arm::LcbP, Arm::Ei,         Arm::EiP,    Arm::Powell};
    return arms;
}

ArmTraits arm_traits(Arm arm) {
    ArmTraits t;
    switch (arm) {
    case Arm::Bopt:
        t.topological_prior = true;
        break;
    case Arm::BoptMatern:
        t.topological_prior = true;
        t.kernel = KernelKind::Matern25;
        break;
    case Arm::BoptEi:
        t.topological_prior = true;
        t.acquisition = AcquisitionKind::NoisyEi;
        break;
    case Arm::Lcb:
        t.kernel = KernelKind::Matern25;
        break;
    case Arm::LcbP:
        break;
    case Arm::Ei:
        t.kernel = KernelKind::Matern25;
        t.acquisition = AcquisitionKind::Ei;
        break;
    case Arm::EiP:
        t.acquisition = AcquisitionKind::Ei;
        break;
    case Arm::Powell:
        t.bayesian = false;
        break;
    }
    return t;
}

BudgetLedger::BudgetLedger(double total, std::uint64_t high_shots) : high_shots_(high_shots) {
    if (high_shots == 0) {
        throw ConfigError("high-shot count must be positive");
    }
    if (!(total >= 0.0) || !std::isfinite(total)) {
        throw ConfigError("budget must be finite and non-negative");
    }
    total_ = static_cast<std::uint64_t>(std::floor(total * static_cast<double>(high_shots) + 0.5));
}

bool BudgetLedger::can_afford(std::uint64_t shots) const { return spent_ + shots <= total_; }

void BudgetLedger::charge(std::uint64_t shots) {
    if (!can_afford(shots)) {
        throw Error("budget exceeded");
    }
    spent_ += shots;
}

double BudgetLedger::total() const { return cost(total_); }
double BudgetLedger::spent() const { return cost(spent_); }
double BudgetLedger::cost(std::uint64_t shots) const {
    return static_cast<double>(shots) / static_cast<double>(high_shots_);
}

double RunRecord::final_best() const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (!std::isnan(it->best_observed)) {
            return it->best_observed;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void BoConfig::validate() const {
    if (!(high_shots > low_shots && low_shots >= 1)) {
        throw ConfigError("shot counts must satisfy high > low >= 1");
    }
    if (!(init_budget >= 0.0 && budget > init_budget)) {
        throw ConfigError("budgets must satisfy total > init >= 0");
    }
    if (budget - init_budget < 1.0) {
        throw ConfigError("budget is exhausted before any high-shot sample");
    }
    acquisition.validate();
}

RunRecord bopt_run(const Objective &objective, const BoConfig &config, Rng &rng) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record = start_record(objective, "BOPT", rng);
    RunLog log(objective, config, rng, record);
    const std::size_t d = objective.dimension();

    TopologicalPrior prior = TopologicalPrior::zero();
    if (config.init_budget > 0.0) {
        const double ratio = static_cast<double>(config.high_shots) /
                             static_cast<double>(config.low_shots);
        auto m = static_cast<std::size_t>(std::floor(config.init_budget * ratio + 1e-9));
        if (m > config.max_low_shot) {
            record.warnings.push_back("low-shot count " + std::to_string(m) + " capped at " +
                                      std::to_string(config.max_low_shot));
            m = config.max_low_shot;
        }
        if (m > 0) {
            Rng design_rng = rng.split(kDesign);
            const Eigen::MatrixXd x =
                space_filling_design(d, m, 0.0, kTwoPi, design_rng, config.init_design);
            Eigen::VectorXd y(x.cols());
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                y(j) = log.query(x.col(j), config.low_shots, false);
            }
            Rng svgp_rng = rng.split(kSurrogate);
            const std::size_t l = std::min(config.svgp.num_inducing, m);
            SvgpModel surrogate = svgp_init(x, y, l, config.kernel, svgp_rng, config.svgp);
            surrogate = svgp_train(std::move(surrogate), x, y, config.svgp.steps,
                                   config.svgp.batch_size, svgp_rng, config.svgp);
            prior = TopologicalPrior::from_surrogate(
                std::make_shared<const SvgpModel>(std::move(surrogate)));
        }
    }
    bo_loop(log, config, prior, Eigen::MatrixXd(d, 0), {}, rng);
    record.wall_seconds = to_seconds(std::chrono::steady_clock::now() - t0);
    return record;
}

RunRecord standard_bo_run(const Objective &objective, const BoConfig &config, Rng &rng) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record = start_record(objective, "BO", rng);
    RunLog log(objective, config, rng, record);
    const std::size_t d = objective.dimension();

    const auto n0 = static_cast<std::size_t>(std::floor(config.init_budget + 1e-9));
    Eigen::MatrixXd x(d, 0);
    std::vector<double> y;
    if (n0 > 0) {
        Rng design_rng = rng.split(kDesign);
        x = space_filling_design(d, n0, 0.0, kTwoPi, design_rng, config.init_design);
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            y.push_back(log.query(x.col(j), config.high_shots, true));
        }
    }
    bo_loop(log, config, TopologicalPrior::zero(), std::move(x), std::move(y), rng);
    record.wall_seconds = to_seconds(std::chrono::steady_clock::now() - t0);
    return record;
}

RunRecord powell_run(const Objective &objective, const Eigen::VectorXd &theta0,
                     std::size_t max_evaluations, std::uint64_t shots, Rng &rng,
                     const PowellOptions &options) {
    const std::size_t d = objective.dimension();
    if (static_cast<std::size_t>(theta0.size()) != d) {
        throw DimensionError("Powell start point has the wrong dimension");
    }
    if (max_evaluations < d + 1) {
        throw ConfigError("Powell needs at least d + 1 evaluations");
    }
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record = start_record(objective, "Powell", rng);
    BoConfig budget;
    budget.budget = static_cast<double>(max_evaluations);
    budget.high_shots = shots;
    RunLog log(objective, budget, rng, record);
    const auto fn = [&](const Eigen::VectorXd &theta) {
        return log.query(wrap_angles(theta), shots, true);
    };
    powell_minimize(fn, theta0, max_evaluations, options);
    record.wall_seconds = to_seconds(std::chrono::steady_clock::now() - t0);
    return record;
}

RunRecord run_arm(Arm arm, const Objective &objective, const BoConfig &config,
                  std::uint64_t seed, const PowellOptions &powell) {
    Rng rng(seed);
    const ArmTraits t = arm_traits(arm);
    RunRecord record;
    if (!t.bayesian) {
        Rng start_rng = rng.split(kStart);
        Eigen::VectorXd theta0(static_cast<Eigen::Index>(objective.dimension()));
        for (auto &v : theta0) {
            v = kTwoPi * start_rng.uniform();
        }
        const auto evals = static_cast<std::size_t>(std::floor(config.budget + 1e-9));
        record = powell_run(objective, theta0, evals, config.high_shots, rng, powell);
    } else {
        BoConfig c = config;
        c.kernel = t.kernel;
        c.acquisition.kind = t.acquisition;
        record = t.topological_prior ? bopt_run(objective, c, rng)
                                     : standard_bo_run(objective, c, rng);
    }
    record.arm = to_string(arm);
    return record;
}

} // namespace bopt
