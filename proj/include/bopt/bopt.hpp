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
 * Optimization runs: BOPT, standard BO ablations and the Powell baseline,
 * with shot-proportional budget accounting.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bopt/acquisition.hpp"
#include "bopt/gp.hpp"
#include "bopt/objective.hpp"
#include "bopt/powell.hpp"
#include "bopt/qmc.hpp"
#include "bopt/rng.hpp"
#include "bopt/svgp.hpp"

namespace bopt {

enum class Arm { Bopt, BoptMatern, BoptEi, Lcb, LcbP, Ei, EiP, Powell };

Arm parse_arm(std::string_view text);
std::string to_string(Arm arm);
const std::vector<Arm> &all_arms();

struct ArmTraits {
    bool bayesian = true;
    bool topological_prior = false;
    KernelKind kernel = KernelKind::Periodic;
    AcquisitionKind acquisition = AcquisitionKind::Lcb;
};
ArmTraits arm_traits(Arm arm);

/**
 * @brief Budget in high-shot units, tracked exactly in shots.
 *
 * A query with s shots costs s / S where S is the high-shot count.
 */
class BudgetLedger {
  public:
    BudgetLedger(double total, std::uint64_t high_shots);

    [[nodiscard]] bool can_afford(std::uint64_t shots) const;
    /// Throws Error when the charge would exceed the total.
    void charge(std::uint64_t shots);

    [[nodiscard]] double total() const;
    [[nodiscard]] double spent() const;
    [[nodiscard]] double cost(std::uint64_t shots) const;
    [[nodiscard]] std::uint64_t spent_shots() const noexcept { return spent_; }
    [[nodiscard]] std::uint64_t total_shots() const noexcept { return total_; }

  private:
    std::uint64_t high_shots_;
    std::uint64_t total_;
    std::uint64_t spent_ = 0;
};

/// One objective query.
struct RunRow {
    std::size_t iteration = 0;
    std::uint64_t shots = 0;
    double cumulative_cost = 0.0;
    Eigen::VectorXd theta;
    double observed = 0.0;
    /// Best high-shot observation so far; NaN before the first one.
    double best_observed = std::numeric_limits<double>::quiet_NaN();
    /// Incumbent used by EI acquisitions; NaN otherwise.
    double incumbent = std::numeric_limits<double>::quiet_NaN();
    /// Noise-free energy at theta, filled in by validation; NaN otherwise.
    double exact = std::numeric_limits<double>::quiet_NaN();
    /// Noise-free energy of the best-observed theta so far, filled in by
    /// validation; NaN otherwise.
    double trace_exact = std::numeric_limits<double>::quiet_NaN();
};

struct RunRecord {
    std::string arm;
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    std::vector<RunRow> rows;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;

    /// Final best high-shot observation (NaN if there is none).
    [[nodiscard]] double final_best() const;
};

struct BoConfig {
    double budget = 150.0;
    double init_budget = 30.0;
    std::uint64_t high_shots = 100000;
    std::uint64_t low_shots = 1000;
    KernelKind kernel = KernelKind::Periodic;
    AcquisitionSpec acquisition;
    DesignKind init_design = DesignKind::Sobol;
    std::size_t max_low_shot = 5000;
    SvgpOptions svgp;
    GpFitOptions gp = default_gp_options();
    AcquisitionOptimizerOptions acq_optimizer;

    /// Refit every iteration from the previous optimum plus one fresh start.
    static GpFitOptions default_gp_options() {
        GpFitOptions o;
        o.restarts = 1;
        return o;
    }
    /// Throws ConfigError on inconsistent budgets or shot counts.
    void validate() const;
};

/**
 * @brief BOPT: low-shot initialization, sparse-GP prior, GP-TP loop.
 *
 * Spends init_budget on m = init_budget * S / s low-shot queries over a
 * space-filling design, trains the sparse GP prior on them, then queries
 * high-shot points chosen by the acquisition while a full unit remains.
 * With init_budget = 0 the prior is zero and the run is standard BO.
 */
RunRecord bopt_run(const Objective &objective, const BoConfig &config, Rng &rng);

/// Zero-mean BO: init_budget high-shot design points, then the same loop.
RunRecord standard_bo_run(const Objective &objective, const BoConfig &config, Rng &rng);

/// Powell on wrapped coordinates with one high-shot query per evaluation.
RunRecord powell_run(const Objective &objective, const Eigen::VectorXd &theta0,
                     std::size_t max_evaluations, std::uint64_t shots, Rng &rng,
                     const PowellOptions &options = {});

/**
 * @brief Run one arm for one seed with the arm's kernel and acquisition.
 *
 * Powell starts from a uniformly random point and uses floor(budget)
 * evaluations.
 */
RunRecord run_arm(Arm arm, const Objective &objective, const BoConfig &config,
                  std::uint64_t seed, const PowellOptions &powell = {});

} // namespace bopt
