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
 * Experiment configuration and the multi-seed runner.
 *
 * Configs are INI files:
 *
 *     [problem]  name, hamiltonian, ansatz
 *     [run]      arms, seeds, output, workers
 *     [budget]   total, init, high_shots, low_shots, max_low_shot
 *     [bo]       beta, mc_samples, init_design, raw_candidates, starts,
 *                observed_starts, gp_restarts
 *     [svgp]     inducing, batch_size, steps, learning_rate
 *     [noise]    shot_mode, sigma_s, hardware, hw_bias_slope, hw_bias_zero,
 *                hw_sigma
 *     [powell]   initial_step, max_line_evaluations, line_tolerance
 *
 * Relative paths are resolved against the config file's directory.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bopt/bopt.hpp"
#include "bopt/circuit.hpp"
#include "bopt/noise.hpp"
#include "bopt/powell.hpp"

namespace bopt {

struct ExperimentConfig {
    std::string name = "h2";
    std::filesystem::path hamiltonian_path = "data/h2_sto3g_jw.ham";
    AnsatzSpec ansatz = AnsatzSpec::parse("hea:4:1100");
    std::vector<Arm> arms{Arm::Bopt, Arm::LcbP, Arm::Powell};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::filesystem::path output_dir = "results";
    std::size_t workers = 1;
    BoConfig bo;
    NoiseModel noise;
    PowellOptions powell;

    /// Throws ConfigError on empty arm or seed lists, duplicate seeds,
    /// missing files or invalid run settings.
    void validate() const;
};

/// Parse INI text. Unknown sections or keys are errors.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);
/// INI text that parse_config() maps back to `config`.
std::string format_config(const ExperimentConfig &config);

/// "1-10", "1,3,5" or a mix such as "1-3,7".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// `<output>/<arm>/seed<k>.csv`.
std::filesystem::path record_path(const std::filesystem::path &output_dir, Arm arm,
                                  std::uint64_t seed);

struct JobOutcome {
    Arm arm = Arm::Bopt;
    std::uint64_t seed = 0;
    std::filesystem::path path;
    bool ok = false;
    std::string error;
    double final_best = 0.0;
    double wall_seconds = 0.0;
};

struct ExperimentSummary {
    std::vector<JobOutcome> jobs; ///< arm-major, then seed order
    double wall_seconds = 0.0;
    [[nodiscard]] std::size_t failures() const;
};

/**
 * @brief Run every (arm, seed) job and write one CSV per job.
 *
 * Jobs run on up to `workers` threads; each writes only its own file and a
 * failure is recorded without affecting the others. `manifest.json` is
 * written once at the end. Seeds are shifted by `seed_offset`.
 */
ExperimentSummary run_experiment(const ExperimentConfig &config, std::uint64_t seed_offset = 0);

/// Objective for the config's Hamiltonian, ansatz and noise model.
VqeObjective make_objective(const ExperimentConfig &config);

} // namespace bopt
