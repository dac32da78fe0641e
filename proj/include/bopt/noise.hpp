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
 * Shot-sampled measurement and the synthetic hardware noise model.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "bopt/circuit.hpp"
#include "bopt/pauli.hpp"
#include "bopt/rng.hpp"
#include "bopt/statevector.hpp"

namespace bopt {

enum class ShotMode {
    Exact,    ///< infinite-shot limit
    Sampled,  ///< draw bitstrings from the state
    Gaussian, ///< exact value plus N(0, (sigma_s / sqrt(S))^2)
};

ShotMode parse_shot_mode(std::string_view text);
std::string to_string(ShotMode mode);

/**
 * @brief Observation model y = f + shot noise + hardware corruption.
 *
 * The hardware part is an affine bias pulling observations toward
 * `hw_bias_zero`, plus homoscedastic Gaussian spread:
 *
 *     y <- y - hw_bias_slope * (y - hw_bias_zero) + N(0, hw_sigma^2)
 *
 * With a positive slope, energies below the zero-bias point are reported too
 * high. The map is increasing in y while hw_bias_slope < 1, so the argmin is
 * preserved.
 */
struct NoiseModel {
    ShotMode shot_mode = ShotMode::Exact;
    double sigma_s = 1.0;
    bool hardware = false;
    double hw_bias_slope = 0.15;
    double hw_bias_zero = -0.2;
    double hw_sigma = 0.01;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;
};

/// Deterministic part of the hardware corruption.
double hardware_bias(const NoiseModel &noise, double energy);

/**
 * Estimate coefficient * <P> from `shots` measurements of `state`.
 *
 * Each qubit is rotated into the measurement basis (H for X, S^dagger then H
 * for Y), `shots` bitstrings are drawn from |amplitude|^2 and every shot
 * contributes (-1)^(parity on the string's support). Identity terms return
 * the coefficient.
 */
double sample_pauli_term(const StateVector &state, const PauliTerm &term,
                         std::uint64_t shots, Rng &rng);

/// Observed energy y_theta under `noise` using `shots` shots.
double evaluate_energy(const Circuit &circuit, const Eigen::VectorXd &theta,
                       const Hamiltonian &h, std::uint64_t shots,
                       const NoiseModel &noise, Rng &rng);

/// Apply the shot-mode and hardware layers to an exact value. Sampled mode
/// is not representable here and throws ConfigError.
double corrupt_exact_value(double exact, std::uint64_t shots,
                           const NoiseModel &noise, Rng &rng);

} // namespace bopt
