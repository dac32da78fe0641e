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
#include "bopt/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "bopt/error.hpp"

namespace bopt {

ShotMode parse_shot_mode(std::string_view text) {
    if (text == "exact") {
        return ShotMode::Exact;
    }
    if (text == "sampled") {
        return ShotMode::Sampled;
    }
    if (text == "gaussian") {
        return ShotMode::Gaussian;
    }
    throw ConfigError("unknown shot mode '" + std::string(text) + "'");
}

std::string to_string(ShotMode mode) {
    switch (mode) {
    case ShotMode::Exact:
        return "exact";
    case ShotMode::Sampled:
        return "sampled";
    case ShotMode::Gaussian:
        return "gaussian";
    }
    return "exact";
}

void NoiseModel::validate() const {
    if (!(sigma_s >= 0.0) || !std::isfinite(sigma_s)) {
        throw ConfigError("sigma_s must be finite and non-negative");
    }
    if (!(hw_sigma >= 0.0) || !std::isfinite(hw_sigma)) {
        throw ConfigError("hw_sigma must be finite and non-negative");
    }
    if (!(hw_bias_slope < 1.0) || !std::isfinite(hw_bias_slope)) {
        throw ConfigError("hw_bias_slope must be finite and below 1");
    }
    if (!std::isfinite(hw_bias_zero)) {
        throw ConfigError("hw_bias_zero must be finite");
    }
}

double hardware_bias(const NoiseModel &noise, double energy) {
    return -noise.hw_bias_slope * (energy - noise.hw_bias_zero);
}

double sample_pauli_term(const StateVector &state, const PauliTerm &term,
                         std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw ConfigError("shot count must be at least 1");
    }
    const PauliString &p = term.string;
    if (p.num_qubits() != state.num_qubits()) {
        throw DimensionError("Pauli string length does not match the register");
    }
    if (p.is_identity()) {
        return term.coefficient;
    }
    StateVector rotated = state;
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
        if (p.op(q) == Pauli::X) {
            rotated.apply_h(q);
        } else if (p.op(q) == Pauli::Y) {
            rotated.apply_sdg(q);
            rotated.apply_h(q);
        }
    }
    const std::vector<double> probs = rotated.probabilities();
    const std::uint64_t support = p.support_mask();

    // Multinomial histogram of `shots` bitstrings via sequential binomials.
    std::int64_t remaining = static_cast<std::int64_t>(shots);
    double mass_left = 1.0;
    std::int64_t signed_sum = 0;
    for (std::size_t b = 0; b < probs.size() && remaining > 0; ++b) {
        std::int64_t count = 0;
        if (b + 1 == probs.size()) {
            count = remaining;
        } else if (probs[b] > 0.0) {
            const double q = std::clamp(probs[b] / mass_left, 0.0, 1.0);
            std::binomial_distribution<std::int64_t> draw(remaining, q);
            count = draw(rng);
        }
        mass_left = std::max(mass_left - probs[b], 1e-300);
        remaining -= count;
        const bool odd = (std::popcount(static_cast<std::uint64_t>(b) & support) & 1) != 0;
        signed_sum += odd ? -count : count;
    }
    return term.coefficient * static_cast<double>(signed_sum) /
           static_cast<double>(shots);
}

namespace {

double add_hardware(double y, const NoiseModel &noise, Rng &rng) {
    if (!noise.hardware) {
        return y;
    }
    y += hardware_bias(noise, y);
    if (noise.hw_sigma > 0.0) {
        y += noise.hw_sigma * rng.normal();
    }
    return y;
}

} // namespace

double corrupt_exact_value(double exact, std::uint64_t shots,
                           const NoiseModel &noise, Rng &rng) {
    double y = exact;
    switch (noise.shot_mode) {
    case ShotMode::Exact:
        break;
    case ShotMode::Gaussian:
        if (shots == 0) {
            throw ConfigError("shot count must be at least 1");
        }
        y += noise.sigma_s / std::sqrt(static_cast<double>(shots)) * rng.normal();
        break;
    case ShotMode::Sampled:
        throw ConfigError("sampled shot mode needs a circuit, not a scalar");
    }
    return add_hardware(y, noise, rng);
}

double evaluate_energy(const Circuit &circuit, const Eigen::VectorXd &theta,
                       const Hamiltonian &h, std::uint64_t shots,
                       const NoiseModel &noise, Rng &rng) {
    if (circuit.num_qubits() != h.num_qubits()) {
        throw DimensionError("circuit and Hamiltonian qubit counts differ");
    }
    const StateVector psi = run_circuit(circuit, theta);
    if (noise.shot_mode != ShotMode::Sampled) {
        return corrupt_exact_value(psi.expectation(h), shots, noise, rng);
    }
    if (shots == 0) {
        throw ConfigError("shot count must be at least 1");
    }
    double y = 0.0;
    for (const PauliTerm &t : h.terms()) {
        y += sample_pauli_term(psi, t, shots, rng);
    }
    return add_hardware(y, noise, rng);
}

} // namespace bopt
