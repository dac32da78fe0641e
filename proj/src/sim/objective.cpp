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
#include "bopt/objective.hpp"

#include "bopt/error.hpp"
#include "bopt/qmc.hpp"
#include "bopt/statevector.hpp"

namespace bopt {

VqeObjective::VqeObjective(Circuit circuit, Hamiltonian hamiltonian,
                           NoiseModel noise)
    : circuit_(std::move(circuit)), hamiltonian_(std::move(hamiltonian)),
      noise_(noise) {
    if (circuit_.num_qubits() != hamiltonian_.num_qubits()) {
        throw DimensionError("circuit and Hamiltonian qubit counts differ");
    }
    noise_.validate();
}

double VqeObjective::evaluate(const Eigen::VectorXd &theta, std::uint64_t shots,
                              Rng &rng) const {
    return evaluate_energy(circuit_, wrap_angles(theta), hamiltonian_, shots,
                           noise_, rng);
}

double VqeObjective::exact(const Eigen::VectorXd &theta) const {
    return expectation_exact(circuit_, wrap_angles(theta), hamiltonian_);
}

FunctionObjective::FunctionObjective(std::size_t dimension, Fn fn,
                                     NoiseModel noise)
    : dimension_(dimension), fn_(std::move(fn)), noise_(noise) {
    if (noise_.shot_mode == ShotMode::Sampled) {
        throw ConfigError("function objectives support exact or gaussian shots");
    }
    noise_.validate();
}

double FunctionObjective::evaluate(const Eigen::VectorXd &theta,
                                   std::uint64_t shots, Rng &rng) const {
    return corrupt_exact_value(exact(theta), shots, noise_, rng);
}

double FunctionObjective::exact(const Eigen::VectorXd &theta) const {
    if (static_cast<std::size_t>(theta.size()) != dimension_) {
        throw DimensionError("objective dimension mismatch");
    }
    return fn_(theta);
}

} // namespace bopt
