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
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "bopt/circuit.hpp"
#include "bopt/noise.hpp"
#include "bopt/pauli.hpp"
#include "bopt/rng.hpp"

namespace bopt {

/**
 * @brief Black-box handle the optimizers query.
 *
 * evaluate() returns a (possibly noisy) observation at the given shot count;
 * exact() returns the noise-free value used for validation. Implementations
 * are immutable and may be shared between threads.
 */
class Objective {
  public:
    virtual ~Objective() = default;
    [[nodiscard]] virtual std::size_t dimension() const = 0;
    virtual double evaluate(const Eigen::VectorXd &theta, std::uint64_t shots,
                            Rng &rng) const = 0;
    [[nodiscard]] virtual double exact(const Eigen::VectorXd &theta) const = 0;
};

/// VQE energy of an ansatz on a Hamiltonian.
class VqeObjective final : public Objective {
  public:
    VqeObjective(Circuit circuit, Hamiltonian hamiltonian, NoiseModel noise);

    [[nodiscard]] std::size_t dimension() const override {
        return circuit_.param_count();
    }
    double evaluate(const Eigen::VectorXd &theta, std::uint64_t shots,
                    Rng &rng) const override;
    [[nodiscard]] double exact(const Eigen::VectorXd &theta) const override;

    [[nodiscard]] const Circuit &circuit() const noexcept { return circuit_; }
    [[nodiscard]] const Hamiltonian &hamiltonian() const noexcept {
        return hamiltonian_;
    }
    [[nodiscard]] const NoiseModel &noise() const noexcept { return noise_; }

  private:
    Circuit circuit_;
    Hamiltonian hamiltonian_;
    NoiseModel noise_;
};

/// Synthetic objective: a plain function with the Gaussian/hardware layers.
class FunctionObjective final : public Objective {
  public:
    using Fn = std::function<double(const Eigen::VectorXd &)>;

    FunctionObjective(std::size_t dimension, Fn fn, NoiseModel noise = {});

    [[nodiscard]] std::size_t dimension() const override { return dimension_; }
    double evaluate(const Eigen::VectorXd &theta, std::uint64_t shots,
                    Rng &rng) const override;
    [[nodiscard]] double exact(const Eigen::VectorXd &theta) const override;

  private:
    std::size_t dimension_;
    Fn fn_;
    NoiseModel noise_;
};

} // namespace bopt
