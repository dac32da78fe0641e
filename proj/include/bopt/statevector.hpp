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
 * Dense state-vector simulation of parameterized circuits.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bopt/circuit.hpp"
#include "bopt/pauli.hpp"

namespace bopt {

/// Largest register the simulator will allocate.
inline constexpr std::size_t kStateVectorQubitLimit = 24;

/**
 * @brief 2^n complex amplitudes, qubit 0 as the most significant bit.
 */
class StateVector {
  public:
    using Complex = std::complex<double>;

    /// |0...0>
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm_squared() const;

    /// RY(a) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
    void apply_ry(std::size_t qubit, double angle);
    void apply_h(std::size_t qubit);
    void apply_x(std::size_t qubit);
    /// S^dagger = diag(1, -i)
    void apply_sdg(std::size_t qubit);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_cz(std::size_t a, std::size_t b);
    void apply(const Gate &gate, std::span<const double> params);

    /// <psi|P|psi>, applied string-by-string without building a matrix.
    [[nodiscard]] double expectation(const PauliString &p) const;
    [[nodiscard]] double expectation(const Hamiltonian &h) const;

    /// |amplitude|^2 for every basis state.
    [[nodiscard]] std::vector<double> probabilities() const;

    [[nodiscard]] Eigen::VectorXcd to_eigen() const;

  private:
    [[nodiscard]] std::uint64_t bit(std::size_t qubit) const;

    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

/// U(theta)|0...0>. Throws DimensionError on a parameter-count mismatch.
StateVector run_circuit(const Circuit &circuit, std::span<const double> theta);
StateVector run_circuit(const Circuit &circuit, const Eigen::VectorXd &theta);

/// f(theta): exact energy of the prepared state.
double expectation_exact(const Circuit &circuit, const Eigen::VectorXd &theta,
                         const Hamiltonian &h);

} // namespace bopt
