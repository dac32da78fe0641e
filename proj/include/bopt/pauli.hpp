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
 * Pauli-string Hamiltonians: parsing, dense construction and exact ground
 * energies.
 *
 * Convention used throughout the project: qubit 0 is the leftmost character
 * of a Pauli string, the leftmost tensor factor, and the most significant bit
 * of a basis-state index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bopt {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/**
 * @brief Tensor product of single-qubit Pauli operators.
 *
 * Besides the labels, the bit masks used by the simulator are cached:
 * `flip_mask` has a bit for every X/Y factor and `phase_mask` for every Z/Y.
 */
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> ops);
    /// Throws DimensionError on a character outside "IXYZ".
    static PauliString from_string(std::string_view text);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return ops_.size(); }
    [[nodiscard]] const std::vector<Pauli> &ops() const noexcept { return ops_; }
    [[nodiscard]] Pauli op(std::size_t qubit) const { return ops_.at(qubit); }
    [[nodiscard]] bool is_identity() const noexcept { return support_mask_ == 0; }
    [[nodiscard]] std::string str() const;

    [[nodiscard]] std::uint64_t flip_mask() const noexcept { return flip_mask_; }
    [[nodiscard]] std::uint64_t phase_mask() const noexcept { return phase_mask_; }
    [[nodiscard]] std::uint64_t support_mask() const noexcept {
        return support_mask_;
    }
    /// Number of Y factors modulo 4; the string carries a factor i^y_count.
    [[nodiscard]] unsigned y_count() const noexcept { return y_count_; }

    /// Sign and phase picked up when the string acts on basis state |b>:
    /// P|b> = phase(b) |b ^ flip_mask>.
    [[nodiscard]] std::complex<double> phase(std::uint64_t basis) const;

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.ops_ == b.ops_;
    }

  private:
    std::vector<Pauli> ops_;
    std::uint64_t flip_mask_{0};
    std::uint64_t phase_mask_{0};
    std::uint64_t support_mask_{0};
    unsigned y_count_{0};
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/**
 * @brief Weighted sum of Pauli strings on a fixed number of qubits.
 *
 * Terms are kept in first-appearance order with duplicates merged.
 */
class Hamiltonian {
  public:
    /// Validates lengths, finiteness and non-emptiness; merges duplicates.
    Hamiltonian(std::size_t num_qubits, std::vector<PauliTerm> terms);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    /// Sum of the identity-term coefficients.
    [[nodiscard]] double constant_offset() const noexcept;

    friend bool operator==(const Hamiltonian &, const Hamiltonian &) = default;

  private:
    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Largest qubit count accepted by the dense routines.
inline constexpr std::size_t kDenseQubitLimit = 12;

/**
 * Parse the line format "<coefficient> <pauli_string>".
 *
 * '#' starts a comment running to end of line; blank lines are ignored;
 * fields are separated by spaces or tabs. Throws ParseError naming the
 * offending line.
 */
Hamiltonian parse_hamiltonian(std::istream &in);
Hamiltonian parse_hamiltonian_string(std::string_view text);
Hamiltonian load_hamiltonian_file(const std::string &path);

/// Round-trippable text form (17 significant digits).
std::string serialize_hamiltonian(const Hamiltonian &h);

/// Dense 2^n x 2^n matrix. Throws SizeError above kDenseQubitLimit.
Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian &h);

/// Minimum eigenvalue of hamiltonian_matrix(h).
double ground_energy_exact(const Hamiltonian &h);

} // namespace bopt
