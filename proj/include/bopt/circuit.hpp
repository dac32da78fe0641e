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
 * Parameterized circuit descriptions and the two ansatz families.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bopt {

enum class GateKind { RY, H, X, CNOT, CZ };

/**
 * @brief One gate. `param` indexes the parameter vector for RY, else -1.
 *
 * For CNOT, `q0` is the control and `q1` the target.
 */
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    int param = -1;

    friend bool operator==(const Gate &, const Gate &) = default;
};

class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits);

    /// Validates indices; parameter slots must be appended in order.
    Circuit &add(Gate gate);
    Circuit &ry(int qubit, int param);
    Circuit &h(int qubit);
    Circuit &x(int qubit);
    Circuit &cnot(int control, int target);
    Circuit &cz(int a, int b);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t param_count() const noexcept { return param_count_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t count(GateKind kind) const;

  private:
    std::size_t num_qubits_;
    std::size_t param_count_{0};
    std::vector<Gate> gates_;
};

/**
 * Hardware-efficient ansatz: X on every '1' of `hf_bits` (Hartree-Fock
 * reference), then `depth` layers of one RY per qubit followed by CNOTs on
 * every qubit pair (i < j, lexicographic). Parameters are layer-major, then
 * qubit-ascending, so param_count = num_qubits * depth.
 */
Circuit build_hea(std::size_t num_qubits, std::size_t depth,
                  std::string_view hf_bits);

/**
 * Real-amplitudes ansatz on `num_qubits` qubits: H on all qubits, an RY
 * layer, a linear CNOT chain, and a second RY layer.
 */
Circuit build_real_amplitudes(std::size_t num_qubits = 4);

/// Ansatz description used by configs and the CLI.
struct AnsatzSpec {
    enum class Kind { HEA, RealAmplitudes } kind = Kind::HEA;
    std::size_t depth = 4;
    std::string hf_bits; // HEA only

    /// Accepts "hea:<depth>:<bits>" or "real_amplitudes[:<qubits>]".
    static AnsatzSpec parse(std::string_view text);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] Circuit build(std::size_t num_qubits) const;
};

} // namespace bopt
