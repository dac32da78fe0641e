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
#include "bopt/statevector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bopt/error.hpp"

namespace bopt {

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kStateVectorQubitLimit) {
        throw SizeError("state vector supports 1.." +
                        std::to_string(kStateVectorQubitLimit) + " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits == 0 || num_qubits > kStateVectorQubitLimit) {
        throw SizeError("state vector supports 1.." +
                        std::to_string(kStateVectorQubitLimit) + " qubits");
    }
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw DimensionError("amplitude count does not match 2^n");
    }
}

std::uint64_t StateVector::bit(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw DimensionError("qubit index out of range");
    }
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Complex &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void StateVector::apply_ry(std::size_t qubit, double angle) {
    const std::uint64_t m = bit(qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) == 0) {
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i | m];
            amps_[i] = c * a0 - s * a1;
            amps_[i | m] = s * a0 + c * a1;
        }
    }
}

void StateVector::apply_h(std::size_t qubit) {
    const std::uint64_t m = bit(qubit);
    const double r = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) == 0) {
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i | m];
            amps_[i] = r * (a0 + a1);
            amps_[i | m] = r * (a0 - a1);
        }
    }
}

void StateVector::apply_x(std::size_t qubit) {
    const std::uint64_t m = bit(qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) == 0) {
            std::swap(amps_[i], amps_[i | m]);
        }
    }
}

void StateVector::apply_sdg(std::size_t qubit) {
    const std::uint64_t m = bit(qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) != 0) {
            amps_[i] *= Complex{0.0, -1.0};
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    const std::uint64_t mc = bit(control);
    const std::uint64_t mt = bit(target);
    if (mc == mt) {
        throw DimensionError("CNOT control equals target");
    }
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & mc) != 0 && (i & mt) == 0) {
            std::swap(amps_[i], amps_[i | mt]);
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    const std::uint64_t both = bit(a) | bit(b);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & both) == both) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply(const Gate &gate, std::span<const double> params) {
    const auto q0 = static_cast<std::size_t>(gate.q0);
    switch (gate.kind) {
    case GateKind::RY:
        apply_ry(q0, params[static_cast<std::size_t>(gate.param)]);
        break;
    case GateKind::H:
        apply_h(q0);
        break;
    case GateKind::X:
        apply_x(q0);
        break;
    case GateKind::CNOT:
        apply_cnot(q0, static_cast<std::size_t>(gate.q1));
        break;
    case GateKind::CZ:
        apply_cz(q0, static_cast<std::size_t>(gate.q1));
        break;
    }
}

double StateVector::expectation(const PauliString &p) const {
    if (p.num_qubits() != num_qubits_) {
        throw DimensionError("Pauli string length does not match the register");
    }
    const std::uint64_t flip = p.flip_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        acc += std::conj(amps_[b ^ flip]) * p.phase(b) * amps_[b];
    }
    return acc.real();
}

double StateVector::expectation(const Hamiltonian &h) const {
    if (h.num_qubits() != num_qubits_) {
        throw DimensionError("Hamiltonian qubit count " +
                             std::to_string(h.num_qubits()) +
                             " does not match the register (" +
                             std::to_string(num_qubits_) + ")");
    }
    double e = 0.0;
    for (const PauliTerm &t : h.terms()) {
        e += t.string.is_identity() ? t.coefficient
                                    : t.coefficient * expectation(t.string);
    }
    return e;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

Eigen::VectorXcd StateVector::to_eigen() const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps_.size()));
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amps_[i];
    }
    return v;
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.param_count()) {
        throw DimensionError("circuit takes " + std::to_string(circuit.param_count()) +
                             " parameters, got " + std::to_string(theta.size()));
    }
    StateVector psi(circuit.num_qubits());
    for (const Gate &g : circuit.gates()) {
        psi.apply(g, theta);
    }
    return psi;
}

StateVector run_circuit(const Circuit &circuit, const Eigen::VectorXd &theta) {
    return run_circuit(circuit, std::span<const double>(theta.data(),
                                                        static_cast<std::size_t>(theta.size())));
}

double expectation_exact(const Circuit &circuit, const Eigen::VectorXd &theta,
                         const Hamiltonian &h) {
    if (circuit.num_qubits() != h.num_qubits()) {
        throw DimensionError("circuit and Hamiltonian qubit counts differ");
    }
    return run_circuit(circuit, theta).expectation(h);
}

} // namespace bopt
