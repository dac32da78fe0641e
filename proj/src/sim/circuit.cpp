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
#include "bopt/circuit.hpp"

#include <algorithm>
#include <charconv>

#include "bopt/error.hpp"

namespace bopt {

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw DimensionError("circuit needs at least one qubit");
    }
}

Circuit &Circuit::add(Gate gate) {
    const int n = static_cast<int>(num_qubits_);
    const auto check = [n](int q) {
        if (q < 0 || q >= n) {
            throw DimensionError("qubit index " + std::to_string(q) +
                                 " out of range for " + std::to_string(n) +
                                 " qubits");
        }
    };
    check(gate.q0);
    const bool two_qubit = gate.kind == GateKind::CNOT || gate.kind == GateKind::CZ;
    if (two_qubit) {
        check(gate.q1);
        if (gate.q0 == gate.q1) {
            throw DimensionError("two-qubit gate on a single qubit");
        }
    } else {
        gate.q1 = -1;
    }
    if (gate.kind == GateKind::RY) {
        if (gate.param != static_cast<int>(param_count_)) {
            throw DimensionError("RY parameter slots must be appended in order");
        }
        ++param_count_;
    } else {
        gate.param = -1;
    }
    gates_.push_back(gate);
    return *this;
}

Circuit &Circuit::ry(int qubit, int param) {
    return add({GateKind::RY, qubit, -1, param});
}
Circuit &Circuit::h(int qubit) { return add({GateKind::H, qubit}); }
Circuit &Circuit::x(int qubit) { return add({GateKind::X, qubit}); }
Circuit &Circuit::cnot(int control, int target) {
    return add({GateKind::CNOT, control, target});
}
Circuit &Circuit::cz(int a, int b) { return add({GateKind::CZ, a, b}); }

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; }));
}

Circuit build_hea(std::size_t num_qubits, std::size_t depth,
                  std::string_view hf_bits) {
    if (depth < 1) {
        throw DimensionError("HEA depth must be at least 1");
    }
    if (hf_bits.size() != num_qubits) {
        throw DimensionError("Hartree-Fock bitstring has length " +
                             std::to_string(hf_bits.size()) + ", expected " +
                             std::to_string(num_qubits));
    }
    Circuit c(num_qubits);
    const int n = static_cast<int>(num_qubits);
    for (int q = 0; q < n; ++q) {
        const char b = hf_bits[static_cast<std::size_t>(q)];
        if (b == '1') {
            c.x(q);
        } else if (b != '0') {
            throw DimensionError("Hartree-Fock bitstring must contain only 0/1");
        }
    }
    int slot = 0;
    for (std::size_t layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            c.ry(q, slot++);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                c.cnot(i, j);
            }
        }
    }
    return c;
}

Circuit build_real_amplitudes(std::size_t num_qubits) {
    Circuit c(num_qubits);
    const int n = static_cast<int>(num_qubits);
    for (int q = 0; q < n; ++q) {
        c.h(q);
    }
    int slot = 0;
    for (int q = 0; q < n; ++q) {
        c.ry(q, slot++);
    }
    for (int q = 0; q + 1 < n; ++q) {
        c.cnot(q, q + 1);
    }
    for (int q = 0; q < n; ++q) {
        c.ry(q, slot++);
    }
    return c;
}

namespace {

std::size_t parse_size(std::string_view text, const char *what) {
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

AnsatzSpec AnsatzSpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) {
            break;
        }
        start = colon + 1;
    }
    AnsatzSpec spec;
    if (parts[0] == "hea") {
        if (parts.size() != 3) {
            throw ConfigError("HEA ansatz spec must be 'hea:<depth>:<bits>'");
        }
        spec.kind = Kind::HEA;
        spec.depth = parse_size(parts[1], "ansatz depth");
        spec.hf_bits = std::string(parts[2]);
    } else if (parts[0] == "real_amplitudes") {
        if (parts.size() > 2) {
            throw ConfigError("real-amplitudes spec must be 'real_amplitudes[:<qubits>]'");
        }
        spec.kind = Kind::RealAmplitudes;
        spec.depth = 1;
        if (parts.size() == 2) {
            spec.hf_bits = std::string(parse_size(parts[1], "qubit count"), '0');
        }
    } else {
        throw ConfigError("unknown ansatz '" + std::string(parts[0]) + "'");
    }
    return spec;
}

std::string AnsatzSpec::str() const {
    if (kind == Kind::HEA) {
        return "hea:" + std::to_string(depth) + ":" + hf_bits;
    }
    return hf_bits.empty() ? "real_amplitudes"
                           : "real_amplitudes:" + std::to_string(hf_bits.size());
}

Circuit AnsatzSpec::build(std::size_t num_qubits) const {
    if (kind == Kind::HEA) {
        return build_hea(num_qubits, depth, hf_bits);
    }
    if (!hf_bits.empty() && hf_bits.size() != num_qubits) {
        throw DimensionError("ansatz qubit count does not match the Hamiltonian");
    }
    return build_real_amplitudes(num_qubits);
}

} // namespace bopt
