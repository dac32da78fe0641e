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
#include "bopt/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bopt/error.hpp"

namespace bopt {

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
    const std::size_t n = ops_.size();
    if (n > 63) {
        throw SizeError("Pauli strings are limited to 63 qubits");
    }
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        switch (ops_[q]) {
        case Pauli::I:
            break;
        case Pauli::X:
            flip_mask_ |= bit;
            break;
        case Pauli::Y:
            flip_mask_ |= bit;
            phase_mask_ |= bit;
            ++y_count_;
            break;
        case Pauli::Z:
            phase_mask_ |= bit;
            break;
        }
    }
    support_mask_ = flip_mask_ | phase_mask_;
    y_count_ %= 4;
}

PauliString PauliString::from_string(std::string_view text) {
    std::vector<Pauli> ops;
    ops.reserve(text.size());
    for (const char c : text) {
        switch (c) {
        case 'I':
            ops.push_back(Pauli::I);
            break;
        case 'X':
            ops.push_back(Pauli::X);
            break;
        case 'Y':
            ops.push_back(Pauli::Y);
            break;
        case 'Z':
            ops.push_back(Pauli::Z);
            break;
        default:
            throw DimensionError(std::string("invalid Pauli label '") + c + "'");
        }
    }
    return PauliString(std::move(ops));
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(ops_.size());
    for (const Pauli p : ops_) {
        out.push_back("IXYZ"[static_cast<int>(p)]);
    }
    return out;
}

std::complex<double> PauliString::phase(std::uint64_t basis) const {
    // Y = iXZ: Z acts first, contributing (-1)^bit, then the i^y factor.
    static constexpr std::complex<double> kIPow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const bool negative = (std::popcount(basis & phase_mask_) & 1) != 0;
    const std::complex<double> p = kIPow[y_count_];
    return negative ? -p : p;
}

Hamiltonian::Hamiltonian(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw DimensionError("Hamiltonian needs at least one qubit");
    }
    if (terms.empty()) {
        throw DimensionError("Hamiltonian has no terms");
    }
    for (PauliTerm &t : terms) {
        if (t.string.num_qubits() != num_qubits) {
            throw DimensionError("term " + t.string.str() + " has length " +
                                 std::to_string(t.string.num_qubits()) +
                                 ", expected " + std::to_string(num_qubits));
        }
        if (!std::isfinite(t.coefficient)) {
            throw DimensionError("non-finite coefficient for " + t.string.str());
        }
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const PauliTerm &u) { return u.string == t.string; });
        if (it != terms_.end()) {
            it->coefficient += t.coefficient;
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

double Hamiltonian::constant_offset() const noexcept {
    double c = 0.0;
    for (const PauliTerm &t : terms_) {
        if (t.string.is_identity()) {
            c += t.coefficient;
        }
    }
    return c;
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_blank(line[i])) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !is_blank(line[j])) {
            ++j;
        }
        if (j > i) {
            fields.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return fields;
}

} // namespace

Hamiltonian parse_hamiltonian(std::istream &in) {
    std::vector<PauliTerm> terms;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        const auto fields = split_fields(view);
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 2) {
            throw ParseError(line_no, "expected '<coefficient> <pauli_string>'");
        }
        double coeff = 0.0;
        const auto [end, ec] = std::from_chars(
            fields[0].data(), fields[0].data() + fields[0].size(), coeff);
        if (ec != std::errc() || end != fields[0].data() + fields[0].size() ||
            !std::isfinite(coeff)) {
            throw ParseError(line_no, "malformed coefficient '" +
                                          std::string(fields[0]) + "'");
        }
        PauliString ps;
        try {
            ps = PauliString::from_string(fields[1]);
        } catch (const Error &e) {
            throw ParseError(line_no, e.what());
        }
        if (width == 0) {
            width = ps.num_qubits();
        } else if (ps.num_qubits() != width) {
            throw ParseError(line_no, "Pauli string length " +
                                          std::to_string(ps.num_qubits()) +
                                          " differs from " + std::to_string(width));
        }
        terms.push_back({coeff, std::move(ps)});
    }
    if (terms.empty()) {
        throw ParseError(line_no, "no Hamiltonian terms found");
    }
    return Hamiltonian(width, std::move(terms));
}

Hamiltonian parse_hamiltonian_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hamiltonian(in);
}

Hamiltonian load_hamiltonian_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open Hamiltonian file " + path);
    }
    return parse_hamiltonian(in);
}

std::string serialize_hamiltonian(const Hamiltonian &h) {
    std::string out;
    char buf[64];
    for (const PauliTerm &t : h.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g ", t.coefficient);
        out += buf;
        out += t.string.str();
        out += '\n';
    }
    return out;
}

Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian &h) {
    const std::size_t n = h.num_qubits();
    if (n > kDenseQubitLimit) {
        throw SizeError("dense Hamiltonian limited to " +
                        std::to_string(kDenseQubitLimit) + " qubits, got " +
                        std::to_string(n));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const PauliTerm &t : h.terms()) {
        const std::uint64_t flip = t.string.flip_mask();
        for (std::uint64_t b = 0; b < dim; ++b) {
            m(static_cast<Eigen::Index>(b ^ flip), static_cast<Eigen::Index>(b)) +=
                t.coefficient * t.string.phase(b);
        }
    }
    return m;
}

double ground_energy_exact(const Hamiltonian &h) {
    const Eigen::MatrixXcd m = hamiltonian_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("eigensolver failed");
    }
    return solver.eigenvalues().minCoeff();
}

} // namespace bopt
