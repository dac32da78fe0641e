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
#include <cmath>
#include <numbers>
#include <set>

#include "catch_amalgamated.hpp"

#include "bopt/qmc.hpp"
#include "bopt/rng.hpp"

using namespace bopt;

TEST_CASE("Philox4x32-10 known answer", "[rng]") {
    // Reference block for counter 0, key 0.
    Rng rng(0, 0);
    CHECK(rng() == 0xe169c58d6627e8d5ull);
    CHECK(rng() == 0x9b00dbd8bc57ac4cull);
}

TEST_CASE("rng is reproducible and streams differ", "[rng]") {
    Rng a(42, 3);
    Rng b(42, 3);
    Rng c(42, 4);
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        any_diff = any_diff || (x != c());
    }
    CHECK(any_diff);
    CHECK(Rng(1).split("svgp")() == Rng(1).split("svgp")());
    CHECK(Rng(1).split("svgp")() != Rng(1).split("bo")());
    CHECK(Rng(1).split(0)() != Rng(1).split(1)());
}

TEST_CASE("uniform and normal moments", "[rng]") {
    Rng rng(9);
    const int n = 200000;
    double su = 0.0, sn = 0.0, sn2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(std::abs(su / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sn / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sn2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("below stays in range and hits every value", "[rng]") {
    Rng rng(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(rng.below(0) == 0);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("space-filling designs stay in the box", "[qmc]") {
    Rng rng(1);
    const Eigen::MatrixXd s = space_filling_design(5, 64, 0.0, 2.0 * std::numbers::pi, rng);
    CHECK(s.rows() == 5);
    CHECK(s.cols() == 64);
    CHECK(s.minCoeff() >= 0.0);
    CHECK(s.maxCoeff() < 2.0 * std::numbers::pi);
    // Each 1-D projection of 64 Sobol points is a shifted grid of step
    // 1/64, so every half-period holds exactly 32 points.
    for (Eigen::Index i = 0; i < 5; ++i) {
        const auto lower = (s.row(i).array() < std::numbers::pi).count();
        CHECK(lower == 32);
    }
    Rng r2(1);
    CHECK(space_filling_design(5, 64, 0.0, 2.0 * std::numbers::pi, r2) == s);
    Rng r3(2);
    CHECK(space_filling_design(5, 64, 0.0, 2.0 * std::numbers::pi, r3) != s);
}

TEST_CASE("angle wrapping", "[qmc]") {
    const double tp = 2.0 * std::numbers::pi;
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(tp) == 0.0);
    CHECK(std::abs(wrap_angle(-1.0) - (tp - 1.0)) < 1e-15);
    CHECK(std::abs(wrap_angle(3.0 * tp + 0.5) - 0.5) < 1e-12);
    const double w = wrap_angle(-1e-18);
    CHECK(w >= 0.0);
    CHECK(w < tp);
}
