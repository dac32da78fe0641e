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
 * Counter-based, splittable random number generator (Philox4x32-10).
 */
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace bopt {

/**
 * @brief Philox4x32-10 stream keyed by (seed, stream id).
 *
 * Every stochastic routine takes an explicit `Rng &`. Independent consumers
 * obtain their own substream through split(), so results never depend on the
 * order in which siblings draw numbers. Satisfies UniformRandomBitGenerator.
 */
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal draw (Box-Muller, one variate per call).
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    /// Child stream; deterministic in (seed, stream, id) only.
    [[nodiscard]] Rng split(std::uint64_t id) const;
    /// Child stream keyed by a label, e.g. split("svgp").
    [[nodiscard]] Rng split(std::string_view label) const;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_{0};
    std::array<std::uint32_t, 4> block_{};
    unsigned used_{4};
};

/// SplitMix64 finalizer; used to derive stream ids.
std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace bopt
