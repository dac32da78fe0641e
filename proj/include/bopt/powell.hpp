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
 * Powell's conjugate-direction method with capped line searches.
 */
#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace bopt {

struct PowellOptions {
    /// Initial trial step of each line search.
    double initial_step = 1.0;
    /// Hard cap on objective calls per line search, bracketing included.
    std::size_t max_line_evaluations = 20;
    /// Golden-section stops when the bracket is narrower than this.
    double line_tolerance = 1e-4;
    /// A full cycle improving less than this (relative) ends the run.
    double value_tolerance = 1e-10;
};

struct PowellResult {
    Eigen::VectorXd x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/**
 * @brief Minimize `fn` from `x0` with at most `max_evaluations` calls.
 *
 * Directions start as the coordinate axes; after each cycle the direction of
 * largest decrease is replaced by the net displacement when the standard
 * Powell test allows it. Each line search brackets a minimum by golden-ratio
 * expansion and then narrows it by golden-section search.
 */
PowellResult powell_minimize(const std::function<double(const Eigen::VectorXd &)> &fn,
                             const Eigen::VectorXd &x0, std::size_t max_evaluations,
                             const PowellOptions &options = {});

} // namespace bopt
