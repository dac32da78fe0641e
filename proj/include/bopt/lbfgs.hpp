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
 * Small projected L-BFGS minimizer used for hyperparameter fitting and
 * acquisition refinement.
 */
#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace bopt {

/// Returns f(x) and writes the gradient into `grad`.
using ValueGradFn =
    std::function<double(const Eigen::VectorXd &x, Eigen::VectorXd &grad)>;

struct LbfgsOptions {
    std::size_t max_iterations = 200;
    std::size_t history = 8;
    double gradient_tolerance = 1e-6; // on the projected gradient, inf-norm
    double step_tolerance = 1e-6;     // on the accepted step, inf-norm
    double value_tolerance = 1e-12;   // relative decrease
    std::size_t max_backtracks = 30;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/**
 * @brief Minimize `fn` inside the box [lower, upper].
 *
 * Infinite bounds are allowed. Iterates are clamped to the box and the
 * search direction is zeroed on active coordinates. Non-finite trial values
 * are treated as failed line-search steps.
 */
LbfgsResult lbfgs_minimize(const ValueGradFn &fn, Eigen::VectorXd x0,
                           const Eigen::VectorXd &lower,
                           const Eigen::VectorXd &upper,
                           const LbfgsOptions &options = {});

/// Unbounded convenience overload.
LbfgsResult lbfgs_minimize(const ValueGradFn &fn, Eigen::VectorXd x0,
                           const LbfgsOptions &options = {});

} // namespace bopt
