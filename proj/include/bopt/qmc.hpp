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
#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "bopt/rng.hpp"

namespace bopt {

/// Space-filling designs. Each column is one point.
enum class DesignKind { Sobol, Uniform };

/**
 * @brief n points in [lo, hi)^d.
 *
 * Sobol designs are randomized with a Cranley-Patterson shift drawn from
 * `rng`, so different seeds give different (still low-discrepancy) designs.
 */
Eigen::MatrixXd space_filling_design(std::size_t dim, std::size_t n, double lo,
                                     double hi, Rng &rng,
                                     DesignKind kind = DesignKind::Sobol);

/// Reduce every coordinate into [0, 2*pi).
Eigen::VectorXd wrap_angles(const Eigen::VectorXd &theta);
double wrap_angle(double x);

} // namespace bopt
