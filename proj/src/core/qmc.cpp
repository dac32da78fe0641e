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
#include "bopt/qmc.hpp"

#include <cmath>
#include <numbers>

#include <boost/random/sobol.hpp>

namespace bopt {

Eigen::MatrixXd space_filling_design(std::size_t dim, std::size_t n, double lo,
                                     double hi, Rng &rng, DesignKind kind) {
    Eigen::MatrixXd points(dim, n);
    if (dim == 0 || n == 0) {
        return points;
    }
    const double width = hi - lo;
    if (kind == DesignKind::Uniform) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < dim; ++i) {
                points(i, j) = lo + width * rng.uniform();
            }
        }
        return points;
    }

    Eigen::VectorXd shift(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        shift(i) = rng.uniform();
    }
    // Boost starts at the second Sobol point; the origin is prepended so
    // that the first 2^k points form a net.
    boost::random::sobol engine(dim);
    constexpr double kScale = 0x1.0p-64;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double v = j == 0 ? 0.0 : static_cast<double>(engine()) * kScale;
            double u = v + shift(i);
            u -= std::floor(u);
            points(i, j) = lo + width * u;
        }
    }
    return points;
}

double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    // fmod of a tiny negative number can round up to exactly 2*pi.
    if (r >= two_pi) {
        r = 0.0;
    }
    return r;
}

Eigen::VectorXd wrap_angles(const Eigen::VectorXd &theta) {
    return theta.unaryExpr([](double x) { return wrap_angle(x); });
}

} // namespace bopt
