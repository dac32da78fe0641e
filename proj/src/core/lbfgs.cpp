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
#include "bopt/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace bopt {

namespace {

Eigen::VectorXd clamp(const Eigen::VectorXd &x, const Eigen::VectorXd &lo,
                      const Eigen::VectorXd &hi) {
    return x.cwiseMax(lo).cwiseMin(hi);
}

// Gradient with components that point out of the box removed.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd &x,
                                   const Eigen::VectorXd &g,
                                   const Eigen::VectorXd &lo,
                                   const Eigen::VectorXd &hi) {
    Eigen::VectorXd pg = g;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if ((x(i) <= lo(i) && g(i) > 0.0) || (x(i) >= hi(i) && g(i) < 0.0)) {
            pg(i) = 0.0;
        }
    }
    return pg;
}

struct Pair {
    Eigen::VectorXd s;
    Eigen::VectorXd y;
    double rho;
};

} // namespace

LbfgsResult lbfgs_minimize(const ValueGradFn &fn, Eigen::VectorXd x0,
                           const Eigen::VectorXd &lower,
                           const Eigen::VectorXd &upper,
                           const LbfgsOptions &options) {
    const Eigen::Index n = x0.size();
    LbfgsResult result;
    Eigen::VectorXd x = clamp(x0, lower, upper);
    Eigen::VectorXd g(n);
    double f = fn(x, g);
    ++result.evaluations;
    result.x = x;
    result.value = f;
    if (!std::isfinite(f) || !g.allFinite()) {
        return result;
    }

    std::deque<Pair> memory;
    Eigen::VectorXd g_new(n);
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        const Eigen::VectorXd pg = projected_gradient(x, g, lower, upper);
        if (pg.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
            result.converged = true;
            break;
        }

        // Two-loop recursion on the projected gradient.
        Eigen::VectorXd q = pg;
        std::vector<double> alpha(memory.size());
        for (std::size_t k = memory.size(); k-- > 0;) {
            alpha[k] = memory[k].rho * memory[k].s.dot(q);
            q -= alpha[k] * memory[k].y;
        }
        if (!memory.empty()) {
            const Pair &last = memory.back();
            q *= last.s.dot(last.y) / last.y.squaredNorm();
        }
        for (std::size_t k = 0; k < memory.size(); ++k) {
            const double beta = memory[k].rho * memory[k].y.dot(q);
            q += (alpha[k] - beta) * memory[k].s;
        }
        Eigen::VectorXd dir = -q;
        for (Eigen::Index i = 0; i < n; ++i) {
            if ((x(i) <= lower(i) && dir(i) < 0.0) ||
                (x(i) >= upper(i) && dir(i) > 0.0)) {
                dir(i) = 0.0;
            }
        }
        double slope = pg.dot(dir);
        if (!(slope < 0.0)) {
            memory.clear();
            dir = -pg;
            slope = -pg.squaredNorm();
        }

        double step = 1.0;
        if (memory.empty()) {
            step = std::min(1.0, 1.0 / dir.lpNorm<Eigen::Infinity>());
        }
        bool accepted = false;
        Eigen::VectorXd x_new;
        double f_new = std::numeric_limits<double>::infinity();
        for (std::size_t bt = 0; bt < options.max_backtracks; ++bt) {
            x_new = clamp(x + step * dir, lower, upper);
            f_new = fn(x_new, g_new);
            ++result.evaluations;
            if (std::isfinite(f_new) && g_new.allFinite() &&
                f_new <= f + 1e-4 * g.dot(x_new - x)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        ++result.iterations;
        if (!accepted) {
            if (memory.empty()) {
                break;
            }
            memory.clear();
            continue;
        }

        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        const double decrease = f - f_new;
        x = x_new;
        f = f_new;
        g = g_new;
        if (sy > 1e-12 * y.squaredNorm() && sy > 0.0) {
            memory.push_back({s, y, 1.0 / sy});
            if (memory.size() > options.history) {
                memory.pop_front();
            }
        }
        if (s.lpNorm<Eigen::Infinity>() <= options.step_tolerance ||
            decrease <= options.value_tolerance * std::max(1.0, std::abs(f))) {
            result.converged = true;
            break;
        }
    }
    result.x = x;
    result.value = f;
    return result;
}

LbfgsResult lbfgs_minimize(const ValueGradFn &fn, Eigen::VectorXd x0,
                           const LbfgsOptions &options) {
    const Eigen::Index n = x0.size();
    const double inf = std::numeric_limits<double>::infinity();
    return lbfgs_minimize(fn, std::move(x0), Eigen::VectorXd::Constant(n, -inf),
                          Eigen::VectorXd::Constant(n, inf), options);
}

} // namespace bopt
