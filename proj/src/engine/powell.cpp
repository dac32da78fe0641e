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
#include "bopt/powell.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "bopt/error.hpp"

namespace bopt {

namespace {

constexpr double kGolden = 1.61803398874989484820458683436563811772030917980576286214;
constexpr double kInvGolden = kGolden - 1.0;

struct BudgetSpent {};

class CountedFn {
  public:
    CountedFn(const std::function<double(const Eigen::VectorXd &)> &fn, std::size_t limit)
        : fn_(fn), limit_(limit) {}

    double operator()(const Eigen::VectorXd &x) {
        if (count_ >= limit_) {
            throw BudgetSpent{};
        }
        ++count_;
        const double v = fn_(x);
        if (v < best_value_) {
            best_value_ = v;
            best_x_ = x;
        }
        return v;
    }

    [[nodiscard]] std::size_t count() const { return count_; }
    [[nodiscard]] double best_value() const { return best_value_; }
    [[nodiscard]] const Eigen::VectorXd &best_x() const { return best_x_; }

  private:
    const std::function<double(const Eigen::VectorXd &)> &fn_;
    std::size_t limit_;
    std::size_t count_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x_;
};

// Minimize along x + a * u, given f(x) = fx. Returns the best step and value.
std::pair<double, double> line_minimize(CountedFn &f, const Eigen::VectorXd &x, double fx,
                                        const Eigen::VectorXd &u, const PowellOptions &opt) {
    std::size_t used = 0;
    double best_a = 0.0;
    double best_f = fx;
    const auto eval = [&](double a) {
        ++used;
        const double v = f(x + a * u);
        if (v < best_f) {
            best_f = v;
            best_a = a;
        }
        return v;
    };
    const std::size_t cap = opt.max_line_evaluations;
    if (cap == 0) {
        return {0.0, fx};
    }

    // Bracket: a < b < c (or reversed) with f(b) <= f(a), f(b) <= f(c).
    double a = 0.0;
    double fa = fx;
    double b = opt.initial_step;
    double fb = eval(b);
    if (fb > fa) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    if (used >= cap) {
        return {best_a, best_f};
    }
    double c = b + kGolden * (b - a);
    double fc = eval(c);
    while (fc < fb && used < cap) {
        a = b;
        fa = fb;
        b = c;
        fb = fc;
        c = b + kGolden * (b - a);
        fc = eval(c);
    }
    if (fc < fb) {
        return {best_a, best_f};
    }

    // Golden-section search on [lo, hi] keeping b as an interior point.
    double lo = std::min(a, c);
    double hi = std::max(a, c);
    double x1 = b;
    double f1 = fb;
    while (hi - lo > opt.line_tolerance && used < cap) {
        // Probe the larger sub-interval.
        double x2;
        if (hi - x1 > x1 - lo) {
            x2 = x1 + (1.0 - kInvGolden) * (hi - x1);
        } else {
            x2 = x1 - (1.0 - kInvGolden) * (x1 - lo);
        }
        const double f2 = eval(x2);
        if (f2 < f1) {
            if (x2 > x1) {
                lo = x1;
            } else {
                hi = x1;
            }
            x1 = x2;
            f1 = f2;
        } else if (x2 > x1) {
            hi = x2;
        } else {
            lo = x2;
        }
    }
    return {best_a, best_f};
}

} // namespace

PowellResult powell_minimize(const std::function<double(const Eigen::VectorXd &)> &fn,
                             const Eigen::VectorXd &x0, std::size_t max_evaluations,
                             const PowellOptions &options) {
    const Eigen::Index d = x0.size();
    if (d == 0) {
        throw DimensionError("Powell needs at least one coordinate");
    }
    CountedFn f(fn, max_evaluations);
    PowellResult out;
    try {
        Eigen::VectorXd x = x0;
        double fx = f(x);
        std::vector<Eigen::VectorXd> dirs;
        for (Eigen::Index i = 0; i < d; ++i) {
            dirs.push_back(Eigen::VectorXd::Unit(d, i));
        }
        for (;;) {
            const Eigen::VectorXd start = x;
            const double f_start = fx;
            double biggest = 0.0;
            std::size_t ibig = 0;
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                const double before = fx;
                const auto [a, fa] = line_minimize(f, x, fx, dirs[i], options);
                x += a * dirs[i];
                fx = fa;
                if (before - fx > biggest) {
                    biggest = before - fx;
                    ibig = i;
                }
            }
            if (2.0 * (f_start - fx) <=
                options.value_tolerance * (std::abs(f_start) + std::abs(fx)) + 1e-300) {
                out.converged = true;
                break;
            }
            const Eigen::VectorXd shift = x - start;
            const double fe = f(x + shift);
            if (fe < f_start) {
                const double t = 2.0 * (f_start - 2.0 * fx + fe) *
                                     std::pow(f_start - fx - biggest, 2) -
                                 biggest * std::pow(f_start - fe, 2);
                if (t < 0.0) {
                    const auto [a, fa] = line_minimize(f, x, fx, shift, options);
                    x += a * shift;
                    fx = fa;
                    dirs[ibig] = dirs.back();
                    dirs.back() = shift;
                }
            }
        }
    } catch (const BudgetSpent &) {
    }
    out.x = f.best_x();
    out.value = f.best_value();
    out.evaluations = f.count();
    return out;
}

} // namespace bopt
