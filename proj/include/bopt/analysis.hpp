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
 * Post-processing: trace validation, parity data and convergence plots.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bopt/bopt.hpp"
#include "bopt/circuit.hpp"
#include "bopt/pauli.hpp"

namespace bopt {

/// One step of the best-so-far parameter sequence.
struct TracePoint {
    std::size_t row = 0; ///< index into RunRecord::rows
    double cumulative_cost = 0.0;
    Eigen::VectorXd theta;
    double best_observed = 0.0;
    double exact = 0.0;
};

/// The first high-shot row and every row that strictly lowers best_observed.
std::vector<TracePoint> trace_trajectory(const RunRecord &record);

/**
 * @brief Re-evaluate a record on the noise-free simulator.
 *
 * Fills `exact` on every row and `trace_exact` on high-shot rows with the
 * exact energy of the best-observed theta so far. Throws DimensionError when
 * the ansatz does not match the record.
 */
RunRecord validate_trace(RunRecord record, const Hamiltonian &hamiltonian,
                         const AnsatzSpec &ansatz);

struct ParityRow {
    std::string id; ///< "<arm>/seed<k>#<iteration>"
    double exact = 0.0;
    double noisy = 0.0;
    double error = 0.0; ///< noisy - exact
};

struct Histogram {
    std::vector<double> edges; ///< bins + 1 edges; one bin of zero width if all equal
    std::vector<std::size_t> counts;
};

/**
 * Least-squares fit error = slope * exact + intercept. Under the affine
 * hardware model error = -a (exact - c), so a = -slope and the bias vanishes
 * at c = -intercept / slope.
 */
struct ParityFit {
    double slope = 0.0;
    double intercept = 0.0;
    double bias_slope = 0.0;    ///< -slope
    double zero_crossing = 0.0; ///< -intercept / slope; NaN when slope is 0
    double error_mean = 0.0;
    double error_std = 0.0;     ///< sample standard deviation of the errors
    double residual_std = 0.0;  ///< sample standard deviation about the fit
};

struct ParityData {
    std::vector<ParityRow> rows;
    Histogram histogram;
    ParityFit fit;
};

/// Pairs every high-shot row of validated records. Throws DataError when a
/// high-shot row has no exact value or there are no pairs.
ParityData emit_parity_data(const std::vector<RunRecord> &records, std::size_t bins = 30);

std::string parity_rows_csv(const ParityData &data);
std::string parity_histogram_csv(const ParityData &data);
std::string parity_fit_json(const ParityData &data);

/// Per-arm statistics of best-so-far energy against cumulative cost.
struct ConvergenceCurve {
    std::string arm;
    std::vector<double> cost;
    std::vector<std::size_t> runs; ///< seeds contributing at each cost
    std::vector<double> median;
    std::vector<double> mean;
    std::vector<double> std_error; ///< sample std / sqrt(runs); 0 for one run
};

/**
 * @brief Aggregate records by arm on the union of their high-shot costs.
 *
 * A run contributes at cost x its last value at or before x. With
 * `validated` the trace_exact column is used instead of best_observed.
 */
std::vector<ConvergenceCurve> convergence_curves(const std::vector<RunRecord> &records,
                                                 bool validated = false);

/// Median of a non-empty sample.
double median_of(std::vector<double> values);

/**
 * @brief SVG plot of median (solid) and mean (dashed) curves with a
 * standard-error band around the mean and a reference line at `e0`.
 *
 * The legend lists arms by final median, lowest first. Output is a pure
 * function of the inputs.
 */
std::string convergence_svg(const std::vector<ConvergenceCurve> &curves, double e0,
                            const std::string &title);

/// Long-format table of the curves: arm,cost,runs,median,mean,std_error.
std::string convergence_csv(const std::vector<ConvergenceCurve> &curves);

} // namespace bopt
