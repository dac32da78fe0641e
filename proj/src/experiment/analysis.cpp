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
#include "bopt/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>

#include <json.hpp>

#include "bopt/error.hpp"
#include "bopt/record_io.hpp"
#include "bopt/statevector.hpp"

namespace bopt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool high_shot(const RunRow &row) { return !std::isnan(row.best_observed); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) {
        return {lo};
    }
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) {
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        ticks.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ticks;
}

} // namespace

std::vector<TracePoint> trace_trajectory(const RunRecord &record) {
    std::vector<TracePoint> out;
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        const RunRow &row = record.rows[i];
        if (!high_shot(row)) {
            continue;
        }
        if (out.empty() || row.best_observed < out.back().best_observed) {
            out.push_back({i, row.cumulative_cost, row.theta, row.best_observed, row.exact});
        }
    }
    return out;
}

RunRecord validate_trace(RunRecord record, const Hamiltonian &hamiltonian,
                         const AnsatzSpec &ansatz) {
    const Circuit circuit = ansatz.build(hamiltonian.num_qubits());
    if (circuit.param_count() != record.dim) {
        throw DimensionError("ansatz has " + std::to_string(circuit.param_count()) +
                             " parameters but the record has " + std::to_string(record.dim));
    }
    double best = std::numeric_limits<double>::infinity();
    double best_exact = kNaN;
    for (RunRow &row : record.rows) {
        if (static_cast<std::size_t>(row.theta.size()) != record.dim) {
            throw DimensionError("row " + std::to_string(row.iteration) +
                                 " has the wrong dimension");
        }
        row.exact = expectation_exact(circuit, row.theta, hamiltonian);
        row.trace_exact = kNaN;
        if (!high_shot(row)) {
            continue;
        }
        if (std::isnan(best_exact) || row.best_observed < best) {
            best = row.best_observed;
            best_exact = row.exact;
        }
        row.trace_exact = best_exact;
    }
    return record;
}

ParityData emit_parity_data(const std::vector<RunRecord> &records, std::size_t bins) {
    if (bins == 0) {
        throw DimensionError("histogram needs at least one bin");
    }
    ParityData data;
    for (const RunRecord &rec : records) {
        for (const RunRow &row : rec.rows) {
            if (!high_shot(row)) {
                continue;
            }
            const std::string id =
                rec.arm + "/seed" + std::to_string(rec.seed) + "#" + std::to_string(row.iteration);
            if (std::isnan(row.exact)) {
                throw DataError("unpaired row " + id + ": no exact energy (validate first)");
            }
            data.rows.push_back({id, row.exact, row.observed, row.observed - row.exact});
        }
    }
    if (data.rows.empty()) {
        throw DataError("no paired rows");
    }

    const auto n = static_cast<double>(data.rows.size());
    double mx = 0.0;
    double me = 0.0;
    for (const ParityRow &r : data.rows) {
        mx += r.exact / n;
        me += r.error / n;
    }
    double sxx = 0.0;
    double sxe = 0.0;
    double see = 0.0;
    for (const ParityRow &r : data.rows) {
        sxx += (r.exact - mx) * (r.exact - mx);
        sxe += (r.exact - mx) * (r.error - me);
        see += (r.error - me) * (r.error - me);
    }
    ParityFit &fit = data.fit;
    fit.slope = sxx > 0.0 ? sxe / sxx : 0.0;
    fit.intercept = me - fit.slope * mx;
    fit.bias_slope = -fit.slope;
    fit.zero_crossing = fit.slope != 0.0 ? -fit.intercept / fit.slope : kNaN;
    fit.error_mean = me;
    fit.error_std = n > 1 ? std::sqrt(see / (n - 1)) : 0.0;
    double ssr = 0.0;
    for (const ParityRow &r : data.rows) {
        const double res = r.error - (fit.slope * r.exact + fit.intercept);
        ssr += res * res;
    }
    fit.residual_std = n > 2 ? std::sqrt(ssr / (n - 2)) : 0.0;

    double lo = data.rows.front().error;
    double hi = lo;
    for (const ParityRow &r : data.rows) {
        lo = std::min(lo, r.error);
        hi = std::max(hi, r.error);
    }
    Histogram &h = data.histogram;
    if (!(hi > lo)) {
        h.edges = {lo, hi};
        h.counts = {data.rows.size()};
        return data;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.edges.push_back(b == bins ? hi : lo + width * static_cast<double>(b));
    }
    h.counts.assign(bins, 0);
    for (const ParityRow &r : data.rows) {
        auto b = static_cast<std::size_t>((r.error - lo) / width);
        ++h.counts[std::min(b, bins - 1)];
    }
    return data;
}

std::string parity_rows_csv(const ParityData &data) {
    std::string out = "theta_id,exact_energy,noisy_energy,error\n";
    for (const ParityRow &r : data.rows) {
        out += r.id + ',' + format_real(r.exact) + ',' + format_real(r.noisy) + ',' +
               format_real(r.error) + '\n';
    }
    return out;
}

std::string parity_histogram_csv(const ParityData &data) {
    std::string out = "bin_lo,bin_hi,count\n";
    const Histogram &h = data.histogram;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out += format_real(h.edges[b]) + ',' + format_real(h.edges[b + 1]) + ',' +
               std::to_string(h.counts[b]) + '\n';
    }
    return out;
}

std::string parity_fit_json(const ParityData &data) {
    const ParityFit &f = data.fit;
    const auto num = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    nlohmann::json j;
    j["pairs"] = data.rows.size();
    j["slope"] = num(f.slope);
    j["intercept"] = num(f.intercept);
    j["bias_slope"] = num(f.bias_slope);
    j["zero_crossing"] = num(f.zero_crossing);
    j["error_mean"] = num(f.error_mean);
    j["error_std"] = num(f.error_std);
    j["residual_std"] = num(f.residual_std);
    return j.dump(2) + "\n";
}

double median_of(std::vector<double> values) {
    if (values.empty()) {
        throw DimensionError("median of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<ConvergenceCurve> convergence_curves(const std::vector<RunRecord> &records,
                                                 bool validated) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const RunRecord *>> by_arm;
    for (const RunRecord &r : records) {
        if (!by_arm.contains(r.arm)) {
            order.push_back(r.arm);
        }
        by_arm[r.arm].push_back(&r);
    }
    std::vector<ConvergenceCurve> curves;
    for (const std::string &arm : order) {
        using Series = std::vector<std::pair<double, double>>;
        std::vector<Series> runs;
        std::vector<double> costs;
        for (const RunRecord *r : by_arm[arm]) {
            Series s;
            for (const RunRow &row : r->rows) {
                const double v = validated ? row.trace_exact : row.best_observed;
                if (high_shot(row) && !std::isnan(v)) {
                    s.emplace_back(row.cumulative_cost, v);
                    costs.push_back(row.cumulative_cost);
                }
            }
            runs.push_back(std::move(s));
        }
        std::sort(costs.begin(), costs.end());
        costs.erase(std::unique(costs.begin(), costs.end()), costs.end());

        ConvergenceCurve c;
        c.arm = arm;
        std::vector<std::size_t> cursor(runs.size(), 0);
        for (double x : costs) {
            std::vector<double> v;
            for (std::size_t k = 0; k < runs.size(); ++k) {
                while (cursor[k] < runs[k].size() && runs[k][cursor[k]].first <= x) {
                    ++cursor[k];
                }
                if (cursor[k] > 0) {
                    v.push_back(runs[k][cursor[k] - 1].second);
                }
            }
            const auto n = static_cast<double>(v.size());
            const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
            double ss = 0.0;
            for (double e : v) {
                ss += (e - mean) * (e - mean);
            }
            c.cost.push_back(x);
            c.runs.push_back(v.size());
            c.median.push_back(median_of(v));
            c.mean.push_back(mean);
            c.std_error.push_back(v.size() > 1 ? std::sqrt(ss / (n - 1)) / std::sqrt(n) : 0.0);
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

std::string convergence_csv(const std::vector<ConvergenceCurve> &curves) {
    std::string out = "arm,cost,runs,median,mean,std_error\n";
    for (const ConvergenceCurve &c : curves) {
        for (std::size_t i = 0; i < c.cost.size(); ++i) {
            out += c.arm + ',' + format_real(c.cost[i]) + ',' + std::to_string(c.runs[i]) +
                   ',' + format_real(c.median[i]) + ',' + format_real(c.mean[i]) + ',' +
                   format_real(c.std_error[i]) + '\n';
        }
    }
    return out;
}

std::string convergence_svg(const std::vector<ConvergenceCurve> &curves, double e0,
                            const std::string &title) {
    constexpr double kW = 800.0;
    constexpr double kH = 500.0;
    constexpr double kLeft = 80.0;
    constexpr double kRight = 190.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 60.0;
    static const std::array<const char *, 8> palette{
        "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    double x_hi = 1.0;
    double y_lo = std::isfinite(e0) ? e0 : std::numeric_limits<double>::infinity();
    double y_hi = std::isfinite(e0) ? e0 : -std::numeric_limits<double>::infinity();
    for (const ConvergenceCurve &c : curves) {
        for (std::size_t i = 0; i < c.cost.size(); ++i) {
            x_hi = std::max(x_hi, c.cost[i]);
            y_lo = std::min({y_lo, c.median[i], c.mean[i] - c.std_error[i]});
            y_hi = std::max({y_hi, c.median[i], c.mean[i] + c.std_error[i]});
        }
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    const double pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : 0.5;
    y_lo -= pad;
    y_hi += pad;
    const auto px = [&](double x) { return kLeft + (kW - kLeft - kRight) * x / x_hi; };
    const auto py = [&](double y) {
        return kTop + (kH - kTop - kBottom) * (y_hi - y) / (y_hi - y_lo);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt_px(kLeft) + "\" y=\"24\" font-size=\"15\">" + escape_xml(title) +
         "</text>\n";
    const std::string x0 = fmt_px(kLeft);
    const std::string x1 = fmt_px(kW - kRight);
    const std::string y0 = fmt_px(kTop);
    const std::string y1 = fmt_px(kH - kBottom);
    s += "<rect x=\"" + x0 + "\" y=\"" + y0 + "\" width=\"" + fmt_px(kW - kLeft - kRight) +
         "\" height=\"" + fmt_px(kH - kTop - kBottom) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(0.0, x_hi)) {
        const std::string x = fmt_px(px(t));
        s += "<line x1=\"" + x + "\" y1=\"" + y1 + "\" x2=\"" + x + "\" y2=\"" +
             fmt_px(kH - kBottom + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + x + "\" y=\"" + fmt_px(kH - kBottom + 20) +
             "\" text-anchor=\"middle\">" + fmt(t) + "</text>\n";
    }
    for (double t : nice_ticks(y_lo, y_hi)) {
        const std::string y = fmt_px(py(t));
        s += "<line x1=\"" + fmt_px(kLeft - 5) + "\" y1=\"" + y + "\" x2=\"" + x0 + "\" y2=\"" +
             y + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt_px(kLeft - 8) + "\" y=\"" + fmt_px(py(t) + 4) +
             "\" text-anchor=\"end\">" + fmt(t) + "</text>\n";
    }
    s += "<text x=\"" + fmt_px(0.5 * (kLeft + kW - kRight)) + "\" y=\"" + fmt_px(kH - 15) +
         "\" text-anchor=\"middle\">cost (high-shot units)</text>\n";
    s += "<text transform=\"translate(20," + fmt_px(0.5 * (kTop + kH - kBottom)) +
         ") rotate(-90)\" text-anchor=\"middle\">best energy (Ha)</text>\n";
    if (std::isfinite(e0)) {
        const std::string y = fmt_px(py(e0));
        s += "<line x1=\"" + x0 + "\" y1=\"" + y + "\" x2=\"" + x1 + "\" y2=\"" + y +
             "\" stroke=\"black\" stroke-dasharray=\"2,3\"/>\n";
        s += "<text x=\"" + fmt_px(kW - kRight - 4) + "\" y=\"" + fmt_px(py(e0) - 4) +
             "\" text-anchor=\"end\">E0 = " + fmt(e0) + "</text>\n";
    }

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const ConvergenceCurve &c = curves[k];
        if (c.cost.empty()) {
            continue;
        }
        const char *color = palette[k % palette.size()];
        std::string band;
        for (std::size_t i = 0; i < c.cost.size(); ++i) {
            band += fmt_px(px(c.cost[i])) + "," + fmt_px(py(c.mean[i] + c.std_error[i])) + " ";
        }
        for (std::size_t i = c.cost.size(); i-- > 0;) {
            band += fmt_px(px(c.cost[i])) + "," + fmt_px(py(c.mean[i] - c.std_error[i])) + " ";
        }
        band.pop_back();
        s += "<polygon points=\"" + band + "\" fill=\"" + color +
             "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
        std::string med;
        std::string mean;
        for (std::size_t i = 0; i < c.cost.size(); ++i) {
            med += fmt_px(px(c.cost[i])) + "," + fmt_px(py(c.median[i])) + " ";
            mean += fmt_px(px(c.cost[i])) + "," + fmt_px(py(c.mean[i])) + " ";
        }
        med.pop_back();
        mean.pop_back();
        s += "<polyline points=\"" + med + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
        s += "<polyline points=\"" + mean + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1\" stroke-dasharray=\"5,3\"/>\n";
    }

    std::vector<std::size_t> legend(curves.size());
    std::iota(legend.begin(), legend.end(), 0);
    const auto final_median = [&](std::size_t k) {
        return curves[k].median.empty() ? std::numeric_limits<double>::infinity()
                                        : curves[k].median.back();
    };
    std::stable_sort(legend.begin(), legend.end(), [&](std::size_t a, std::size_t b) {
        return final_median(a) < final_median(b);
    });
    double ly = kTop + 10.0;
    for (std::size_t k : legend) {
        const char *color = palette[k % palette.size()];
        const std::string y = fmt_px(ly);
        s += "<line x1=\"" + fmt_px(kW - kRight + 15) + "\" y1=\"" + y + "\" x2=\"" +
             fmt_px(kW - kRight + 40) + "\" y2=\"" + y + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt_px(kW - kRight + 46) + "\" y=\"" + fmt_px(ly + 4) + "\">" +
             escape_xml(curves[k].arm) + " (" + fmt(final_median(k)) + ")</text>\n";
        ly += 20.0;
    }
    s += "<text x=\"" + fmt_px(kW - kRight + 15) + "\" y=\"" + fmt_px(ly + 8) +
         "\" font-size=\"10\">solid: median, dashed: mean</text>\n";
    s += "<text x=\"" + fmt_px(kW - kRight + 15) + "\" y=\"" + fmt_px(ly + 22) +
         "\" font-size=\"10\">band: mean +/- standard error</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace bopt
