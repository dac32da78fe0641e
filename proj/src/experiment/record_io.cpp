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
#include "bopt/record_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bopt/error.hpp"

namespace bopt {

namespace {

constexpr std::string_view kColumns = "iteration,shots,cumulative_cost,theta,observed,"
                                      "best_observed,incumbent,exact_energy,trace_exact_energy";

std::string format_theta(const Eigen::VectorXd &theta) {
    std::string out = "\"[";
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_real(theta(i));
    }
    out += "]\"";
    return out;
}

double parse_real(std::string_view field, std::size_t line) {
    const std::string s(field);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw DataError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view field, std::size_t line) {
    const std::string s(field);
    char *end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size()) {
        throw DataError("line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
    return v;
}

// Splits on commas outside double quotes; quotes are dropped.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            fields.emplace_back();
        } else {
            fields.back() += ch;
        }
    }
    return fields;
}

Eigen::VectorXd parse_theta(const std::string &text, std::size_t line) {
    try {
        const auto values = nlohmann::json::parse(text).get<std::vector<double>>();
        return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                 static_cast<Eigen::Index>(values.size()));
    } catch (const nlohmann::json::exception &e) {
        throw DataError("line " + std::to_string(line) + ": bad theta: " + e.what());
    }
}

} // namespace

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string record_to_csv(const RunRecord &record) {
    std::string out;
    out += "# ";
    out += kRecordSchema;
    out += "\n# arm=" + record.arm + "\n# seed=" + std::to_string(record.seed) +
           "\n# dim=" + std::to_string(record.dim) + "\n";
    for (const std::string &w : record.warnings) {
        out += "# warning=" + w + "\n";
    }
    out += kColumns;
    out += '\n';
    for (const RunRow &r : record.rows) {
        out += std::to_string(r.iteration) + ',' + std::to_string(r.shots) + ',' +
               format_real(r.cumulative_cost) + ',' + format_theta(r.theta) + ',' +
               format_real(r.observed) + ',' + format_real(r.best_observed) + ',' +
               format_real(r.incumbent) + ',' + format_real(r.exact) + ',' +
               format_real(r.trace_exact) + '\n';
    }
    return out;
}

RunRecord record_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || line != "# " + std::string(kRecordSchema)) {
        throw DataError("missing '# " + std::string(kRecordSchema) + "' schema tag");
    }
    ++line_no;
    RunRecord record;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (!header) {
            if (line.rfind("# ", 0) == 0) {
                const auto eq = line.find('=');
                if (eq == std::string::npos) {
                    throw DataError("line " + std::to_string(line_no) + ": bad metadata");
                }
                const std::string key = line.substr(2, eq - 2);
                const std::string value = line.substr(eq + 1);
                if (key == "arm") {
                    record.arm = value;
                } else if (key == "seed") {
                    record.seed = parse_unsigned(value, line_no);
                } else if (key == "dim") {
                    record.dim = parse_unsigned(value, line_no);
                } else if (key == "warning") {
                    record.warnings.push_back(value);
                } else {
                    throw DataError("line " + std::to_string(line_no) + ": unknown key '" +
                                    key + "'");
                }
                continue;
            }
            if (line != kColumns) {
                throw DataError("line " + std::to_string(line_no) + ": unexpected header");
            }
            header = true;
            continue;
        }
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 9) {
            throw DataError("line " + std::to_string(line_no) + ": expected 9 fields");
        }
        RunRow r;
        r.iteration = parse_unsigned(f[0], line_no);
        r.shots = parse_unsigned(f[1], line_no);
        r.cumulative_cost = parse_real(f[2], line_no);
        r.theta = parse_theta(f[3], line_no);
        if (static_cast<std::size_t>(r.theta.size()) != record.dim) {
            throw DataError("line " + std::to_string(line_no) + ": theta has the wrong size");
        }
        r.observed = parse_real(f[4], line_no);
        r.best_observed = parse_real(f[5], line_no);
        r.incumbent = parse_real(f[6], line_no);
        r.exact = parse_real(f[7], line_no);
        r.trace_exact = parse_real(f[8], line_no);
        record.rows.push_back(std::move(r));
    }
    if (!header) {
        throw DataError("missing column header");
    }
    return record;
}

void write_record(const std::filesystem::path &path, const RunRecord &record) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << record_to_csv(record);
    if (!out) {
        throw Error("write failed: " + path.string());
    }
}

RunRecord read_record(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return record_from_csv(buf.str());
    } catch (const DataError &e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace bopt
