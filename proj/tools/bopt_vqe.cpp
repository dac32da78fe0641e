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
// Command-line driver: run, validate, parity and plot.
//
// Exit codes: 0 on success, 2 when some jobs or files failed, 1 on
// configuration or input errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bopt/analysis.hpp"
#include "bopt/error.hpp"
#include "bopt/experiment.hpp"
#include "bopt/pauli.hpp"
#include "bopt/record_io.hpp"

namespace fs = std::filesystem;
using namespace bopt;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kPartial = 2;

bool is_record(const fs::path &p) {
    if (p.extension() != ".csv") {
        return false;
    }
    std::ifstream in(p);
    std::string first;
    return std::getline(in, first) && first == "# " + std::string(kRecordSchema);
}

std::vector<fs::path> record_files(const fs::path &root) {
    std::vector<fs::path> out;
    if (fs::is_regular_file(root)) {
        out.push_back(root);
        return out;
    }
    if (!fs::is_directory(root)) {
        throw ConfigError("no such file or directory: " + root.string());
    }
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && is_record(e.path())) {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_text(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

int cmd_run(const std::string &config_path, std::size_t workers, std::uint64_t seed_offset,
            const std::string &output, bool print_only) {
    ExperimentConfig config = load_config(config_path);
    if (workers > 0) {
        config.workers = workers;
    }
    if (!output.empty()) {
        config.output_dir = output;
    }
    if (print_only) {
        std::cout << format_config(config);
        return kOk;
    }
    config.validate();
    const ExperimentSummary summary = run_experiment(config, seed_offset);
    for (const JobOutcome &job : summary.jobs) {
        if (job.ok) {
            std::cout << to_string(job.arm) << " seed " << job.seed << ": best "
                      << format_real(job.final_best) << " -> " << job.path.string() << "\n";
        } else {
            std::cerr << to_string(job.arm) << " seed " << job.seed << " failed: " << job.error
                      << "\n";
        }
    }
    std::cout << "manifest: " << (config.output_dir / "manifest.json").string() << "\n";
    return summary.failures() == 0 ? kOk : kPartial;
}

int cmd_validate(const std::string &target, const std::string &hamiltonian,
                 const std::string &ansatz_text, const std::string &output) {
    const Hamiltonian h = load_hamiltonian_file(hamiltonian);
    const AnsatzSpec ansatz = AnsatzSpec::parse(ansatz_text);
    const std::vector<fs::path> files = record_files(target);
    if (!output.empty() && files.size() != 1) {
        throw ConfigError("--output needs a single record");
    }
    std::size_t failed = 0;
    for (const fs::path &f : files) {
        try {
            const RunRecord rec = validate_trace(read_record(f), h, ansatz);
            const fs::path dest = output.empty() ? f : fs::path(output);
            write_record(dest, rec);
            const std::vector<TracePoint> trace = trace_trajectory(rec);
            std::cout << f.string() << ": " << trace.size() << " trace points, final exact "
                      << format_real(trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                   : trace.back().exact)
                      << "\n";
        } catch (const Error &e) {
            std::cerr << f.string() << ": " << e.what() << "\n";
            ++failed;
        }
    }
    if (files.empty()) {
        throw ConfigError("no bopt-v1 records under " + target);
    }
    return failed == 0 ? kOk : (failed == files.size() ? kConfigError : kPartial);
}

int cmd_parity(const std::string &dir, std::size_t bins, const std::string &output) {
    std::vector<RunRecord> records;
    for (const fs::path &f : record_files(dir)) {
        records.push_back(read_record(f));
    }
    const ParityData data = emit_parity_data(records, bins);
    const fs::path out = output.empty() ? fs::path(dir) : fs::path(output);
    write_text(out / "parity.csv", parity_rows_csv(data));
    write_text(out / "parity_histogram.csv", parity_histogram_csv(data));
    write_text(out / "parity_fit.json", parity_fit_json(data));
    std::cout << parity_fit_json(data);
    return kOk;
}

int cmd_plot(const std::string &dir, const std::string &hamiltonian, double e0, bool validated,
             const std::string &title, const std::string &output) {
    std::vector<RunRecord> records;
    for (const fs::path &f : record_files(dir)) {
        records.push_back(read_record(f));
    }
    if (records.empty()) {
        throw ConfigError("no bopt-v1 records under " + dir);
    }
    if (!hamiltonian.empty()) {
        e0 = ground_energy_exact(load_hamiltonian_file(hamiltonian));
    }
    const std::vector<ConvergenceCurve> curves = convergence_curves(records, validated);
    const fs::path svg = output.empty() ? fs::path(dir) / "convergence.svg" : fs::path(output);
    write_text(svg, convergence_svg(curves, e0, title));
    fs::path table = svg;
    write_text(table.replace_extension(".csv"), convergence_csv(curves));
    std::cout << "wrote " << svg.string() << "\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bayesian optimization with topological priors for VQE"};
    app.require_subcommand(0, 1);
    bool print_config = false;
    std::size_t workers = 0;
    std::uint64_t seed_offset = 0;
    app.add_flag("--print-config", print_config,
                 "Print the default config (or, with run, the resolved config) and exit");
    app.add_option("--workers", workers, "Parallel jobs (overrides the config)");
    app.add_option("--seed-offset", seed_offset, "Added to every configured seed");

    CLI::App *run = app.add_subcommand("run", "Run every (arm, seed) job of a config");
    run->fallthrough();
    std::string config_path;
    std::string run_output;
    run->add_option("config", config_path, "INI config file")->required();
    run->add_option("-o,--output", run_output, "Output directory (overrides the config)");

    CLI::App *validate = app.add_subcommand("validate", "Re-evaluate records without noise");
    std::string target;
    std::string hamiltonian;
    std::string ansatz;
    std::string validate_output;
    validate->add_option("record", target, "Record CSV or a directory of records")->required();
    validate->add_option("--hamiltonian", hamiltonian, "Hamiltonian file")->required();
    validate->add_option("--ansatz", ansatz, "Ansatz, e.g. hea:4:1100")->required();
    validate->add_option("-o,--output", validate_output, "Output file (default: in place)");

    CLI::App *parity = app.add_subcommand("parity", "Noisy-versus-exact parity data");
    std::string parity_dir;
    std::size_t bins = 30;
    std::string parity_output;
    parity->add_option("dir", parity_dir, "Directory of validated records")->required();
    parity->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
    parity->add_option("-o,--output", parity_output, "Output directory (default: dir)");

    CLI::App *plot = app.add_subcommand("plot", "Convergence plot of a results directory");
    std::string plot_dir;
    std::string plot_hamiltonian;
    double e0 = std::numeric_limits<double>::quiet_NaN();
    bool use_validated = false;
    std::string title = "Convergence";
    std::string plot_output;
    plot->add_option("dir", plot_dir, "Directory of records")->required();
    plot->add_option("--hamiltonian", plot_hamiltonian, "Draw E0 of this Hamiltonian");
    plot->add_option("--e0", e0, "Draw this reference energy");
    plot->add_flag("--validated", use_validated, "Plot validated trace energies");
    plot->add_option("--title", title, "Plot title");
    plot->add_option("-o,--output", plot_output, "SVG path (default: dir/convergence.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    try {
        if (run->parsed()) {
            return cmd_run(config_path, workers, seed_offset, run_output, print_config);
        }
        if (print_config) {
            std::cout << format_config(ExperimentConfig{});
            return kOk;
        }
        if (validate->parsed()) {
            return cmd_validate(target, hamiltonian, ansatz, validate_output);
        }
        if (parity->parsed()) {
            return cmd_parity(parity_dir, bins, parity_output);
        }
        if (plot->parsed()) {
            return cmd_plot(plot_dir, plot_hamiltonian, e0, use_validated, title, plot_output);
        }
        std::cout << app.help();
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
