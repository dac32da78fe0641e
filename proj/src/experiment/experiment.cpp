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
#include "bopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "bopt/error.hpp"
#include "bopt/pauli.hpp"
#include "bopt/record_io.hpp"

namespace bopt {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> &allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"problem", {"name", "hamiltonian", "ansatz"}},
        {"run", {"arms", "seeds", "output", "workers"}},
        {"budget", {"total", "init", "high_shots", "low_shots", "max_low_shot"}},
        {"bo",
         {"beta", "mc_samples", "init_design", "raw_candidates", "starts", "observed_starts",
          "gp_restarts"}},
        {"svgp", {"inducing", "batch_size", "steps", "learning_rate"}},
        {"noise",
         {"shot_mode", "sigma_s", "hardware", "hw_bias_slope", "hw_bias_zero", "hw_sigma"}},
        {"powell", {"initial_step", "max_line_evaluations", "line_tolerance"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::uint64_t to_unsigned(std::string_view s, const std::string &what) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        throw ConfigError(what + ": expected a non-negative integer, got '" + std::string(s) +
                          "'");
    }
    return v;
}

template <class T> T get(const pt::ptree &tree, const std::string &key, T fallback) {
    const auto node = tree.get_optional<std::string>(key);
    if (!node) {
        return fallback;
    }
    const std::string text = trim(*node);
    if constexpr (std::is_same_v<T, std::string>) {
        return text;
    } else if constexpr (std::is_same_v<T, bool>) {
        if (text == "true" || text == "1" || text == "yes") {
            return true;
        }
        if (text == "false" || text == "0" || text == "no") {
            return false;
        }
        throw ConfigError(key + ": expected true or false, got '" + text + "'");
    } else if constexpr (std::is_integral_v<T>) {
        return static_cast<T>(to_unsigned(text, key));
    } else {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != text.size()) {
            throw ConfigError(key + ": expected a number, got '" + text + "'");
        }
        return v;
    }
}

DesignKind parse_design(const std::string &text) {
    if (text == "sobol") {
        return DesignKind::Sobol;
    }
    if (text == "uniform") {
        return DesignKind::Uniform;
    }
    throw ConfigError("unknown init_design '" + text + "'");
}

std::string design_name(DesignKind kind) {
    return kind == DesignKind::Sobol ? "sobol" : "uniform";
}

// Shortest text that parses back to the same double.
std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

std::string seeds_text(const std::vector<std::uint64_t> &seeds) {
    std::string out;
    std::size_t i = 0;
    while (i < seeds.size()) {
        std::size_t j = i;
        while (j + 1 < seeds.size() && seeds[j + 1] == seeds[j] + 1) {
            ++j;
        }
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(seeds[i]);
        if (j > i) {
            out += '-' + std::to_string(seeds[j]);
        }
        i = j + 1;
    }
    return out;
}

} // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    if (trim(text).empty()) {
        return seeds;
    }
    for (const std::string &part : split(text, ',')) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            seeds.push_back(to_unsigned(part, "seeds"));
            continue;
        }
        const std::uint64_t lo = to_unsigned(trim(part.substr(0, dash)), "seeds");
        const std::uint64_t hi = to_unsigned(trim(part.substr(dash + 1)), "seeds");
        if (hi < lo) {
            throw ConfigError("seeds: empty range '" + part + "'");
        }
        for (std::uint64_t s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
    }
    return seeds;
}

void ExperimentConfig::validate() const {
    if (arms.empty()) {
        throw ConfigError("no arms configured");
    }
    if (seeds.empty()) {
        throw ConfigError("no seeds configured");
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ConfigError("duplicate seeds");
    }
    if (std::set<Arm>(arms.begin(), arms.end()).size() != arms.size()) {
        throw ConfigError("duplicate arms");
    }
    if (workers == 0) {
        throw ConfigError("workers must be positive");
    }
    if (!std::filesystem::is_regular_file(hamiltonian_path)) {
        throw ConfigError("Hamiltonian file not found: " + hamiltonian_path.string());
    }
    bo.validate();
    noise.validate();
    if (powell.max_line_evaluations < 3 || !(powell.initial_step > 0.0) ||
        !(powell.line_tolerance > 0.0)) {
        throw ConfigError("invalid Powell settings");
    }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path &base_dir) {
    pt::ptree tree;
    try {
        // The INI reader only knows ';' comments; '#' lines are dropped here.
        std::istringstream raw{std::string(text)};
        std::string cleaned;
        for (std::string line; std::getline(raw, line);) {
            const std::string t = trim(line);
            cleaned += (t.empty() || t[0] == '#') ? "" : line;
            cleaned += '\n';
        }
        std::istringstream in(cleaned);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto &[section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError("key '" + section + "' outside a section");
        }
        const auto it = allowed_keys().find(section);
        if (it == allowed_keys().end()) {
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto &[key, value] : body) {
            if (!it->second.contains(key)) {
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
    const auto resolve = [&](const std::string &p) {
        const std::filesystem::path path(p);
        return path.is_absolute() || base_dir.empty() ? path : (base_dir / path).lexically_normal();
    };

    ExperimentConfig c;
    const pt::ptree empty;
    const auto section = [&](const char *name) -> const pt::ptree & {
        const auto child = tree.get_child_optional(name);
        return child ? *child : empty;
    };

    const pt::ptree &problem = section("problem");
    c.name = get<std::string>(problem, "name", c.name);
    c.hamiltonian_path = resolve(get<std::string>(problem, "hamiltonian",
                                                  c.hamiltonian_path.string()));
    try {
        c.ansatz = AnsatzSpec::parse(get<std::string>(problem, "ansatz", c.ansatz.str()));
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("ansatz: ") + e.what());
    }

    const pt::ptree &run = section("run");
    if (const auto arms = run.get_optional<std::string>("arms")) {
        c.arms.clear();
        for (const std::string &a : split(*arms, ',')) {
            c.arms.push_back(parse_arm(a));
        }
    }
    if (const auto seeds = run.get_optional<std::string>("seeds")) {
        c.seeds = parse_seed_list(*seeds);
    }
    c.output_dir = resolve(get<std::string>(run, "output", c.output_dir.string()));
    c.workers = get<std::size_t>(run, "workers", c.workers);

    const pt::ptree &budget = section("budget");
    c.bo.budget = get<double>(budget, "total", c.bo.budget);
    c.bo.init_budget = get<double>(budget, "init", c.bo.init_budget);
    c.bo.high_shots = get<std::uint64_t>(budget, "high_shots", c.bo.high_shots);
    c.bo.low_shots = get<std::uint64_t>(budget, "low_shots", c.bo.low_shots);
    c.bo.max_low_shot = get<std::size_t>(budget, "max_low_shot", c.bo.max_low_shot);

    const pt::ptree &bo = section("bo");
    c.bo.acquisition.beta = get<double>(bo, "beta", c.bo.acquisition.beta);
    c.bo.acquisition.mc_samples = get<std::size_t>(bo, "mc_samples", c.bo.acquisition.mc_samples);
    c.bo.init_design =
        parse_design(get<std::string>(bo, "init_design", design_name(c.bo.init_design)));
    c.bo.acq_optimizer.raw_candidates =
        get<std::size_t>(bo, "raw_candidates", c.bo.acq_optimizer.raw_candidates);
    c.bo.acq_optimizer.starts = get<std::size_t>(bo, "starts", c.bo.acq_optimizer.starts);
    c.bo.acq_optimizer.observed_starts =
        get<std::size_t>(bo, "observed_starts", c.bo.acq_optimizer.observed_starts);
    c.bo.gp.restarts = get<std::size_t>(bo, "gp_restarts", c.bo.gp.restarts);

    const pt::ptree &svgp = section("svgp");
    c.bo.svgp.num_inducing = get<std::size_t>(svgp, "inducing", c.bo.svgp.num_inducing);
    c.bo.svgp.batch_size = get<std::size_t>(svgp, "batch_size", c.bo.svgp.batch_size);
    c.bo.svgp.steps = get<std::size_t>(svgp, "steps", c.bo.svgp.steps);
    c.bo.svgp.learning_rate = get<double>(svgp, "learning_rate", c.bo.svgp.learning_rate);

    const pt::ptree &noise = section("noise");
    c.noise.shot_mode =
        parse_shot_mode(get<std::string>(noise, "shot_mode", to_string(c.noise.shot_mode)));
    c.noise.sigma_s = get<double>(noise, "sigma_s", c.noise.sigma_s);
    c.noise.hardware = get<bool>(noise, "hardware", c.noise.hardware);
    c.noise.hw_bias_slope = get<double>(noise, "hw_bias_slope", c.noise.hw_bias_slope);
    c.noise.hw_bias_zero = get<double>(noise, "hw_bias_zero", c.noise.hw_bias_zero);
    c.noise.hw_sigma = get<double>(noise, "hw_sigma", c.noise.hw_sigma);

    const pt::ptree &powell = section("powell");
    c.powell.initial_step = get<double>(powell, "initial_step", c.powell.initial_step);
    c.powell.max_line_evaluations =
        get<std::size_t>(powell, "max_line_evaluations", c.powell.max_line_evaluations);
    c.powell.line_tolerance = get<double>(powell, "line_tolerance", c.powell.line_tolerance);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::string format_config(const ExperimentConfig &c) {
    std::ostringstream o;
    std::string arms;
    for (Arm a : c.arms) {
        arms += (arms.empty() ? "" : ", ") + to_string(a);
    }
    o << "[problem]\n"
      << "name = " << c.name << "\n"
      << "hamiltonian = " << c.hamiltonian_path.string() << "\n"
      << "ansatz = " << c.ansatz.str() << "\n\n"
      << "[run]\n"
      << "arms = " << arms << "\n"
      << "seeds = " << seeds_text(c.seeds) << "\n"
      << "output = " << c.output_dir.string() << "\n"
      << "workers = " << c.workers << "\n\n"
      << "[budget]\n"
      << "total = " << num(c.bo.budget) << "\n"
      << "init = " << num(c.bo.init_budget) << "\n"
      << "high_shots = " << c.bo.high_shots << "\n"
      << "low_shots = " << c.bo.low_shots << "\n"
      << "max_low_shot = " << c.bo.max_low_shot << "\n\n"
      << "[bo]\n"
      << "beta = " << num(c.bo.acquisition.beta) << "\n"
      << "mc_samples = " << c.bo.acquisition.mc_samples << "\n"
      << "init_design = " << design_name(c.bo.init_design) << "\n"
      << "raw_candidates = " << c.bo.acq_optimizer.raw_candidates << "\n"
      << "starts = " << c.bo.acq_optimizer.starts << "\n"
      << "observed_starts = " << c.bo.acq_optimizer.observed_starts << "\n"
      << "gp_restarts = " << c.bo.gp.restarts << "\n\n"
      << "[svgp]\n"
      << "inducing = " << c.bo.svgp.num_inducing << "\n"
      << "batch_size = " << c.bo.svgp.batch_size << "\n"
      << "steps = " << c.bo.svgp.steps << "\n"
      << "learning_rate = " << num(c.bo.svgp.learning_rate) << "\n\n"
      << "[noise]\n"
      << "shot_mode = " << to_string(c.noise.shot_mode) << "\n"
      << "sigma_s = " << num(c.noise.sigma_s) << "\n"
      << "hardware = " << (c.noise.hardware ? "true" : "false") << "\n"
      << "hw_bias_slope = " << num(c.noise.hw_bias_slope) << "\n"
      << "hw_bias_zero = " << num(c.noise.hw_bias_zero) << "\n"
      << "hw_sigma = " << num(c.noise.hw_sigma) << "\n\n"
      << "[powell]\n"
      << "initial_step = " << num(c.powell.initial_step) << "\n"
      << "max_line_evaluations = " << c.powell.max_line_evaluations << "\n"
      << "line_tolerance = " << num(c.powell.line_tolerance) << "\n";
    return o.str();
}

std::filesystem::path record_path(const std::filesystem::path &output_dir, Arm arm,
                                  std::uint64_t seed) {
    return output_dir / to_string(arm) / ("seed" + std::to_string(seed) + ".csv");
}

std::size_t ExperimentSummary::failures() const {
    return static_cast<std::size_t>(
        std::count_if(jobs.begin(), jobs.end(), [](const JobOutcome &j) { return !j.ok; }));
}

VqeObjective make_objective(const ExperimentConfig &config) {
    Hamiltonian h = load_hamiltonian_file(config.hamiltonian_path.string());
    Circuit circuit = config.ansatz.build(h.num_qubits());
    return {std::move(circuit), std::move(h), config.noise};
}

ExperimentSummary run_experiment(const ExperimentConfig &config, std::uint64_t seed_offset) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const VqeObjective objective = make_objective(config);

    ExperimentSummary summary;
    for (Arm arm : config.arms) {
        for (std::uint64_t s : config.seeds) {
            JobOutcome job;
            job.arm = arm;
            job.seed = s + seed_offset;
            job.path = record_path(config.output_dir, arm, job.seed);
            summary.jobs.push_back(std::move(job));
        }
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < summary.jobs.size(); i = next++) {
            JobOutcome &job = summary.jobs[i];
            try {
                const RunRecord record =
                    run_arm(job.arm, objective, config.bo, job.seed, config.powell);
                write_record(job.path, record);
                job.final_best = record.final_best();
                job.wall_seconds = record.wall_seconds;
                job.ok = true;
            } catch (const std::exception &e) {
                job.error = e.what();
            }
        }
    };
    const std::size_t threads = std::min(config.workers, summary.jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json manifest;
    manifest["schema"] = std::string(kRecordSchema);
    manifest["name"] = config.name;
    manifest["config"] = format_config(config);
    manifest["seed_offset"] = seed_offset;
    manifest["wall_seconds"] = summary.wall_seconds;
    manifest["jobs"] = nlohmann::json::array();
    for (const JobOutcome &job : summary.jobs) {
        nlohmann::json j;
        j["arm"] = to_string(job.arm);
        j["seed"] = job.seed;
        j["file"] = std::filesystem::relative(job.path, config.output_dir).generic_string();
        j["status"] = job.ok ? "ok" : "failed";
        if (job.ok) {
            j["final_best_observed"] = job.final_best;
            j["wall_seconds"] = job.wall_seconds;
        } else {
            j["error"] = job.error;
        }
        manifest["jobs"].push_back(std::move(j));
    }
    std::filesystem::create_directories(config.output_dir);
    std::ofstream out(config.output_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) {
        throw Error("cannot write manifest in " + config.output_dir.string());
    }
    return summary;
}

} // namespace bopt
