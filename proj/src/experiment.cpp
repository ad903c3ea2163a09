// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riscf/experiment.hpp"

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace riscf {

namespace {

[[noreturn]] void bad(const std::string &msg) { throw Error("invalid_config", msg); }

void check_keys(const YAML::Node &node, const std::string &where, const std::set<std::string> &allowed) {
    if (!node.IsMap()) {
        bad(where + ": expected a mapping");
    }
    for (const auto &kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            bad(where + ": unknown key '" + key + "'");
        }
    }
}

double as_number(const YAML::Node &n, const std::string &what) {
    if (!n.IsScalar()) {
        bad(what + ": expected a number");
    }
    const std::string s = n.Scalar();
    if (s == "inf" || s == "+inf" || s == ".inf" || s == "Inf" || s == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        return n.as<double>();
    } catch (const YAML::Exception &) {
        bad(what + ": '" + s + "' is not a number");
    }
}

int as_int(const YAML::Node &n, const std::string &what) {
    const double v = as_number(n, what);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9) {
        bad(what + ": expected an integer");
    }
    return static_cast<int>(v);
}

bool as_flag(const YAML::Node &n, const std::string &what) {
    try {
        return n.as<bool>();
    } catch (const YAML::Exception &) {
        bad(what + ": expected on/off or true/false");
    }
}

std::string as_string(const YAML::Node &n, const std::string &what) {
    if (!n.IsScalar()) {
        bad(what + ": expected a string");
    }
    return n.Scalar();
}

void parse_system(const YAML::Node &s, SystemConfig &c) {
    check_keys(s, "system",
               {"M", "K", "L", "N_H", "N_V", "tau_c", "tau_p", "carrier_frequency_hz", "d_H", "d_V",
                "ap_antenna_spacing", "p_max_w", "p_max_dbm", "pilot_power_w", "noise_power_w", "noise_power_dbm",
                "rho_db", "area_side_m", "ap_height_m", "ue_height_m", "ris_height_m", "ris_xy_m", "asd_deg",
                "alpha_fpc", "shadow_delta_f", "shadow_sigma_db", "decorrelation_distance_m", "ue_ris_rician_law",
                "zbar_model", "ris_phase_rad"});
    auto num = [&](const char *key, double &dst) {
        if (s[key]) {
            dst = as_number(s[key], std::string("system.") + key);
        }
    };
    auto integer = [&](const char *key, int &dst) {
        if (s[key]) {
            dst = as_int(s[key], std::string("system.") + key);
        }
    };
    integer("M", c.M);
    integer("K", c.K);
    integer("L", c.L);
    integer("N_H", c.N_H);
    integer("N_V", c.N_V);
    integer("tau_c", c.tau_c);
    integer("tau_p", c.tau_p);
    num("carrier_frequency_hz", c.carrier_frequency);
    num("d_H", c.d_H);
    num("d_V", c.d_V);
    num("ap_antenna_spacing", c.ap_antenna_spacing);
    if (s["p_max_w"] && s["p_max_dbm"]) {
        bad("system: give p_max_w or p_max_dbm, not both");
    }
    num("p_max_w", c.p_max);
    if (s["p_max_dbm"]) {
        c.p_max = dbm_to_watt(as_number(s["p_max_dbm"], "system.p_max_dbm"));
    }
    if (s["noise_power_w"] && s["noise_power_dbm"]) {
        bad("system: give noise_power_w or noise_power_dbm, not both");
    }
    num("noise_power_w", c.noise_power);
    if (s["noise_power_dbm"]) {
        c.noise_power = dbm_to_watt(as_number(s["noise_power_dbm"], "system.noise_power_dbm"));
    }
    if (s["pilot_power_w"]) {
        const YAML::Node p = s["pilot_power_w"];
        if (!p.IsSequence()) {
            bad("system.pilot_power_w: expected a list");
        }
        c.pilot_power.clear();
        for (const auto &v : p) {
            c.pilot_power.push_back(as_number(v, "system.pilot_power_w"));
        }
    }
    num("rho_db", c.rho_db);
    num("area_side_m", c.area_side);
    num("ap_height_m", c.ap_height);
    num("ue_height_m", c.ue_height);
    num("ris_height_m", c.ris_height);
    if (s["ris_xy_m"]) {
        const YAML::Node p = s["ris_xy_m"];
        if (!p.IsSequence() || p.size() != 2) {
            bad("system.ris_xy_m: expected [x, y]");
        }
        c.ris_xy = std::make_pair(as_number(p[0], "system.ris_xy_m"), as_number(p[1], "system.ris_xy_m"));
    }
    num("asd_deg", c.asd_deg);
    num("alpha_fpc", c.alpha_fpc);
    num("shadow_delta_f", c.shadow_delta_f);
    num("shadow_sigma_db", c.shadow_sigma_db);
    num("decorrelation_distance_m", c.decorrelation_distance);
    if (s["ue_ris_rician_law"]) {
        c.ue_ris_rician_law = as_flag(s["ue_ris_rician_law"], "system.ue_ris_rician_law");
    }
    if (s["zbar_model"]) {
        const std::string z = as_string(s["zbar_model"], "system.zbar_model");
        if (z == "planar") {
            c.zbar_model = ZbarModel::planar;
        } else if (z == "ones") {
            c.zbar_model = ZbarModel::ones;
        } else {
            bad("system.zbar_model: expected planar or ones");
        }
    }
    num("ris_phase_rad", c.ris_phase);
}

const std::set<std::string> kSweepParams = {"none", "M", "K", "L", "N", "rho_db", "d_H_fraction", "ris_position"};

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ExperimentSpec parse_experiment(const std::string &yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception &e) {
        bad(std::string("YAML parse error: ") + e.what());
    }
    check_keys(root, "top level",
               {"schema_version", "system", "sweep", "n_scenarios", "modes", "mc_trials", "mc_chunk",
                "record_runtime", "maxmin"});
    if (!root["schema_version"] || as_int(root["schema_version"], "schema_version") != kSchemaVersion) {
        bad("schema_version must be " + std::to_string(kSchemaVersion));
    }
    ExperimentSpec spec;
    if (root["system"]) {
        parse_system(root["system"], spec.base);
    }
    if (root["sweep"]) {
        const YAML::Node sw = root["sweep"];
        check_keys(sw, "sweep", {"param", "values"});
        spec.sweep_param = sw["param"] ? as_string(sw["param"], "sweep.param") : "none";
        if (!kSweepParams.count(spec.sweep_param)) {
            bad("sweep.param: unknown parameter '" + spec.sweep_param + "'");
        }
        if (spec.sweep_param != "none") {
            if (!sw["values"] || !sw["values"].IsSequence() || sw["values"].size() == 0) {
                bad("sweep.values: expected a non-empty list");
            }
            for (const auto &v : sw["values"]) {
                SweepValue sv;
                if (spec.sweep_param == "ris_position") {
                    if (!v.IsSequence() || v.size() != 2) {
                        bad("sweep.values: ris_position entries are [x, y]");
                    }
                    sv.x = as_number(v[0], "sweep.values");
                    sv.y = as_number(v[1], "sweep.values");
                    sv.label = format_double(sv.x) + ":" + format_double(sv.y);
                } else {
                    sv.x = as_number(v, "sweep.values");
                    sv.label = format_double(sv.x);
                }
                spec.sweep_values.push_back(sv);
            }
        }
    }
    if (spec.sweep_param == "none") {
        spec.sweep_values = {SweepValue{0.0, 0.0, ""}};
    }
    if (root["n_scenarios"]) {
        spec.n_scenarios = as_int(root["n_scenarios"], "n_scenarios");
    }
    if (spec.n_scenarios < 1) {
        bad("n_scenarios must be >= 1");
    }
    if (root["modes"]) {
        const YAML::Node ms = root["modes"];
        if (!ms.IsSequence() || ms.size() == 0) {
            bad("modes: expected a non-empty list");
        }
        for (const auto &m : ms) {
            check_keys(m, "modes[]", {"combiner", "emi", "power", "ris"});
            Mode mode;
            if (m["combiner"]) {
                mode.combiner = combiner_from_string(as_string(m["combiner"], "modes[].combiner"));
            }
            if (m["emi"]) {
                mode.emi = as_flag(m["emi"], "modes[].emi");
            }
            if (m["power"]) {
                mode.power = power_method_from_string(as_string(m["power"], "modes[].power"));
            }
            if (m["ris"]) {
                mode.ris = as_flag(m["ris"], "modes[].ris");
            }
            spec.modes.push_back(mode);
        }
    } else {
        spec.modes = {Mode{}};
    }
    if (root["mc_trials"]) {
        spec.mc_trials = as_int(root["mc_trials"], "mc_trials");
    }
    if (root["mc_chunk"]) {
        spec.mc_chunk = as_int(root["mc_chunk"], "mc_chunk");
    }
    if (spec.mc_trials < 0 || spec.mc_chunk < 1) {
        bad("mc_trials must be >= 0 and mc_chunk >= 1");
    }
    if (root["record_runtime"]) {
        spec.record_runtime = as_flag(root["record_runtime"], "record_runtime");
    }
    if (root["maxmin"]) {
        const YAML::Node mm = root["maxmin"];
        check_keys(mm, "maxmin", {"epsilon", "alternations"});
        if (mm["epsilon"]) {
            spec.maxmin.epsilon = as_number(mm["epsilon"], "maxmin.epsilon");
        }
        if (mm["alternations"]) {
            spec.maxmin.alternations = as_int(mm["alternations"], "maxmin.alternations");
        }
        if (!(spec.maxmin.epsilon > 0.0) || spec.maxmin.alternations < 0) {
            bad("maxmin: epsilon > 0 and alternations >= 0 required");
        }
    }
    // every sweep point must yield a valid configuration
    for (const auto &v : spec.sweep_values) {
        apply_sweep(spec.base, spec.sweep_param, v).validate();
    }
    return spec;
}

ExperimentSpec load_experiment(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("io", "cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

SystemConfig apply_sweep(const SystemConfig &base, const std::string &param, const SweepValue &v) {
    SystemConfig c = base;
    auto count = [&](const char *what) {
        if (!(v.x >= 1.0) || v.x != std::floor(v.x) || v.x > 1e6) {
            bad(std::string("sweep value for ") + what + " must be a positive integer");
        }
        return static_cast<int>(v.x);
    };
    if (param == "none") {
    } else if (param == "M") {
        c.M = count("M");
    } else if (param == "K") {
        c.K = count("K");
        if (!c.pilot_power.empty()) {
            c.pilot_power.resize(c.K, c.pilot_power.back());
        }
    } else if (param == "L") {
        c.L = count("L");
    } else if (param == "N") {
        const int n = count("N");
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        if (side * side != n) {
            bad("sweep value for N must be a perfect square (square RIS)");
        }
        c.N_H = c.N_V = side;
    } else if (param == "rho_db") {
        c.rho_db = v.x;
    } else if (param == "d_H_fraction") {
        c.d_H = c.d_V = v.x;
    } else if (param == "ris_position") {
        c.ris_xy = std::make_pair(v.x, v.y);
    } else {
        bad("unknown sweep parameter '" + param + "'");
    }
    return c;
}

namespace {

// Modes sharing (ris, emi) share the snapshot and the Monte-Carlo run.
struct Group {
    bool ris, emi;
    std::vector<std::size_t> modes;
};

std::vector<Group> group_modes(const std::vector<Mode> &modes) {
    std::vector<Group> out;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Group &g) { return g.ris == modes[i].ris && g.emi == modes[i].emi; });
        if (it == out.end()) {
            out.push_back(Group{modes[i].ris, modes[i].emi, {i}});
        } else {
            it->modes.push_back(i);
        }
    }
    return out;
}

struct Task {
    std::size_t sweep;
    int scenario;
    std::size_t group;
};

struct TaskOutput {
    std::vector<Record> records;
    std::vector<std::string> warnings;
    int iterations = 0;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

TaskOutput run_task(const ExperimentSpec &spec, const Task &task, const Group &group, std::uint64_t seed,
                    int mc_threads) {
    TaskOutput out;
    SystemConfig cfg = apply_sweep(spec.base, spec.sweep_param, spec.sweep_values[task.sweep]);
    cfg.ris_enabled = group.ris;
    cfg.emi_enabled = group.emi;
    cfg.seed = seed;
    // geometry depends on the scenario index only, so every sweep point and
    // mode sees the same drop (up to node counts)
    RandomStream geo(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::scenario),
                                        static_cast<std::uint64_t>(task.scenario)}));
    const Scenario sc = generate_scenario(cfg, geo);
    const Snapshot snap = make_snapshot(cfg, sc);

    std::optional<UatfEstimate> mc;
    double mc_ms = 0.0;
    if (spec.mc_trials > 0) {
        const auto t0 = std::chrono::steady_clock::now();
        RunOptions ro;
        ro.trials = spec.mc_trials;
        ro.chunk = spec.mc_chunk;
        ro.threads = mc_threads;
        ro.seed = derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::monte_carlo), task.sweep,
                                     static_cast<std::uint64_t>(task.scenario), group.ris ? 1u : 0u,
                                     group.emi ? 1u : 0u});
        mc = estimate_uatf_terms(snap.oracle_inputs(), ro);
        mc_ms = elapsed_ms(t0) / static_cast<double>(group.modes.size());
    }

    const double prelog = static_cast<double>(cfg.tau_u()) / cfg.tau_c;
    for (std::size_t mi : group.modes) {
        const auto t0 = std::chrono::steady_clock::now();
        const Mode &mode = spec.modes[mi];
        const ModeResult r = evaluate_mode(snap, mode.combiner, mode.power, spec.maxmin);
        out.iterations += r.power.iterations;
        const SeResult se = spectral_efficiency(r.sinr, cfg.tau_u(), cfg.tau_c);
        std::optional<RVec> sinr_mc;
        if (mc) {
            sinr_mc = sinr_from_estimates(*mc, r.weights, r.power.p, cfg.noise_power);
        }
        const double ms = elapsed_ms(t0) + mc_ms;
        for (int k = 0; k < cfg.K; ++k) {
            Record rec;
            rec.sweep_index = task.sweep;
            rec.scenario = task.scenario;
            rec.mode_index = mi;
            rec.ue = k;
            rec.sinr_closed = r.sinr(k);
            rec.se_closed = se.se(k);
            rec.power = r.power.p(k);
            rec.runtime_ms = ms;
            if (sinr_mc) {
                const double g = std::max((*sinr_mc)(k), 0.0);
                rec.sinr_mc = g;
                rec.se_mc = prelog * std::log2(1.0 + g);
                if (rec.se_closed > 0.0 && std::abs(*rec.se_mc - rec.se_closed) / rec.se_closed > 0.02) {
                    std::ostringstream w;
                    w << "closed/oracle SE gap > 2%: sweep=" << spec.sweep_values[task.sweep].label
                      << " scenario=" << task.scenario << " mode=" << mi << " ue=" << k
                      << " closed=" << format_double(rec.se_closed) << " mc=" << format_double(*rec.se_mc);
                    out.warnings.push_back(w.str());
                }
            }
            out.records.push_back(rec);
        }
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec &spec, std::uint64_t seed, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Group> groups = group_modes(spec.modes);
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < spec.sweep_values.size(); ++s) {
        for (int sc = 0; sc < spec.n_scenarios; ++sc) {
            for (std::size_t g = 0; g < groups.size(); ++g) {
                tasks.push_back(Task{s, sc, g});
            }
        }
    }
    threads = std::max(1, threads);
    // few big tasks: parallelize inside the Monte-Carlo loop instead
    const bool outer = tasks.size() >= static_cast<std::size_t>(threads);
    const int workers = outer ? threads : 1;
    const int mc_threads = outer ? 1 : threads;

    std::vector<TaskOutput> outputs(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mu;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) {
                return;
            }
            try {
                outputs[i] = run_task(spec, tasks[i], groups[tasks[i].group], seed, mc_threads);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    ExperimentResult res;
    for (auto &o : outputs) {
        res.records.insert(res.records.end(), o.records.begin(), o.records.end());
        res.warnings.insert(res.warnings.end(), o.warnings.begin(), o.warnings.end());
        res.maxmin_iterations += o.iterations;
    }
    std::sort(res.records.begin(), res.records.end(), [](const Record &a, const Record &b) {
        return std::tie(a.sweep_index, a.scenario, a.mode_index, a.ue) <
               std::tie(b.sweep_index, b.scenario, b.mode_index, b.ue);
    });
    res.wall_ms = elapsed_ms(t0);
    return res;
}

std::string format_csv(const ExperimentSpec &spec, const ExperimentResult &result) {
    std::ostringstream os;
    os << "# schema_version: " << kSchemaVersion << "\n";
    os << "sweep_param,sweep_value,scenario,mode_combiner,mode_emi,mode_power,mode_ris,ue,sinr_closed,se_closed,"
          "sinr_mc,se_mc,runtime_ms\n";
    for (const Record &r : result.records) {
        const Mode &m = spec.modes[r.mode_index];
        os << spec.sweep_param << ',' << spec.sweep_values[r.sweep_index].label << ',' << r.scenario << ','
           << to_string(m.combiner) << ',' << (m.emi ? "on" : "off") << ',' << to_string(m.power) << ','
           << (m.ris ? "on" : "off") << ',' << r.ue << ',' << format_double(r.sinr_closed) << ','
           << format_double(r.se_closed) << ',' << (r.sinr_mc ? format_double(*r.sinr_mc) : "") << ','
           << (r.se_mc ? format_double(*r.se_mc) : "") << ','
           << (spec.record_runtime ? format_double(r.runtime_ms) : "") << '\n';
    }
    return os.str();
}

CdfTable emit_cdf(std::vector<double> samples) {
    if (samples.empty()) {
        throw Error("invalid_argument", "emit_cdf: no samples");
    }
    std::sort(samples.begin(), samples.end());
    CdfTable t;
    const std::size_t n = samples.size();
    t.ordinates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.ordinates[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }
    // smallest order statistic whose ordinate reaches 0.05
    const auto idx = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
    t.q05 = samples[std::max<std::size_t>(idx, 1) - 1];
    t.values = std::move(samples);
    return t;
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw Error("invalid_input", what + ": '" + s + "' is not a number");
    }
}

std::string cdf_text(const std::map<std::vector<std::string>, std::vector<double>> &groups) {
    std::ostringstream os;
    os << "# schema_version: " << kSchemaVersion << "\n";
    os << "sweep_param,sweep_value,mode_combiner,mode_emi,mode_power,mode_ris,source,rank,se,cdf,q05\n";
    for (const auto &[key, samples] : groups) {
        const CdfTable t = emit_cdf(samples);
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            for (const auto &k : key) {
                os << k << ',';
            }
            os << i << ',' << format_double(t.values[i]) << ',' << format_double(t.ordinates[i]) << ','
               << format_double(t.q05) << '\n';
        }
    }
    return os.str();
}

void write_file(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("io", "cannot write '" + p.string() + "'");
    }
    out << text;
    if (!out) {
        throw Error("io", "write failed for '" + p.string() + "'");
    }
}

using CdfGroups = std::map<std::vector<std::string>, std::vector<double>>;

// key layout matches the cdf.csv columns up to and including `source`
void add_cdf_sample(CdfGroups &g, std::vector<std::string> key, const std::string &source, double v) {
    key.push_back(source);
    g[key].push_back(v);
}

} // namespace

void cdf_from_csv(const std::string &in_path, const std::string &out_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) {
        throw Error("io", "cannot read '" + in_path + "'");
    }
    std::string line;
    std::vector<std::string> header;
    CdfGroups groups;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> f = split_csv_line(line);
        if (header.empty()) {
            header = f;
            continue;
        }
        if (f.size() != header.size()) {
            throw Error("invalid_input", "cdf: row with " + std::to_string(f.size()) + " fields, header has " +
                                             std::to_string(header.size()));
        }
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < f.size(); ++i) {
            row[header[i]] = f[i];
        }
        for (const char *col : {"sweep_param", "sweep_value", "mode_combiner", "mode_emi", "mode_power", "mode_ris",
                                "se_closed", "se_mc"}) {
            if (!row.count(col)) {
                throw Error("invalid_input", std::string("cdf: missing column '") + col + "'");
            }
        }
        const std::vector<std::string> key = {row["sweep_param"], row["sweep_value"], row["mode_combiner"],
                                              row["mode_emi"],    row["mode_power"],  row["mode_ris"]};
        add_cdf_sample(groups, key, "closed", parse_number(row["se_closed"], "se_closed"));
        if (!row["se_mc"].empty()) {
            add_cdf_sample(groups, key, "mc", parse_number(row["se_mc"], "se_mc"));
        }
    }
    if (groups.empty()) {
        throw Error("invalid_input", "cdf: no data rows in '" + in_path + "'");
    }
    write_file(out_path, cdf_text(groups));
}

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_outputs(const std::string &dir, const ExperimentSpec &spec, const ExperimentResult &result,
                   const std::string &config_text, std::uint64_t seed, int threads) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("io", "cannot create output directory '" + dir + "': " + ec.message());
    }
    const fs::path base(dir);
    write_file(base / "results.csv", format_csv(spec, result));

    CdfGroups groups;
    for (const Record &r : result.records) {
        const Mode &m = spec.modes[r.mode_index];
        const std::vector<std::string> key = {spec.sweep_param,      spec.sweep_values[r.sweep_index].label,
                                              to_string(m.combiner), m.emi ? "on" : "off",
                                              to_string(m.power),    m.ris ? "on" : "off"};
        add_cdf_sample(groups, key, "closed", r.se_closed);
        if (r.se_mc) {
            add_cdf_sample(groups, key, "mc", *r.se_mc);
        }
    }
    write_file(base / "cdf.csv", cdf_text(groups));

    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(fnv1a64(config_text)));
    j["config_hash_fnv1a64"] = hash;
    j["seed"] = seed;
    j["threads"] = threads;
    j["mc_trials"] = spec.mc_trials;
    j["mc_chunk"] = spec.mc_chunk;
    j["n_scenarios"] = spec.n_scenarios;
    j["sweep"]["param"] = spec.sweep_param;
    for (const auto &v : spec.sweep_values) {
        j["sweep"]["values"].push_back(v.label);
    }
    for (const Mode &m : spec.modes) {
        j["modes"].push_back({{"combiner", to_string(m.combiner)},
                              {"emi", m.emi ? "on" : "off"},
                              {"power", to_string(m.power)},
                              {"ris", m.ris ? "on" : "off"}});
    }
    j["records"] = result.records.size();
    j["maxmin_bisection_iterations"] = result.maxmin_iterations;
    j["wall_ms"] = result.wall_ms;
    j["warnings"] = result.warnings;
    j["outputs"] = {{"results", "results.csv"}, {"cdf", "cdf.csv"}};
    write_file(base / "manifest.json", j.dump(2) + "\n");
}

} // namespace riscf
