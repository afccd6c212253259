#include "swipt/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swipt/analysis.hpp"
#include "swipt/cli/config.hpp"
#include "swipt/detectors.hpp"
#include "swipt/mc_engine.hpp"
#include "swipt/optimizer.hpp"

namespace swipt::cli {

namespace {

using json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string render_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
        s += '\n';
    }
    return s;
}

json table_json(const Table& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(obj);
    }
    return arr;
}

// Result of a command: a table, or a JSON document with an optional CSV summary.
struct Result {
    Table table;
    std::optional<json> document;
};

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string manifest_path;
    std::string format;
    std::string seed;
    std::string threads;
};

// Flag that maps onto a config key; applied after the file and --set entries.
struct Binding {
    CLI::Option* option = nullptr;
    std::string key;
    std::string extra_key;
    std::string extra_value;
    std::string value;
};

class Bindings {
public:
    void bind(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help,
              const std::string& extra_key = {}, const std::string& extra_value = {}) {
        auto& b = store_.emplace_back();
        b.key = key;
        b.extra_key = extra_key;
        b.extra_value = extra_value;
        b.option = app->add_option(flag, b.value, help);
    }

    void apply(RunConfig& cfg) const {
        for (const auto& b : store_) {
            if (b.option->count() == 0) continue;
            const std::string where = "option " + b.option->get_name();
            if (!b.extra_key.empty()) apply_setting(cfg, b.extra_key, b.extra_value, where);
            apply_setting(cfg, b.key, b.value, where);
        }
    }

private:
    std::deque<Binding> store_;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("-c,--config", c.config_path, "Key/value config file");
    app->add_option("--set", c.sets, "Override a config key (key=value), repeatable");
    app->add_option("-o,--out", c.out_path, "Output file (default: stdout)");
    app->add_option("--manifest", c.manifest_path, "Manifest path (default: <out>.manifest.json)");
    app->add_option("--format", c.format, "csv or json (default from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--seed", c.seed, "Root seed (falls back to SWIPT_SEED, then 1)");
    app->add_option("--threads", c.threads, "Worker threads for simulation");
}

void bind_scenario(CLI::App* app, Bindings& b) {
    b.bind(app, "--snr", "network.snr_db", "Transmit SNR P_s/N_0 in dB");
    b.bind(app, "--M", "network.modulation_order", "PSK order");
    b.bind(app, "--delta", "network.delta", "Energy-harvesting efficiency");
    b.bind(app, "--protocol", "protocol.kind", "ps or ts");
}

void bind_sim(CLI::App* app, Bindings& b) {
    b.bind(app, "--rho", "protocol.ratio", "PS ratio (selects ps)", "protocol.kind", "ps");
    b.bind(app, "--alpha", "protocol.ratio", "TS ratio (selects ts)", "protocol.kind", "ts");
    b.bind(app, "--ratio", "protocol.ratio", "PS or TS ratio for the configured protocol");
    b.bind(app, "--detector", "sim.detector", "exact-mld, proposed, sd-only, a comma list, or all");
    b.bind(app, "--trials", "sim.trials", "Trial cap in detected symbols");
    b.bind(app, "--min-errors", "sim.min_errors", "Stop once every detector has this many errors");
    b.bind(app, "--bypass", "sim.relay_bypass", "Silence the relay and zero the threshold (true/false)");
}

RunConfig resolve(const Common& c, const Bindings& b) {
    RunConfig cfg;
    if (!c.config_path.empty()) load_config_file(cfg, c.config_path);
    for (const auto& s : c.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1), "--set " + s);
    }
    b.apply(cfg);
    if (!c.seed.empty()) apply_setting(cfg, "sim.seed", c.seed, "option --seed");
    if (!c.threads.empty()) apply_setting(cfg, "sim.threads", c.threads, "option --threads");
    cfg.seed = resolve_seed(cfg);
    cfg.sim.seed = *cfg.seed;
    try {
        cfg.network.validate();
        cfg.protocol.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::vector<json> estimate_row(const NetworkConfig& n, const ProtocolParams& p, const SerEstimate& e) {
    return {n.snr_db,  to_string(p.protocol), p.ratio,  to_string(e.detector), n.modulation_order, e.ser,
            e.ci_low,  e.ci_high,            e.trials, e.errors,              e.seed};
}

const std::vector<std::string> kEstimateColumns{"snr_db", "protocol", "ratio",  "detector", "M",   "ser",
                                                "ci_low", "ci_high",  "trials", "errors",   "seed"};

Result cmd_simulate(const RunConfig& cfg) {
    Result r;
    r.table.columns = kEstimateColumns;
    const auto detectors = detectors_from_string(cfg.detector);
    for (const auto& e : simulate_ser(cfg.network, cfg.protocol, detectors, cfg.sim)) {
        r.table.rows.push_back(estimate_row(cfg.network, cfg.protocol, e));
    }
    return r;
}

Result cmd_sweep(const RunConfig& cfg, const std::string& axis_name, const std::string& values) {
    SweepSpec spec;
    spec.axis = sweep_axis_from_string(axis_name);
    spec.values = parse_values(values);
    spec.network = cfg.network;
    spec.protocol = cfg.protocol;
    spec.detectors = detectors_from_string(cfg.detector);
    spec.sim = cfg.sim;
    Result r;
    r.table.columns = {"axis", "value"};
    r.table.columns.insert(r.table.columns.end(), kEstimateColumns.begin(), kEstimateColumns.end());
    for (const auto& row : run_sweep(spec)) {
        std::vector<json> cells{to_string(spec.axis), row.value};
        const auto rest = estimate_row(row.network, row.protocol, row.estimate);
        cells.insert(cells.end(), rest.begin(), rest.end());
        r.table.rows.push_back(std::move(cells));
    }
    return r;
}

Result cmd_analyze(const RunConfig& cfg, const std::string& curve, const std::string& grid_text) {
    const auto grid = parse_values(grid_text);
    const NetworkConfig& n = cfg.network;
    Result r;
    auto& t = r.table;
    if (curve == "closed-ps") {
        t.columns = {"rho", "P_C", "P_E", "P_e", "dP_e"};
        for (const double x : grid) {
            const auto c = avg_ser_closed_ps(x, n);
            t.rows.push_back({x, c.P_C, c.P_E, c.P_e, ser_derivative_ps(x, n)});
        }
    } else if (curve == "closed-ts") {
        t.columns = {"alpha", "P_C", "P_E", "P_e"};
        for (const double x : grid) {
            const auto c = avg_ser_closed_ts(x, n);
            t.rows.push_back({x, c.P_C, c.P_E, c.P_e});
        }
    } else if (curve == "prop1-numeric" || curve == "prop2-numeric") {
        const bool ps = curve == "prop1-numeric";
        const Protocol proto = ps ? Protocol::PowerSplitting : Protocol::TimeSwitching;
        t.columns = {ps ? "rho" : "alpha", "P_e_numeric", "P_e_closed"};
        for (const double x : grid) {
            const ProtocolParams p{proto, x};
            t.rows.push_back({x, avg_ser_numeric(p, n, cfg.numeric), avg_ser_closed(p, n).P_e});
        }
    } else if (curve == "tradeoff") {
        t.columns = {cfg.protocol.protocol == Protocol::PowerSplitting ? "rho" : "alpha", "P_C_dominant",
                     "P_E_dominant"};
        for (const auto& p : tradeoff_curves(grid, n, ChannelGains{}, cfg.protocol.protocol)) {
            t.rows.push_back({p.ratio, p.p_c, p.p_e});
        }
    } else {
        throw ConfigError("unknown curve '" + curve +
                          "' (expected closed-ps, closed-ts, prop1-numeric, prop2-numeric or tradeoff)");
    }
    return r;
}

Result cmd_optimize(const RunConfig& cfg, const std::string& method_name, const std::string& grid_text) {
    const OptimizeMethod method = optimize_method_from_string(method_name);
    const Protocol protocol = cfg.protocol.protocol;
    RatioOptimum opt;
    switch (method) {
        case OptimizeMethod::DerivativeRoot:
            if (protocol != Protocol::PowerSplitting) {
                throw ConfigError("method 'root' is only available for the ps protocol (closed-form derivative)");
            }
            opt = optimal_ratio_root(cfg.network);
            break;
        case OptimizeMethod::ClosedFormMin:
            opt = optimal_ratio_minimize(cfg.network, protocol, Objective::Closed);
            break;
        case OptimizeMethod::NumericAvgMin:
            opt = optimal_ratio_minimize(cfg.network, protocol, Objective::Numeric, {}, cfg.numeric);
            break;
        case OptimizeMethod::SimulatedGrid: {
            const auto grid = parse_values(grid_text);
            opt = optimal_ratio_simulated(cfg.network, protocol, grid, cfg.sim);
            break;
        }
    }
    json doc = json::object();
    doc["protocol"] = to_string(opt.protocol);
    doc["method"] = to_string(opt.method);
    doc["M"] = cfg.network.modulation_order;
    doc["snr_db"] = cfg.network.snr_db;
    doc["ratio"] = opt.ratio;
    doc["objective_at_opt"] = opt.objective_at_opt;
    doc["bracket_low"] = opt.bracket_low;
    doc["bracket_high"] = opt.bracket_high;
    doc["evaluations"] = opt.evaluations;
    doc["fallback_grid"] = opt.fallback_grid;
    if (opt.fallback_grid) doc["warning"] = "coarse scan not unimodal; reporting the fine-grid minimum";
    if (method == OptimizeMethod::SimulatedGrid) doc["seed"] = cfg.sim.seed;
    json grid = json::array();
    for (const auto& g : opt.grid) {
        json p = json::object();
        p["ratio"] = g.ratio;
        if (method == OptimizeMethod::SimulatedGrid) {
            p["ser"] = g.value;
            p["ci_low"] = g.ci_low;
            p["ci_high"] = g.ci_high;
            p["trials"] = g.trials;
            p["errors"] = g.errors;
        } else {
            p["P_e"] = g.value;
        }
        grid.push_back(p);
    }
    doc["grid"] = grid;

    Result r;
    r.document = doc;
    r.table.columns = {"protocol", "method", "M", "snr_db", "ratio", "objective_at_opt", "bracket_low",
                       "bracket_high", "evaluations", "fallback_grid"};
    r.table.rows.push_back({doc["protocol"], doc["method"], doc["M"], doc["snr_db"], doc["ratio"],
                            doc["objective_at_opt"], doc["bracket_low"], doc["bracket_high"], doc["evaluations"],
                            doc["fallback_grid"]});
    return r;
}

Result cmd_complexity(const std::string& orders, int riemann) {
    Result r;
    r.table.columns = {"detector", "M", "S", "additions", "multiplications", "bessel", "table_lookups"};
    for (const int m : parse_int_list(orders)) {
        for (const auto row : {ComplexityRow::ReferenceMld, ComplexityRow::ReferenceApproxMld, ComplexityRow::Proposed}) {
            const OpCount c = count_operations(m, row, riemann);
            r.table.rows.push_back(
                {to_string(row), m, riemann, c.additions, c.multiplications, c.bessel_evals, c.table_lookups});
        }
    }
    return r;
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Original arguments without file-based inputs, plus every resolved setting.
std::vector<std::string> replay_args(const std::vector<std::string>& args, const RunConfig& cfg) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "-c" || a == "--config" || a == "--manifest") {
            ++i;
            continue;
        }
        if (a.rfind("--config=", 0) == 0 || a.rfind("--manifest=", 0) == 0) continue;
        out.push_back(a);
    }
    for (const auto& [k, v] : resolved_settings(cfg)) {
        out.push_back("--set");
        out.push_back(k + "=" + v);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ConfigError("failed writing '" + path + "'");
}

int emit(const Result& result, const Common& c, const std::string& command, const std::vector<std::string>& args,
         const RunConfig& cfg, double seconds, const std::string& started, std::ostream& out) {
    std::string format = c.format;
    if (format.empty()) {
        const auto& p = c.out_path;
        const bool json_ext = p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0;
        format = json_ext || (p.empty() && result.document) ? "json" : "csv";
    }
    std::string text;
    if (format == "json") {
        text = (result.document ? *result.document : table_json(result.table)).dump(2) + "\n";
    } else {
        text = render_csv(result.table);
    }
    if (c.out_path.empty()) {
        out << text;
        return kExitOk;
    }
    write_text(c.out_path, text);

    json manifest = json::object();
    manifest["tool"] = "swipt-ddf";
    manifest["tool_version"] = kToolVersion;
    manifest["command"] = command;
    manifest["args"] = args;
    manifest["replay_args"] = replay_args(args, cfg);
    json config = json::object();
    for (const auto& [k, v] : resolved_settings(cfg)) config[k] = v;
    manifest["config"] = config;
    manifest["seed"] = cfg.sim.seed;
    manifest["format"] = format;
    manifest["outputs"] = json::array({c.out_path});
    manifest["started_at"] = started;
    manifest["wall_clock_seconds"] = seconds;
    const std::string mpath = c.manifest_path.empty() ? c.out_path + ".manifest.json" : c.manifest_path;
    write_text(mpath, manifest.dump(2) + "\n");
    return kExitOk;
}

int run_replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out,
               std::ostream& err) {
    std::ifstream f(manifest_path);
    if (!f) throw ConfigError("cannot open manifest '" + manifest_path + "'");
    json m;
    try {
        m = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
    }
    if (!m.contains("replay_args") || !m["replay_args"].is_array()) {
        throw ConfigError("manifest '" + manifest_path + "' has no replay_args");
    }
    auto args = m["replay_args"].get<std::vector<std::string>>();
    if (!out_override.empty()) {
        bool replaced = false;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "-o" || args[i] == "--out") {
                args[i + 1] = out_override;
                replaced = true;
            }
        }
        if (!replaced) {
            args.push_back("--out");
            args.push_back(out_override);
        }
    }
    return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SWIPT differential decode-and-forward relay toolkit", "swipt-ddf"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    Bindings bindings;

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo SER of one scenario");
    add_common(simulate, common);
    bind_scenario(simulate, bindings);
    bind_sim(simulate, bindings);

    std::string axis = "snr_db";
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo SER along one axis");
    add_common(sweep, common);
    bind_scenario(sweep, bindings);
    bind_sim(sweep, bindings);
    sweep->add_option("--axis", axis, "snr_db, ratio, delta or d_rd");
    sweep->add_option("--values", values, "lo:hi:step or comma list")->required();

    std::string curve;
    std::string grid = "0.05:0.95:0.01";
    auto* analyze = app.add_subcommand("analyze", "Analytical SER curves over a ratio grid");
    add_common(analyze, common);
    bind_scenario(analyze, bindings);
    bindings.bind(analyze, "--method", "analysis.method", "quadrature, qmc or gauss-laguerre");
    analyze->add_option("--curve", curve, "closed-ps, closed-ts, prop1-numeric, prop2-numeric or tradeoff")
        ->required();
    analyze->add_option("--grid,--rho-grid,--alpha-grid", grid, "Ratio grid lo:hi:step or comma list");

    std::string method = "root";
    std::string sim_grid = "0.05:0.95:0.02";
    auto* optimize = app.add_subcommand("optimize", "Locate the SER-optimal PS/TS ratio");
    add_common(optimize, common);
    bind_scenario(optimize, bindings);
    bindings.bind(optimize, "--trials", "sim.trials", "Trials per grid point (sim-grid)");
    bindings.bind(optimize, "--min-errors", "sim.min_errors", "Early-stop error count (sim-grid)");
    bindings.bind(optimize, "--numeric-method", "analysis.method", "Averaging method for numeric-min");
    optimize->add_option("--method", method, "root, closed-min, numeric-min or sim-grid");
    optimize->add_option("--grid", sim_grid, "Ratio grid for sim-grid");

    std::string orders = "2,4,8";
    int riemann = 1;
    auto* complexity = app.add_subcommand("complexity", "Per-symbol operation counts");
    add_common(complexity, common);
    complexity->add_option("--M", orders, "Comma-separated PSK orders");
    complexity->add_option("--S", riemann, "Riemann subintervals of the reference MLD");

    std::string manifest_in;
    std::string replay_out;
    auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay->add_option("manifest", manifest_in, "Manifest JSON written next to an output")->required();
    replay->add_option("-o,--out", replay_out, "Write to this path instead of the recorded one");

    std::vector<std::string> argv_store{"swipt-ddf"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (replay->parsed()) return run_replay(manifest_in, replay_out, out, err);

        const auto start = std::chrono::steady_clock::now();
        const std::string started = utc_now();
        const RunConfig cfg = resolve(common, bindings);
        Result result;
        std::string command;
        if (simulate->parsed()) {
            command = "simulate";
            result = cmd_simulate(cfg);
        } else if (sweep->parsed()) {
            command = "sweep";
            result = cmd_sweep(cfg, axis, values);
        } else if (analyze->parsed()) {
            command = "analyze";
            result = cmd_analyze(cfg, curve, grid);
        } else if (optimize->parsed()) {
            command = "optimize";
            result = cmd_optimize(cfg, method, sim_grid);
        } else {
            command = "complexity";
            result = cmd_complexity(orders, riemann);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return emit(result, common, command, args, cfg, seconds, started, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoInteriorOptimum& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace swipt::cli
