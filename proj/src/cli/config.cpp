#include "swipt/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swipt/optimizer.hpp"

namespace swipt::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& message) {
    throw ConfigError(where.empty() ? message : where + ": " + message);
}

double to_double(const std::string& key, const std::string& value, const std::string& where) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) fail(where, "'" + key + "' expects a number, got '" + value + "'");
    return out;
}

std::int64_t to_int(const std::string& key, const std::string& value, const std::string& where) {
    // Accept 1e6-style integers as well.
    const double d = to_double(key, value, where);
    if (d != std::floor(d) || std::abs(d) > 9.0e18) fail(where, "'" + key + "' expects an integer, got '" + value + "'");
    return static_cast<std::int64_t>(d);
}

std::uint64_t to_u64(const std::string& key, const std::string& value, const std::string& where) {
    std::uint64_t out = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) fail(where, "'" + key + "' expects a non-negative integer, got '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value, const std::string& where) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    fail(where, "'" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value, const std::string& where) {
    const std::string key = trim(raw_key);
    auto& n = cfg.network;
    auto& s = cfg.sim;
    try {
        if (key == "network.snr_db") n.snr_db = to_double(key, value, where);
        else if (key == "network.source_power") n.source_power = to_double(key, value, where);
        else if (key == "network.delta") n.delta = to_double(key, value, where);
        else if (key == "network.modulation_order" || key == "network.M")
            n.modulation_order = static_cast<int>(to_int(key, value, where));
        else if (key == "network.slot_duration") n.slot_duration = to_double(key, value, where);
        else if (key == "network.d_sd") n.d_sd = to_double(key, value, where);
        else if (key == "network.d_sr") n.d_sr = to_double(key, value, where);
        else if (key == "network.d_rd") n.d_rd = to_double(key, value, where);
        else if (key == "network.pathloss_exponent") n.pathloss_exponent = to_double(key, value, where);
        else if (key == "network.antenna_noise_fraction") n.antenna_noise_fraction.fill(to_double(key, value, where));
        else if (key == "network.antenna_noise_fraction_sr") n.antenna_noise_fraction[0] = to_double(key, value, where);
        else if (key == "network.antenna_noise_fraction_sd") n.antenna_noise_fraction[1] = to_double(key, value, where);
        else if (key == "network.antenna_noise_fraction_rd") n.antenna_noise_fraction[2] = to_double(key, value, where);
        else if (key == "protocol.kind") cfg.protocol.protocol = protocol_from_string(value);
        else if (key == "protocol.ratio") cfg.protocol.ratio = to_double(key, value, where);
        else if (key == "sim.trials") s.max_trials = to_int(key, value, where);
        else if (key == "sim.min_errors") s.min_errors = to_int(key, value, where);
        else if (key == "sim.frame_length") s.frame_length = static_cast<int>(to_int(key, value, where));
        else if (key == "sim.batch_frames") s.batch_frames = static_cast<int>(to_int(key, value, where));
        else if (key == "sim.threads") s.threads = static_cast<int>(to_int(key, value, where));
        else if (key == "sim.relay_bypass") s.relay_bypass = to_bool(key, value, where);
        else if (key == "sim.seed") cfg.seed = to_u64(key, value, where);
        else if (key == "sim.detector") {
            detectors_from_string(value);
            cfg.detector = value;
        } else if (key == "analysis.method") cfg.numeric.method = averaging_method_from_string(value);
        else if (key == "analysis.samples") cfg.numeric.samples = to_int(key, value, where);
        else if (key == "analysis.nodes") cfg.numeric.nodes = static_cast<int>(to_int(key, value, where));
        else if (key == "analysis.tolerance") cfg.numeric.tolerance = to_double(key, value, where);
        else fail(where, "unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

void load_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = source + ":" + std::to_string(number);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(where, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(where, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(where, "empty key");
        if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
        apply_setting(cfg, key, value, where);
    }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    load_config_text(cfg, buf.str(), path);
}

std::vector<std::pair<std::string, std::string>> resolved_settings(const RunConfig& cfg) {
    const auto& n = cfg.network;
    const auto& s = cfg.sim;
    std::vector<std::pair<std::string, std::string>> out{
        {"network.snr_db", format_double(n.snr_db)},
        {"network.source_power", format_double(n.source_power)},
        {"network.delta", format_double(n.delta)},
        {"network.modulation_order", std::to_string(n.modulation_order)},
        {"network.slot_duration", format_double(n.slot_duration)},
        {"network.d_sd", format_double(n.d_sd)},
        {"network.d_sr", format_double(n.d_sr)},
        {"network.d_rd", format_double(n.d_rd)},
        {"network.pathloss_exponent", format_double(n.pathloss_exponent)},
        {"network.antenna_noise_fraction_sr", format_double(n.antenna_noise_fraction[0])},
        {"network.antenna_noise_fraction_sd", format_double(n.antenna_noise_fraction[1])},
        {"network.antenna_noise_fraction_rd", format_double(n.antenna_noise_fraction[2])},
        {"protocol.kind", to_string(cfg.protocol.protocol)},
        {"protocol.ratio", format_double(cfg.protocol.ratio)},
        {"sim.trials", std::to_string(s.max_trials)},
        {"sim.min_errors", std::to_string(s.min_errors)},
        {"sim.frame_length", std::to_string(s.frame_length)},
        {"sim.batch_frames", std::to_string(s.batch_frames)},
        {"sim.threads", std::to_string(s.threads)},
        {"sim.relay_bypass", s.relay_bypass ? "true" : "false"},
        {"sim.seed", std::to_string(resolve_seed(cfg))},
        {"sim.detector", cfg.detector},
        {"analysis.method", to_string(cfg.numeric.method)},
        {"analysis.samples", std::to_string(cfg.numeric.samples)},
        {"analysis.nodes", std::to_string(cfg.numeric.nodes)},
        {"analysis.tolerance", format_double(cfg.numeric.tolerance)},
    };
    return out;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("SWIPT_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec != std::errc() || ptr != end) throw ConfigError("SWIPT_SEED must be a non-negative integer");
        return v;
    }
    return 1;
}

std::vector<double> parse_values(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty value list");
    if (t.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(to_double("grid", trim(item), ""));
        if (parts.size() != 3) throw ConfigError("grid must be lo:hi:step, got '" + t + "'");
        try {
            return make_grid(parts[0], parts[1], parts[2]);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("bad grid '") + t + "': " + e.what());
        }
    }
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double("list", trim(item), ""));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(to_int("list", trim(item), "")));
    if (out.empty()) throw ConfigError("empty integer list");
    return out;
}

}  // namespace swipt::cli
