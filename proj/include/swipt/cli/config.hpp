#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swipt/analysis.hpp"
#include "swipt/channel.hpp"
#include "swipt/mc_engine.hpp"

namespace swipt::cli {

/// Bad configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs besides its own flags.
struct RunConfig {
    NetworkConfig network;
    ProtocolParams protocol;
    SimulationOptions sim;
    NumericOptions numeric;
    std::string detector = "proposed";
    std::optional<std::uint64_t> seed;  ///< unset until a flag, the file or SWIPT_SEED provides one
};

/**
 * Applies one dotted key. Known sections: network, protocol, sim, analysis.
 * `where` prefixes error messages (for example "run.cfg:12").
 */
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where);

/// Parses `key = value` lines; '#' starts a comment, "[section]" prefixes following keys.
void load_config_text(RunConfig& cfg, const std::string& text, const std::string& source);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Fully resolved settings as ordered key/value pairs (re-loadable through apply_setting).
std::vector<std::pair<std::string, std::string>> resolved_settings(const RunConfig& cfg);

/// Seed precedence: explicit value, then SWIPT_SEED, then 1.
std::uint64_t resolve_seed(const RunConfig& cfg);

/// "lo:hi:step" or a comma-separated list.
std::vector<double> parse_values(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace swipt::cli
