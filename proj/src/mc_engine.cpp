#include "swipt/mc_engine.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "swipt/analysis.hpp"
#include "swipt/detectors.hpp"
#include "swipt/modem.hpp"

namespace swipt {

namespace {

constexpr int kMaxDetectors = 3;

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Counts {
    std::int64_t trials = 0;
    std::array<std::int64_t, kMaxDetectors> errors{};
};

// Frame-invariant quantities.
struct Scenario {
    const NetworkConfig& cfg;
    const ProtocolParams& params;
    PskAlphabet alphabet;
    std::vector<DetectorKind> detectors;
    double slot = 1.0;
    double epsilon = 0.0;
    double eta = 0.0;
    bool bypass = false;
};

class FrameRunner {
public:
    explicit FrameRunner(const Scenario& s) : s_(s) {}

    // Simulates `length` data symbols of frame `index`; adds into `counts`.
    void run(std::uint64_t seed, std::int64_t index, int length, Counts& counts) {
        const NetworkConfig& cfg = s_.cfg;
        const int m = s_.alphabet.order();
        Rng rng(seed, static_cast<std::uint64_t>(index));
        const ChannelRealization ch = sample_channels(rng);
        const double p_r = s_.bypass ? 0.0 : harvested_power(s_.params, ch.h_sr, cfg);

        info_.resize(static_cast<std::size_t>(length));
        for (auto& x : info_) x = rng.index(m) + 1;
        const SymbolStream source = diff_encode(info_, s_.alphabet);

        const double id_fraction = s_.params.protocol == Protocol::PowerSplitting ? 1.0 - s_.params.ratio : 1.0;
        const LinkParams sr{cfg.source_power, s_.slot, cfg.path_gain(Link::SourceRelay), ch.h_sr,
                            cfg.noise(Link::SourceRelay), id_fraction};
        const LinkParams sd{cfg.source_power, s_.slot, cfg.path_gain(Link::SourceDestination), ch.h_sd,
                            cfg.noise(Link::SourceDestination), 1.0};
        const LinkParams rd{p_r, s_.slot, cfg.path_gain(Link::RelayDestination), ch.h_rd,
                            cfg.noise(Link::RelayDestination), 1.0};

        // Slot 1: broadcast.
        y_sr_.resize(source.coded.size());
        y_sd_.resize(source.coded.size());
        for (std::size_t k = 0; k < source.coded.size(); ++k) {
            y_sr_[k] = propagate(source.coded[k], sr, rng);
            y_sd_[k] = propagate(source.coded[k], sd, rng);
        }
        // Relay decision and re-encoding.
        relay_info_.resize(info_.size());
        for (std::size_t k = 1; k < y_sr_.size(); ++k) {
            relay_info_[k - 1] = relay_detect(y_sr_[k - 1], y_sr_[k], s_.alphabet);
        }
        const SymbolStream relayed = diff_encode(relay_info_, s_.alphabet);
        // Slot 2: relay transmission.
        y_rd_.resize(relayed.coded.size());
        for (std::size_t k = 0; k < relayed.coded.size(); ++k) y_rd_[k] = propagate(relayed.coded[k], rd, rng);

        DetectorInput in;
        in.sigma_sd = sd.noise.total();
        in.sigma_rd = rd.noise.total();
        in.epsilon = s_.epsilon;
        in.eta = s_.eta;
        for (std::size_t k = 1; k < y_sd_.size(); ++k) {
            in.y_sd_prev = y_sd_[k - 1];
            in.y_sd_curr = y_sd_[k];
            in.y_rd_prev = y_rd_[k - 1];
            in.y_rd_curr = y_rd_[k];
            const int truth = info_[k - 1];
            for (std::size_t d = 0; d < s_.detectors.size(); ++d) {
                int decision = 0;
                switch (s_.detectors[d]) {
                    case DetectorKind::ExactMld: decision = detect_exact_mld(in, s_.alphabet); break;
                    case DetectorKind::Proposed: decision = detect_proposed(in, s_.alphabet); break;
                    case DetectorKind::SdOnly: decision = detect_sd_only(in, s_.alphabet); break;
                }
                counts.errors[d] += decision != truth;
            }
        }
        counts.trials += length;
    }

    // S->R branch only.
    void run_relay(std::uint64_t seed, std::int64_t index, int length, Counts& counts) {
        const NetworkConfig& cfg = s_.cfg;
        const int m = s_.alphabet.order();
        Rng rng(seed, static_cast<std::uint64_t>(index));
        const ChannelRealization ch = sample_channels(rng);
        info_.resize(static_cast<std::size_t>(length));
        for (auto& x : info_) x = rng.index(m) + 1;
        const SymbolStream source = diff_encode(info_, s_.alphabet);
        const double id_fraction = s_.params.protocol == Protocol::PowerSplitting ? 1.0 - s_.params.ratio : 1.0;
        const LinkParams sr{cfg.source_power, s_.slot, cfg.path_gain(Link::SourceRelay), ch.h_sr,
                            cfg.noise(Link::SourceRelay), id_fraction};
        cplx prev = propagate(source.coded[0], sr, rng);
        for (std::size_t k = 1; k < source.coded.size(); ++k) {
            const cplx curr = propagate(source.coded[k], sr, rng);
            counts.errors[0] += relay_detect(prev, curr, s_.alphabet) != info_[k - 1];
            prev = curr;
        }
        counts.trials += length;
    }

private:
    const Scenario& s_;
    std::vector<int> info_;
    std::vector<int> relay_info_;
    std::vector<cplx> y_sr_, y_sd_, y_rd_;
};

template <class FrameFn>
Counts run_frames(const Scenario& scenario, const SimulationOptions& options, FrameFn frame_fn) {
    if (options.max_trials < 1) throw std::invalid_argument("trial count must be >= 1");
    if (options.frame_length < 1) throw std::invalid_argument("frame length must be >= 1");
    if (options.batch_frames < 1) throw std::invalid_argument("batch size must be >= 1");
    if (options.threads < 1) throw std::invalid_argument("thread count must be >= 1");

    const std::int64_t len = options.frame_length;
    const std::int64_t total_frames = (options.max_trials + len - 1) / len;
    const auto frame_length = [&](std::int64_t f) {
        return static_cast<int>(std::min<std::int64_t>(len, options.max_trials - f * len));
    };
    const std::size_t n_det = std::max<std::size_t>(scenario.detectors.size(), 1);

    Counts total;
    for (std::int64_t start = 0; start < total_frames; start += options.batch_frames) {
        const std::int64_t stop = std::min(total_frames, start + options.batch_frames);
        const int workers = static_cast<int>(std::min<std::int64_t>(options.threads, stop - start));
        std::vector<Counts> partial(static_cast<std::size_t>(workers));
        const auto work = [&](int w) {
            FrameRunner runner(scenario);
            for (std::int64_t f = start + w; f < stop; f += workers) {
                frame_fn(runner, f, frame_length(f), partial[static_cast<std::size_t>(w)]);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (const auto& p : partial) {
            total.trials += p.trials;
            for (std::size_t d = 0; d < n_det; ++d) total.errors[d] += p.errors[d];
        }
        if (options.min_errors > 0) {
            const auto fewest = *std::min_element(total.errors.begin(), total.errors.begin() + n_det);
            if (fewest >= options.min_errors) break;
        }
    }
    return total;
}

Scenario make_scenario(const NetworkConfig& cfg, const ProtocolParams& params, std::span<const DetectorKind> detectors,
                       const SimulationOptions& options) {
    cfg.validate();
    params.validate();
    if (detectors.size() > static_cast<std::size_t>(kMaxDetectors)) {
        throw std::invalid_argument("at most three detectors per run");
    }
    Scenario s{cfg, params, PskAlphabet(cfg.modulation_order), {detectors.begin(), detectors.end()}};
    s.slot = information_slot(params, cfg);
    s.bypass = options.relay_bypass;
    const int m = cfg.modulation_order;
    if (s.bypass) {
        // Uniform transition prior: relay branch carries no information.
        s.epsilon = static_cast<double>(m - 1) / m;
        s.eta = 0.0;
    } else {
        DetectorInput tmp;
        set_relay_statistics(tmp, relay_epsilon(params, cfg), m);
        s.epsilon = tmp.epsilon;
        s.eta = tmp.eta;
    }
    return s;
}

SerEstimate make_estimate(DetectorKind kind, std::int64_t trials, std::int64_t errors, std::uint64_t seed,
                          const std::string& fingerprint) {
    SerEstimate e;
    e.detector = kind;
    e.trials = trials;
    e.errors = errors;
    e.ser = trials > 0 ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0;
    const Interval ci = wilson_interval(errors, trials);
    e.ci_low = std::min(ci.low, e.ser);
    e.ci_high = std::max(ci.high, e.ser);
    e.seed = seed;
    e.fingerprint = fingerprint;
    return e;
}

}  // namespace

std::string to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::ExactMld: return "exact-mld";
        case DetectorKind::Proposed: return "proposed";
        case DetectorKind::SdOnly: return "sd-only";
    }
    return "unknown";
}

DetectorKind detector_from_string(const std::string& name) {
    if (name == "exact-mld" || name == "mld") return DetectorKind::ExactMld;
    if (name == "proposed") return DetectorKind::Proposed;
    if (name == "sd-only") return DetectorKind::SdOnly;
    throw std::invalid_argument("unknown detector '" + name + "' (expected exact-mld, proposed, sd-only or all)");
}

std::vector<DetectorKind> detectors_from_string(const std::string& name) {
    if (name == "all") return {DetectorKind::ExactMld, DetectorKind::Proposed, DetectorKind::SdOnly};
    std::vector<DetectorKind> out;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        const std::size_t comma = name.find(',', pos);
        const std::string item = name.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const DetectorKind kind = detector_from_string(item);
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

Interval wilson_interval(std::int64_t errors, std::int64_t trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The bounds are exact at the edges; rounding would otherwise leave 1e-18 residue.
    return {errors == 0 ? 0.0 : std::max(0.0, center - half), errors == trials ? 1.0 : std::min(1.0, center + half)};
}

std::string canonical_config(const NetworkConfig& cfg, const ProtocolParams& params, const SimulationOptions& options) {
    std::string s;
    const auto add = [&](const char* key, const std::string& value) {
        s += key;
        s += '=';
        s += value;
        s += '\n';
    };
    add("network.snr_db", fmt(cfg.snr_db));
    add("network.source_power", fmt(cfg.source_power));
    add("network.delta", fmt(cfg.delta));
    add("network.modulation_order", std::to_string(cfg.modulation_order));
    add("network.slot_duration", fmt(cfg.slot_duration));
    add("network.d_sd", fmt(cfg.d_sd));
    add("network.d_sr", fmt(cfg.d_sr));
    add("network.d_rd", fmt(cfg.d_rd));
    add("network.pathloss_exponent", fmt(cfg.pathloss_exponent));
    add("network.antenna_noise_fraction_sr", fmt(cfg.antenna_noise_fraction[0]));
    add("network.antenna_noise_fraction_sd", fmt(cfg.antenna_noise_fraction[1]));
    add("network.antenna_noise_fraction_rd", fmt(cfg.antenna_noise_fraction[2]));
    add("protocol.kind", to_string(params.protocol));
    add("protocol.ratio", fmt(params.ratio));
    add("sim.max_trials", std::to_string(options.max_trials));
    add("sim.min_errors", std::to_string(options.min_errors));
    add("sim.frame_length", std::to_string(options.frame_length));
    add("sim.batch_frames", std::to_string(options.batch_frames));
    add("sim.relay_bypass", options.relay_bypass ? "true" : "false");
    return s;
}

std::string config_fingerprint(const NetworkConfig& cfg, const ProtocolParams& params,
                               const SimulationOptions& options) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical_config(cfg, params, options)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<SerEstimate> simulate_ser(const NetworkConfig& cfg, const ProtocolParams& params,
                                      std::span<const DetectorKind> detectors, const SimulationOptions& options) {
    if (detectors.empty()) throw std::invalid_argument("at least one detector is required");
    const Scenario scenario = make_scenario(cfg, params, detectors, options);
    const Counts counts = run_frames(scenario, options, [&](FrameRunner& r, std::int64_t f, int n, Counts& c) {
        r.run(options.seed, f, n, c);
    });
    const std::string fp = config_fingerprint(cfg, params, options);
    std::vector<SerEstimate> out;
    for (std::size_t d = 0; d < detectors.size(); ++d) {
        out.push_back(make_estimate(detectors[d], counts.trials, counts.errors[d], options.seed, fp));
    }
    return out;
}

SerEstimate simulate_ser(const NetworkConfig& cfg, const ProtocolParams& params, DetectorKind detector,
                         const SimulationOptions& options) {
    const DetectorKind one[] = {detector};
    return simulate_ser(cfg, params, one, options).front();
}

SerEstimate simulate_relay_ser(const NetworkConfig& cfg, const ProtocolParams& params,
                               const SimulationOptions& options) {
    const DetectorKind none[] = {DetectorKind::SdOnly};
    const Scenario scenario = make_scenario(cfg, params, none, options);
    const Counts counts = run_frames(scenario, options, [&](FrameRunner& r, std::int64_t f, int n, Counts& c) {
        r.run_relay(options.seed, f, n, c);
    });
    return make_estimate(DetectorKind::SdOnly, counts.trials, counts.errors[0], options.seed,
                         config_fingerprint(cfg, params, options));
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::SnrDb: return "snr_db";
        case SweepAxis::Ratio: return "ratio";
        case SweepAxis::Delta: return "delta";
        case SweepAxis::DRd: return "d_rd";
    }
    return "unknown";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "snr_db" || name == "snr") return SweepAxis::SnrDb;
    if (name == "ratio" || name == "rho" || name == "alpha") return SweepAxis::Ratio;
    if (name == "delta") return SweepAxis::Delta;
    if (name == "d_rd") return SweepAxis::DRd;
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected snr_db, ratio, delta or d_rd)");
}

void apply_axis(SweepAxis axis, double value, NetworkConfig& cfg, ProtocolParams& params) {
    switch (axis) {
        case SweepAxis::SnrDb: cfg.snr_db = value; break;
        case SweepAxis::Ratio: params.ratio = value; break;
        case SweepAxis::Delta: cfg.delta = value; break;
        case SweepAxis::DRd:
            cfg.d_rd = value;
            cfg.d_sr = cfg.d_sd - value;
            break;
    }
    cfg.validate();
    params.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (!std::is_sorted(spec.values.begin(), spec.values.end())) {
        throw std::invalid_argument("sweep values must be sorted ascending");
    }
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size() * spec.detectors.size());
    for (const double v : spec.values) {
        NetworkConfig cfg = spec.network;
        ProtocolParams params = spec.protocol;
        apply_axis(spec.axis, v, cfg, params);
        for (const auto& est : simulate_ser(cfg, params, spec.detectors, spec.sim)) {
            rows.push_back({v, cfg, params, est});
        }
    }
    return rows;
}

}  // namespace swipt
