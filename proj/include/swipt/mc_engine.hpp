#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt {

enum class DetectorKind { ExactMld, Proposed, SdOnly };

std::string to_string(DetectorKind kind);
DetectorKind detector_from_string(const std::string& name);
/// Accepts a single name or "all" (every detector, in enum order).
std::vector<DetectorKind> detectors_from_string(const std::string& name);

struct SimulationOptions {
    std::int64_t max_trials = 1'000'000;  ///< detected data symbols, hard cap
    std::int64_t min_errors = 200;        ///< stop once every detector has this many errors (0 = run to cap)
    int frame_length = 100;               ///< data symbols per fading block
    int batch_frames = 256;               ///< stop rule is checked between batches
    std::uint64_t seed = 1;
    int threads = 1;
    bool relay_bypass = false;  ///< relay silent (P_r = 0) and eta = 0 at the destination
};

struct SerEstimate {
    DetectorKind detector = DetectorKind::Proposed;
    std::int64_t trials = 0;
    std::int64_t errors = 0;
    double ser = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    std::string fingerprint;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
Interval wilson_interval(std::int64_t errors, std::int64_t trials, double z = 1.959963984540054);

/// Canonical text of everything that defines a run, and its 64-bit FNV-1a hash in hex.
std::string canonical_config(const NetworkConfig& cfg, const ProtocolParams& params, const SimulationOptions& options);
std::string config_fingerprint(const NetworkConfig& cfg, const ProtocolParams& params,
                               const SimulationOptions& options);

/**
 * End-to-end SER of several detectors over the same simulated symbols.
 *
 * Frame f draws from Rng(seed, f) only, and batches are reduced in frame
 * order, so the result is identical for every thread count.
 */
std::vector<SerEstimate> simulate_ser(const NetworkConfig& cfg, const ProtocolParams& params,
                                      std::span<const DetectorKind> detectors, const SimulationOptions& options);

SerEstimate simulate_ser(const NetworkConfig& cfg, const ProtocolParams& params, DetectorKind detector,
                         const SimulationOptions& options);

/// Relay-only link SER (S->R information branch plus relay_detect), for checking epsilon.
SerEstimate simulate_relay_ser(const NetworkConfig& cfg, const ProtocolParams& params,
                               const SimulationOptions& options);

enum class SweepAxis { SnrDb, Ratio, Delta, DRd };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> values;
    NetworkConfig network;
    ProtocolParams protocol;
    std::vector<DetectorKind> detectors{DetectorKind::Proposed};
    SimulationOptions sim;
};

struct SweepRow {
    double value = 0.0;
    NetworkConfig network;
    ProtocolParams protocol;
    SerEstimate estimate;
};

/// Applies one axis value; for DRd the relay stays on the S-D line (d_sr = d_sd - d_rd).
void apply_axis(SweepAxis axis, double value, NetworkConfig& cfg, ProtocolParams& params);

/// One row per (value, detector), values in the given order; the same seed is reused at every point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace swipt
