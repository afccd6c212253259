#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swipt {

namespace {

void require_open_unit(double value, const char* what) {
    if (!(value > 0.0 && value < 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in (0, 1), got " +
                                    std::to_string(value));
    }
}

}  // namespace

std::string to_string(Protocol protocol) {
    return protocol == Protocol::PowerSplitting ? "ps" : "ts";
}

Protocol protocol_from_string(const std::string& name) {
    if (name == "ps" || name == "PS") return Protocol::PowerSplitting;
    if (name == "ts" || name == "TS") return Protocol::TimeSwitching;
    throw std::invalid_argument("unknown protocol '" + name + "' (expected ps or ts)");
}

double NetworkConfig::snr_linear() const noexcept { return std::pow(10.0, snr_db / 10.0); }

double NetworkConfig::noise_power() const noexcept { return source_power / snr_linear(); }

NoisePair NetworkConfig::noise(Link link) const noexcept {
    const double n0 = noise_power();
    const double fraction = antenna_noise_fraction[static_cast<std::size_t>(link)];
    return {fraction * n0, (1.0 - fraction) * n0};
}

double NetworkConfig::path_gain(Link link) const {
    switch (link) {
        case Link::SourceRelay: return path_loss(d_sr, pathloss_exponent);
        case Link::SourceDestination: return path_loss(d_sd, pathloss_exponent);
        case Link::RelayDestination: return path_loss(d_rd, pathloss_exponent);
    }
    return 0.0;
}

void NetworkConfig::validate() const {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1], got " + std::to_string(delta));
    }
    if (modulation_order < 2) {
        throw std::invalid_argument("modulation order must be >= 2");
    }
    if (!(slot_duration > 0.0)) throw std::invalid_argument("slot duration must be positive");
    if (!(source_power > 0.0)) throw std::invalid_argument("source power must be positive");
    if (!(d_sd > 0.0 && d_sr > 0.0 && d_rd > 0.0)) {
        throw std::invalid_argument("node distances must be positive");
    }
    if (!(pathloss_exponent > 0.0)) throw std::invalid_argument("path-loss exponent must be positive");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
    for (const double f : antenna_noise_fraction) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw std::invalid_argument("antenna noise fraction must lie in [0, 1]");
        }
    }
}

void ProtocolParams::validate() const {
    require_open_unit(ratio, protocol == Protocol::PowerSplitting ? "PS ratio" : "TS ratio");
}

double ChannelRealization::instantaneous_snr(Link link, const NetworkConfig& cfg) const noexcept {
    const cplx h = link == Link::SourceRelay ? h_sr : link == Link::SourceDestination ? h_sd : h_rd;
    return cfg.source_power * std::norm(h) / cfg.noise_power();
}

double path_loss(double distance, double exponent) {
    if (distance < 0.0) throw std::invalid_argument("distance must be non-negative");
    if (!(exponent > 0.0)) throw std::invalid_argument("path-loss exponent must be positive");
    return 1.0 / (1.0 + std::pow(distance, exponent));
}

cplx sample_rayleigh(Rng& rng) noexcept { return rng.complex_normal(1.0); }

ChannelRealization sample_channels(Rng& rng) noexcept {
    ChannelRealization ch;
    ch.h_sr = sample_rayleigh(rng);
    ch.h_sd = sample_rayleigh(rng);
    ch.h_rd = sample_rayleigh(rng);
    return ch;
}

double information_slot(const ProtocolParams& params, const NetworkConfig& cfg) {
    params.validate();
    if (params.protocol == Protocol::PowerSplitting) return cfg.slot_duration;
    return (1.0 - params.ratio) * cfg.slot_duration;
}

double harvested_power_ps(double rho, cplx h_sr, const NetworkConfig& cfg) {
    require_open_unit(rho, "PS ratio");
    return cfg.delta * rho * cfg.source_power * cfg.path_gain(Link::SourceRelay) * std::norm(h_sr);
}

double harvested_power_ts(double alpha, cplx h_sr, const NetworkConfig& cfg) {
    require_open_unit(alpha, "TS ratio");
    return 2.0 * cfg.delta * cfg.source_power * cfg.path_gain(Link::SourceRelay) * std::norm(h_sr) *
           alpha / (1.0 - alpha);
}

double harvested_power(const ProtocolParams& params, cplx h_sr, const NetworkConfig& cfg) {
    return params.protocol == Protocol::PowerSplitting
               ? harvested_power_ps(params.ratio, h_sr, cfg)
               : harvested_power_ts(params.ratio, h_sr, cfg);
}

cplx LinkParams::signal_gain() const noexcept {
    return std::sqrt(id_fraction * tx_power * slot * path_gain) * h;
}

cplx propagate(cplx u, const LinkParams& link, Rng& rng) noexcept {
    // sqrt(f) v1 + v2 is a single CN(0, f N1 + N2) draw.
    return link.signal_gain() * u + rng.complex_normal(link.noise_variance());
}

}  // namespace swipt
