#pragma once

#include <array>
#include <complex>
#include <string>

#include "swipt/rng.hpp"

namespace swipt {

using cplx = std::complex<double>;

enum class Protocol { PowerSplitting, TimeSwitching };

enum class Link { SourceRelay = 0, SourceDestination = 1, RelayDestination = 2 };

std::string to_string(Protocol protocol);
Protocol protocol_from_string(const std::string& name);

/// Noise powers of one link: antenna AWGN N_{IJ,1} and circuit AWGN N_{IJ,2}.
struct NoisePair {
    double antenna = 0.0;
    double circuit = 0.0;
    double total() const noexcept { return antenna + circuit; }
};

/**
 * Static three-node scenario.
 *
 * Noise is parameterized by the transmit SNR P_s/N_0 and, per link, the
 * fraction of N_0 that sits at the antenna (the rest is circuit noise).
 */
struct NetworkConfig {
    double snr_db = 30.0;
    double source_power = 1.0;
    double delta = 0.6;              ///< EH conversion efficiency in (0, 1]
    int modulation_order = 2;        ///< M
    double slot_duration = 0.25;     ///< T_s of one PS slot; the block is T = 2 T_s
    double d_sd = 3.0;
    double d_sr = 1.5;
    double d_rd = 1.5;
    double pathloss_exponent = 2.7;
    std::array<double, 3> antenna_noise_fraction{0.5, 0.5, 0.5};  ///< indexed by Link

    double snr_linear() const noexcept;
    double noise_power() const noexcept;  ///< N_0
    NoisePair noise(Link link) const noexcept;
    double path_gain(Link link) const;
    void validate() const;  ///< throws std::invalid_argument
};

struct ProtocolParams {
    Protocol protocol = Protocol::PowerSplitting;
    double ratio = 0.8;  ///< PS ratio rho or TS ratio alpha, strictly inside (0, 1)

    void validate() const;
};

/// One fading draw; unit-mean |h|^2 on every link.
struct ChannelRealization {
    cplx h_sr;
    cplx h_sd;
    cplx h_rd;

    /// gamma_IJ = P_s |h_IJ|^2 / N_0.
    double instantaneous_snr(Link link, const NetworkConfig& cfg) const noexcept;
};

/// Bounded path loss 1 / (1 + d^nu).
double path_loss(double distance, double exponent);

/// h = (a + jb)/sqrt(2) with a, b iid standard normal.
cplx sample_rayleigh(Rng& rng) noexcept;
ChannelRealization sample_channels(Rng& rng) noexcept;

/// Duration of one information slot: T_s for PS, (1 - alpha) T_s for TS (block length fixed).
double information_slot(const ProtocolParams& params, const NetworkConfig& cfg);

/// P_r = delta rho P_s L_sr |h_sr|^2.
double harvested_power_ps(double rho, cplx h_sr, const NetworkConfig& cfg);
/// P_r = 2 delta P_s L_sr |h_sr|^2 alpha / (1 - alpha).
double harvested_power_ts(double alpha, cplx h_sr, const NetworkConfig& cfg);
double harvested_power(const ProtocolParams& params, cplx h_sr, const NetworkConfig& cfg);

/**
 * Transmission parameters of one hop.
 *
 * `id_fraction` is the share of the received signal routed to information
 * detection; it scales the signal power and the antenna noise (PS relay
 * branch uses 1 - rho, every other branch uses 1).
 */
struct LinkParams {
    double tx_power = 1.0;
    double slot = 1.0;
    double path_gain = 1.0;
    cplx h{1.0, 0.0};
    NoisePair noise{};
    double id_fraction = 1.0;

    cplx signal_gain() const noexcept;  ///< sqrt(f P T_s L) h
    double noise_variance() const noexcept { return id_fraction * noise.antenna + noise.circuit; }
};

/// y = sqrt(f P T_s L) h u + sqrt(f) v1 + v2.
cplx propagate(cplx u, const LinkParams& link, Rng& rng) noexcept;

}  // namespace swipt
