#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt {

/// rho(r) = (1 - r) / (2 - r); maps (0, 1) onto (0, 1/2), strictly decreasing.
double rho_fn(double ratio);

/**
 * Ratio-independent constants of the averaged SER for one slot length.
 *
 * For TS the slot is (1 - alpha) T_s, so TS callers rebuild this per alpha.
 */
struct AnalysisConstants {
    int order = 2;
    double snr = 1.0;     ///< P_s / N_0, also the average SNR of every link
    double delta = 1.0;
    double slot = 1.0;
    double g_sd = 0.0;    ///< sin^2(pi/M) T L_sd
    double g_rd = 0.0;    ///< sin^2(pi/M) T L_sr L_rd
    double a1 = 0.0, b1 = 0.0;
    double a2 = 0.0, b2 = 0.0;
    double a3 = 0.0, b3 = 0.0;  ///< relay SER coefficient and 2(1 - cos(pi/M)) T L_sr SNR

    static AnalysisConstants make(const NetworkConfig& cfg, double slot);
};

/// Average S-R SNR seen by the relay's information detector.
double relay_avg_snr_id_ps(double rho, const NetworkConfig& cfg);
double relay_avg_snr_id_ts(double alpha, const NetworkConfig& cfg);

/// DPSK error rate at average SNR gamma: exact for M = 2, 1.03-fit for M > 2.
double relay_epsilon_from_snr(double gamma, int order);

double relay_epsilon_ps(double rho, const NetworkConfig& cfg);
double relay_epsilon_ts(double alpha, const NetworkConfig& cfg);
double relay_epsilon(const ProtocolParams& params, const NetworkConfig& cfg);

/// ln[(1 - eps)(M - 1) / eps]; throws unless 0 < eps < 1.
double eta(double epsilon, int order);

/// Gaussian model of the pairwise metric difference omega(z1, z2).
struct PairwiseStatistic {
    double u = 0.0;  ///< mean
    double W = 0.0;  ///< variance with high-order noise terms dropped
};

/// `snr_gain` is T L P |h|^2 / N_0 of the link carrying `x_true`.
PairwiseStatistic metric_stats(cplx x_true, cplx z1, cplx z2, double snr_gain);

struct CondSer {
    double p_c = 0.0;
    double p_e = 0.0;
    double total = 0.0;
};

/// Conditional SER approximation for instantaneous SNRs gamma_IJ = P_s |h_IJ|^2 / N_0.
CondSer cond_ser(double gamma_sd, double gamma_rd, double h_sr_sq, const ProtocolParams& params,
                 const NetworkConfig& cfg);
CondSer cond_ser_ps(double gamma_sd, double gamma_rd, double h_sr_sq, double rho, const NetworkConfig& cfg);
CondSer cond_ser_ts(double gamma_sd, double gamma_rd, double h_sr_sq, double alpha,
                    const NetworkConfig& cfg);

enum class AveragingMethod {
    Quadrature,       ///< S-D/R-D pair reduced analytically, remaining 1-D integrals adaptive
    QuasiMonteCarlo,  ///< Halton points over the three exponential gains
    GaussLaguerre,    ///< tensor Gauss-Laguerre rule
};

std::string to_string(AveragingMethod method);
AveragingMethod averaging_method_from_string(const std::string& name);

struct NumericOptions {
    AveragingMethod method = AveragingMethod::Quadrature;
    std::int64_t samples = 1 << 17;  ///< quasi-MC point count
    int nodes = 64;                  ///< Gauss-Laguerre nodes per dimension
    double tolerance = 1e-10;        ///< relative tolerance of the adaptive rules
};

/// Expectation of cond_ser(...).total over unit-mean Rayleigh power gains.
double avg_ser_numeric(const ProtocolParams& params, const NetworkConfig& cfg, const NumericOptions& options = {});

/// Closed-form average and its parts; the `_exact` fields keep the Bessel / incomplete-gamma
/// forms before the large-argument and upper-bound simplifications.
struct ClosedFormSer {
    double epsilon = 0.0;
    double eta = 0.0;
    double P_C = 0.0;
    double P_E = 0.0;
    double P_e = 0.0;
    double Z1 = 0.0;
    double Z2 = 0.0;
    double Z3 = 0.0;
    double Z1_exact = 0.0;
    double Z2_exact = 0.0;
};

ClosedFormSer avg_ser_closed_ps(double rho, const NetworkConfig& cfg);
ClosedFormSer avg_ser_closed_ts(double alpha, const NetworkConfig& cfg);
ClosedFormSer avg_ser_closed(const ProtocolParams& params, const NetworkConfig& cfg);

/// d P_e / d rho of avg_ser_closed_ps, in closed form.
double ser_derivative_ps(double rho, const NetworkConfig& cfg);

/// Leading-order relay SER c(M) (2 - rho) / ((1 - rho) SNR) for large SNR (PS).
double asymptotic_relay_ser(double rho, const NetworkConfig& cfg);

/// Least-squares slope of -log10(ser) against snr_db / 10.
double diversity_slope(std::span<const std::pair<double, double>> points);

enum class RelayRegime {
    Correct,     ///< x_r = x_1; threshold event against eta
    WrongSwap,   ///< x_r != x_1; event omega_sd(x_1, x_v) + omega_rd(x_r, x_u) > 0
    WrongAlign,  ///< x_r != x_1; event omega_sd(x_1, x_v) + omega_rd(x_r, x_v) > -eta
};

struct ErrorEvent {
    int x_v = 0;  ///< 1-based competing source symbol
    int x_u = 0;  ///< 1-based competing relay symbol
    double pep = 0.0;

    friend bool operator==(const ErrorEvent& a, const ErrorEvent& b) {
        return a.x_v == b.x_v && a.x_u == b.x_u;
    }
};

/**
 * Brute-force search for the pairwise events that dominate the error
 * probability, with x_1 transmitted and unit fading on every link.
 * `relay_symbol` is x_r for the relay-wrong regimes (ignored otherwise).
 * Maximizers are compared on the Q-function argument (tolerance 1e-9), so ties survive underflow.
 */
std::vector<ErrorEvent> dominant_error_events(RelayRegime regime, double rho, const NetworkConfig& cfg,
                                              int relay_symbol = 2);

/// Dominating terms of the conditional SER for one channel draw, per ratio.
struct TradeoffPoint {
    double ratio = 0.0;
    double p_c = 0.0;  ///< 2(1 - eps) Q(sqrt(g_sd gamma_sd + k delta g_rd |h_sr|^2 gamma_rd))
    double p_e = 0.0;  ///< 2 eps / (M - 1) Q(sqrt(g_sd gamma_sd) - eta / (2 sqrt(g_sd gamma_sd)))
};

/// Small-scale power gains |h|^2 of one draw; link SNRs follow as SNR |h|^2.
struct ChannelGains {
    double h_sd_sq = 1.0;
    double h_rd_sq = 1.0;
    double h_sr_sq = 1.0;
};

std::vector<TradeoffPoint> tradeoff_curves(std::span<const double> ratios, const NetworkConfig& cfg,
                                           const ChannelGains& gains, Protocol protocol = Protocol::PowerSplitting);

}  // namespace swipt
