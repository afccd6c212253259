#include "swipt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "swipt/modem.hpp"
#include "swipt/specialfn.hpp"

namespace swipt {

using specialfn::q_function;

namespace {

constexpr double kPi = std::numbers::pi;

void require_open_unit(double value, const char* what) {
    if (!(value > 0.0 && value < 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in (0, 1), got " + std::to_string(value));
    }
}

double ts_gain(double alpha) { return 2.0 * alpha / (1.0 - alpha); }

// Everything cond_ser needs that does not depend on the fading draw.
struct CondSerModel {
    int order = 2;
    double g_sd = 0.0;
    double g_rd = 0.0;
    double relay_gain = 0.0;  // k delta, k = rho or 2 alpha / (1 - alpha)
    double epsilon = 0.0;
    double eta = 0.0;

    static CondSerModel make(const ProtocolParams& params, const NetworkConfig& cfg) {
        params.validate();
        cfg.validate();
        const auto c = AnalysisConstants::make(cfg, information_slot(params, cfg));
        CondSerModel m;
        m.order = cfg.modulation_order;
        m.g_sd = c.g_sd;
        m.g_rd = c.g_rd;
        const double k = params.protocol == Protocol::PowerSplitting ? params.ratio : ts_gain(params.ratio);
        m.relay_gain = k * cfg.delta;
        m.epsilon = relay_epsilon(params, cfg);
        m.eta = swipt::eta(m.epsilon, m.order);
        return m;
    }

    CondSer operator()(double gamma_sd, double gamma_rd, double h_sr_sq) const {
        const double x = std::sqrt(g_sd * gamma_sd);
        const double combined = std::sqrt(g_sd * gamma_sd + relay_gain * g_rd * h_sr_sq * gamma_rd);
        double q_plus;
        double q_minus;
        if (x > 0.0) {
            const double t = eta / (2.0 * x);
            q_plus = q_function(x + t);
            q_minus = q_function(x - t);
        } else {
            // gamma_sd -> 0 limits of the threshold terms.
            q_plus = eta > 0.0 ? 0.0 : 0.5;
            q_minus = eta > 0.0 ? 1.0 : 0.5;
        }
        CondSer out;
        out.p_c = 2.0 * (1.0 - epsilon) * (q_function(combined) + q_plus);
        out.p_e = 2.0 * epsilon / (order - 1) * q_minus + 2.0 * epsilon * q_function(x);
        out.total = order == 2 ? 0.5 * (out.p_c + out.p_e) : out.p_c + out.p_e;
        return out;
    }
};

// E[Q(sqrt(m X))], X ~ Exp(1), written without cancellation.
double rayleigh_q(double m) {
    const double s = std::sqrt(m / (2.0 + m));
    return 1.0 / ((2.0 + m) * (1.0 + s));
}

// E[Q(sqrt(a X + b Y))] for independent X, Y ~ Exp(1).
double rayleigh_q_pair(double a, double b) {
    if (std::abs(a - b) < 1e-5 * std::max(a, b)) {
        const double m = 0.5 * (a + b);
        return rayleigh_q(m) - std::sqrt(m) / (2.0 * std::pow(2.0 + m, 1.5));
    }
    return (a * rayleigh_q(a) - b * rayleigh_q(b)) / (a - b);
}

double avg_quadrature(const CondSerModel& model, double snr, double tol) {
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::gauss_kronrod;
    const double inf = std::numeric_limits<double>::infinity();
    const double a = model.g_sd * snr;
    const double b = model.relay_gain * model.g_rd * snr;
    const double eta = model.eta;

    exp_sinh<double> tail;
    const double combined =
        tail.integrate([&](double z) { return std::exp(-z) * rayleigh_q_pair(a, b * z); }, 0.0, inf, tol);

    // E[Q(sqrt(a t) + sign eta / (2 sqrt(a t)))], split where the minus-branch argument crosses zero.
    const auto threshold = [&](double sign) {
        const auto f = [&](double t) {
            if (t <= 0.0) return sign > 0.0 ? (eta > 0.0 ? 0.0 : 0.5) : (eta > 0.0 ? 1.0 : 0.5);
            const double x = std::sqrt(a * t);
            return std::exp(-t) * q_function(x + sign * eta / (2.0 * x));
        };
        const double t0 = eta / (2.0 * a);
        double head = 0.0;
        if (t0 > 0.0) head = gauss_kronrod<double, 61>::integrate(f, 0.0, t0, 15, tol);
        return head + tail.integrate(f, t0, inf, tol);
    };
    const double plus = threshold(1.0);
    const double minus = threshold(-1.0);
    const double direct = rayleigh_q(a);

    const double eps = model.epsilon;
    const double total =
        2.0 * (1.0 - eps) * (combined + plus) + 2.0 * eps / (model.order - 1) * minus + 2.0 * eps * direct;
    return model.order == 2 ? 0.5 * total : total;
}

double radical_inverse(std::int64_t index, int base) {
    double result = 0.0;
    double scale = 1.0 / base;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale /= base;
    }
    return result;
}

double avg_halton(const CondSerModel& model, double snr, std::int64_t samples) {
    if (samples < 1) throw std::invalid_argument("quasi-MC sample count must be positive");
    double sum = 0.0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const double x = -std::log(radical_inverse(i, 2));
        const double y = -std::log(radical_inverse(i, 3));
        const double z = -std::log(radical_inverse(i, 5));
        sum += model(snr * x, snr * y, z).total;
    }
    return sum / static_cast<double>(samples);
}

// Golub-Welsch nodes and weights for weight e^{-x} on [0, inf).
std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Laguerre node count must be positive");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 0; i + 1 < n; ++i) sub(i) = i + 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    std::vector<double> nodes(n);
    std::vector<double> weights(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = solver.eigenvalues()(i);
        const double v = solver.eigenvectors()(0, i);
        weights[i] = v * v;
    }
    return {nodes, weights};
}

double avg_gauss_laguerre(const CondSerModel& model, double snr, int n) {
    const auto [x, w] = gauss_laguerre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                sum += w[i] * w[j] * w[k] * model(snr * x[i], snr * x[j], x[k]).total;
            }
        }
    }
    return sum;
}

ClosedFormSer closed_form(const AnalysisConstants& c, double k, double epsilon, const NetworkConfig& cfg) {
    ClosedFormSer out;
    out.epsilon = epsilon;
    out.eta = eta(epsilon, c.order);
    const double e = out.eta;
    const double root = std::sqrt(2.0 * e);
    out.Z1 = c.a1 * root * std::exp(-2.0 * c.b1 * e);
    out.Z3 = c.a1 * root * std::exp((1.0 - 2.0 * c.b1) * e);
    out.Z2 = c.a2 / k * std::log1p(c.b2 * k);
    const double direct = 1.0 / (c.g_sd * c.snr + 2.0);
    out.P_C = (1.0 - epsilon) * (out.Z1 + out.Z2);
    out.P_E = epsilon * out.Z3 / (c.order - 1) + epsilon * direct;
    out.P_e = out.P_C + out.P_E;

    const double spread = c.g_sd / 2.0 + 1.0 / c.snr;
    if (e > 0.0) {
        const double arg = e * std::sqrt(spread) / std::sqrt(2.0 * c.g_sd);
        out.Z1_exact = e * std::exp(-e / 2.0) / (2.0 * c.snr * std::sqrt(2.0 * c.g_sd * spread)) *
                       specialfn::bessel_k1(arg);
    } else {
        out.Z1_exact = 1.0 / (2.0 * c.snr * spread);
    }
    const double relay_snr = cfg.delta * k * c.g_rd * c.snr;
    out.Z2_exact = 2.0 * direct / relay_snr * specialfn::scaled_exp_integral_e1(2.0 / relay_snr);
    return out;
}

}  // namespace

double rho_fn(double ratio) {
    require_open_unit(ratio, "ratio");
    return (1.0 - ratio) / (2.0 - ratio);
}

AnalysisConstants AnalysisConstants::make(const NetworkConfig& cfg, double slot) {
    if (!(slot > 0.0)) throw std::invalid_argument("slot duration must be positive");
    AnalysisConstants c;
    c.order = cfg.modulation_order;
    c.snr = cfg.snr_linear();
    c.delta = cfg.delta;
    c.slot = slot;
    const double s = std::pow(std::sin(kPi / c.order), 2);
    const double l_sr = cfg.path_gain(Link::SourceRelay);
    c.g_sd = s * slot * cfg.path_gain(Link::SourceDestination);
    c.g_rd = s * slot * l_sr * cfg.path_gain(Link::RelayDestination);

    const double g = c.snr;
    const double spread = c.g_sd / 2.0 + 1.0 / g;
    c.a1 = std::sqrt(kPi) * std::pow(2.0 * c.g_sd, -0.25) / (4.0 * g) * std::pow(spread, -0.75);
    c.b1 = 0.25 + std::sqrt(spread) / (2.0 * std::sqrt(2.0 * c.g_sd));
    c.a2 = 2.0 * c.snr / (c.delta * c.g_rd * (c.g_sd * g + 2.0) * g * g);
    c.b2 = c.delta * c.g_rd * g * g / (2.0 * c.snr);
    if (c.order == 2) {
        c.a3 = 0.5;
        c.b3 = 2.0 * slot * l_sr * c.snr;
    } else {
        const double cs = std::cos(kPi / c.order);
        c.a3 = 1.03 * std::sqrt((1.0 + cs) / (2.0 * cs));
        c.b3 = 2.0 * (1.0 - cs) * slot * l_sr * c.snr;
    }
    return c;
}

double relay_avg_snr_id_ps(double rho, const NetworkConfig& cfg) {
    require_open_unit(rho, "PS ratio");
    const NoisePair n = cfg.noise(Link::SourceRelay);
    return (1.0 - rho) * cfg.slot_duration * cfg.source_power * cfg.path_gain(Link::SourceRelay) /
           ((1.0 - rho) * n.antenna + n.circuit);
}

double relay_avg_snr_id_ts(double alpha, const NetworkConfig& cfg) {
    require_open_unit(alpha, "TS ratio");
    const NoisePair n = cfg.noise(Link::SourceRelay);
    return (1.0 - alpha) * cfg.slot_duration * cfg.source_power * cfg.path_gain(Link::SourceRelay) / n.total();
}

double relay_epsilon_from_snr(double gamma, int order) {
    if (order < 2) throw std::invalid_argument("modulation order must be >= 2");
    if (!(gamma >= 0.0)) throw std::invalid_argument("average SNR must be non-negative");
    if (order == 2) return 1.0 / (2.0 * (1.0 + gamma));
    const double cs = std::cos(kPi / order);
    const double a3 = 1.03 * std::sqrt((1.0 + cs) / (2.0 * cs));
    const double zg = (1.0 - cs) * gamma;
    // a3 [1 - sqrt(zg / (1 + zg))] rearranged to avoid cancellation.
    return a3 / ((1.0 + zg) * (1.0 + std::sqrt(zg / (1.0 + zg))));
}

double relay_epsilon_ps(double rho, const NetworkConfig& cfg) {
    return relay_epsilon_from_snr(relay_avg_snr_id_ps(rho, cfg), cfg.modulation_order);
}

double relay_epsilon_ts(double alpha, const NetworkConfig& cfg) {
    return relay_epsilon_from_snr(relay_avg_snr_id_ts(alpha, cfg), cfg.modulation_order);
}

double relay_epsilon(const ProtocolParams& params, const NetworkConfig& cfg) {
    return params.protocol == Protocol::PowerSplitting ? relay_epsilon_ps(params.ratio, cfg)
                                                       : relay_epsilon_ts(params.ratio, cfg);
}

double eta(double epsilon, int order) {
    require_open_unit(epsilon, "relay SER");
    if (order < 2) throw std::invalid_argument("modulation order must be >= 2");
    return std::log((1.0 - epsilon) * (order - 1) / epsilon);
}

PairwiseStatistic metric_stats(cplx x_true, cplx z1, cplx z2, double snr_gain) {
    const cplx diff = z2 - z1;
    return {(std::conj(x_true) * diff).real() * snr_gain, std::norm(diff) * snr_gain};
}

CondSer cond_ser(double gamma_sd, double gamma_rd, double h_sr_sq, const ProtocolParams& params,
                 const NetworkConfig& cfg) {
    if (!(gamma_sd >= 0.0 && gamma_rd >= 0.0 && h_sr_sq >= 0.0)) {
        throw std::invalid_argument("channel gains must be non-negative");
    }
    return CondSerModel::make(params, cfg)(gamma_sd, gamma_rd, h_sr_sq);
}

CondSer cond_ser_ps(double gamma_sd, double gamma_rd, double h_sr_sq, double rho, const NetworkConfig& cfg) {
    return cond_ser(gamma_sd, gamma_rd, h_sr_sq, {Protocol::PowerSplitting, rho}, cfg);
}

CondSer cond_ser_ts(double gamma_sd, double gamma_rd, double h_sr_sq, double alpha, const NetworkConfig& cfg) {
    return cond_ser(gamma_sd, gamma_rd, h_sr_sq, {Protocol::TimeSwitching, alpha}, cfg);
}

std::string to_string(AveragingMethod method) {
    switch (method) {
        case AveragingMethod::Quadrature: return "quadrature";
        case AveragingMethod::QuasiMonteCarlo: return "qmc";
        case AveragingMethod::GaussLaguerre: return "gauss-laguerre";
    }
    return "unknown";
}

AveragingMethod averaging_method_from_string(const std::string& name) {
    if (name == "quadrature") return AveragingMethod::Quadrature;
    if (name == "qmc") return AveragingMethod::QuasiMonteCarlo;
    if (name == "gauss-laguerre") return AveragingMethod::GaussLaguerre;
    throw std::invalid_argument("unknown averaging method '" + name + "'");
}

double avg_ser_numeric(const ProtocolParams& params, const NetworkConfig& cfg, const NumericOptions& options) {
    const CondSerModel model = CondSerModel::make(params, cfg);
    const double snr = cfg.snr_linear();
    switch (options.method) {
        case AveragingMethod::Quadrature: return avg_quadrature(model, snr, options.tolerance);
        case AveragingMethod::QuasiMonteCarlo: return avg_halton(model, snr, options.samples);
        case AveragingMethod::GaussLaguerre: return avg_gauss_laguerre(model, snr, options.nodes);
    }
    throw std::invalid_argument("unknown averaging method");
}

ClosedFormSer avg_ser_closed_ps(double rho, const NetworkConfig& cfg) {
    require_open_unit(rho, "PS ratio");
    cfg.validate();
    const auto c = AnalysisConstants::make(cfg, cfg.slot_duration);
    return closed_form(c, rho, relay_epsilon_ps(rho, cfg), cfg);
}

ClosedFormSer avg_ser_closed_ts(double alpha, const NetworkConfig& cfg) {
    require_open_unit(alpha, "TS ratio");
    cfg.validate();
    const auto c = AnalysisConstants::make(cfg, (1.0 - alpha) * cfg.slot_duration);
    return closed_form(c, ts_gain(alpha), relay_epsilon_ts(alpha, cfg), cfg);
}

ClosedFormSer avg_ser_closed(const ProtocolParams& params, const NetworkConfig& cfg) {
    return params.protocol == Protocol::PowerSplitting ? avg_ser_closed_ps(params.ratio, cfg)
                                                       : avg_ser_closed_ts(params.ratio, cfg);
}

double ser_derivative_ps(double rho, const NetworkConfig& cfg) {
    const ClosedFormSer p = avg_ser_closed_ps(rho, cfg);
    const auto c = AnalysisConstants::make(cfg, cfg.slot_duration);
    const int m = c.order;
    const double eps = p.epsilon;
    const double e = p.eta;

    // d eps / d rho through the relay's ID SNR.
    const NoisePair n = cfg.noise(Link::SourceRelay);
    const double gamma = relay_avg_snr_id_ps(rho, cfg);
    const double denom = (1.0 - rho) * n.antenna + n.circuit;
    const double dgamma = -cfg.slot_duration * cfg.source_power * cfg.path_gain(Link::SourceRelay) * n.circuit /
                          (denom * denom);
    double deps_dgamma;
    if (m == 2) {
        deps_dgamma = -0.5 / ((1.0 + gamma) * (1.0 + gamma));
    } else {
        const double z = 1.0 - std::cos(kPi / m);
        const double zg = z * gamma;
        deps_dgamma = -c.a3 * z / (2.0 * std::sqrt(zg / (1.0 + zg)) * (1.0 + zg) * (1.0 + zg));
    }
    const double deps = deps_dgamma * dgamma;
    const double deta = -deps / (eps * (1.0 - eps));

    const double root = std::sqrt(2.0 * e);
    const double dz1 = c.a1 * std::exp(-2.0 * c.b1 * e) * (1.0 / root - 2.0 * c.b1 * root);
    const double dz3 = c.a1 * std::exp((1.0 - 2.0 * c.b1) * e) * (1.0 / root + (1.0 - 2.0 * c.b1) * root);
    const double dz2 = -c.a2 / (rho * rho) * std::log1p(c.b2 * rho) + c.a2 * c.b2 / (rho * (1.0 + c.b2 * rho));

    const double d_pc = -deps * (p.Z1 + p.Z2) + (1.0 - eps) * (dz1 * deta + dz2);
    const double d_pe = deps * (p.Z3 / (m - 1) + 1.0 / (c.g_sd * c.snr + 2.0)) + eps * dz3 * deta / (m - 1);
    return d_pc + d_pe;
}

double asymptotic_relay_ser(double rho, const NetworkConfig& cfg) {
    const double gamma = relay_avg_snr_id_ps(rho, cfg);
    const int m = cfg.modulation_order;
    if (m == 2) return 1.0 / (2.0 * gamma);
    const double cs = std::cos(kPi / m);
    const double a3 = 1.03 * std::sqrt((1.0 + cs) / (2.0 * cs));
    return a3 / (2.0 * (1.0 - cs) * gamma);
}

double diversity_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw std::invalid_argument("diversity slope needs at least 3 points");
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [snr_db, ser] : points) {
        if (!(ser > 0.0)) throw std::invalid_argument("SER values must be positive");
        mx += snr_db / 10.0;
        my += -std::log10(ser);
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [snr_db, ser] : points) {
        const double dx = snr_db / 10.0 - mx;
        sxy += dx * (-std::log10(ser) - my);
        sxx += dx * dx;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("diversity slope needs distinct SNR values");
    return sxy / sxx;
}

std::vector<ErrorEvent> dominant_error_events(RelayRegime regime, double rho, const NetworkConfig& cfg,
                                              int relay_symbol) {
    cfg.validate();
    const int m = cfg.modulation_order;
    const PskAlphabet alphabet(m);
    if (regime != RelayRegime::Correct && (relay_symbol < 2 || relay_symbol > m)) {
        throw std::invalid_argument("relay symbol must differ from x_1 in the relay-wrong regimes");
    }
    const double snr = cfg.snr_linear();
    const double t = cfg.slot_duration;
    const double gain_sd = t * cfg.path_gain(Link::SourceDestination) * snr;
    const double gain_rd =
        t * cfg.path_gain(Link::RelayDestination) * cfg.delta * rho * cfg.path_gain(Link::SourceRelay) * snr;
    const double threshold = eta(relay_epsilon_ps(rho, cfg), m);

    const cplx x1 = alphabet.symbol(1);
    const cplx xr = regime == RelayRegime::Correct ? x1 : alphabet.symbol(relay_symbol);
    struct Candidate {
        int v;
        int u;
        double arg;
    };
    std::vector<Candidate> candidates;
    for (int v = 2; v <= m; ++v) {
        const auto sd = metric_stats(x1, x1, alphabet.symbol(v), gain_sd);
        for (int u = 1; u <= m; ++u) {
            double level = 0.0;
            if (regime == RelayRegime::Correct) {
                if (u == v) continue;
                level = threshold;
            } else if (regime == RelayRegime::WrongSwap) {
                if (u == v) continue;
            } else {
                if (u != v) continue;
                level = -threshold;
            }
            const auto rd = metric_stats(xr, xr, alphabet.symbol(u), gain_rd);
            const double mean = sd.u + rd.u;
            const double var = sd.W + rd.W;
            candidates.push_back({v, u, (level - mean) / std::sqrt(var)});
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::min(best, c.arg);
    std::vector<ErrorEvent> out;
    for (const auto& c : candidates) {
        if (c.arg <= best + 1e-9 * std::max(1.0, std::abs(best))) {
            out.push_back({c.v, c.u, q_function(c.arg)});
        }
    }
    return out;
}

std::vector<TradeoffPoint> tradeoff_curves(std::span<const double> ratios, const NetworkConfig& cfg,
                                           const ChannelGains& gains, Protocol protocol) {
    const double snr = cfg.snr_linear();
    const double gamma_sd = snr * gains.h_sd_sq;
    const double gamma_rd = snr * gains.h_rd_sq;
    std::vector<TradeoffPoint> out;
    out.reserve(ratios.size());
    for (const double r : ratios) {
        const CondSerModel model = CondSerModel::make({protocol, r}, cfg);
        const double x = std::sqrt(model.g_sd * gamma_sd);
        const double combined = std::sqrt(x * x + model.relay_gain * model.g_rd * gains.h_sr_sq * gamma_rd);
        TradeoffPoint p;
        p.ratio = r;
        p.p_c = 2.0 * (1.0 - model.epsilon) * q_function(combined);
        const double q_minus = x > 0.0 ? q_function(x - model.eta / (2.0 * x)) : (model.eta > 0.0 ? 1.0 : 0.5);
        p.p_e = 2.0 * model.epsilon / (model.order - 1) * q_minus;
        out.push_back(p);
    }
    return out;
}

}  // namespace swipt
