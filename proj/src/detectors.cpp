#include "swipt/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace swipt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct NoCount {
    void add(int = 1) noexcept {}
    void mul(int = 1) noexcept {}
};

struct Tally {
    OpCount& count;
    void add(int n = 1) noexcept { count.additions += n; }
    void mul(int n = 1) noexcept { count.multiplications += n; }
};

// Re{c x} / sigma with the counter informed of the 2 mul + 1 add + 1 scaling.
template <class Counter>
double correlation(cplx c, cplx x, double inv_sigma, Counter& counter) {
    counter.mul(3);
    counter.add();
    return (c.real() * x.real() - c.imag() * x.imag()) * inv_sigma;
}

template <class Counter>
cplx pair_product(cplx prev, cplx curr, Counter& counter) {
    counter.mul(4);
    counter.add(2);
    return std::conj(curr) * prev;
}

template <class Counter>
int proposed_impl(const DetectorInput& in, const PskAlphabet& alphabet, Counter& counter) {
    const auto symbols = alphabet.symbols();
    const cplx c_sd = pair_product(in.y_sd_prev, in.y_sd_curr, counter);
    const cplx c_rd = pair_product(in.y_rd_prev, in.y_rd_curr, counter);
    const double inv_sd = 1.0 / in.sigma_sd;
    const double inv_rd = 1.0 / in.sigma_rd;

    // The relay enumeration is done once, decoupled from the x_s loop.
    constexpr std::size_t kStack = 64;
    double relay_stack[kStack];
    std::vector<double> relay_heap;
    double* relay = relay_stack;
    if (symbols.size() > kStack) {
        relay_heap.resize(symbols.size());
        relay = relay_heap.data();
    }
    double relay_best = kNegInf;
    for (std::size_t m = 0; m < symbols.size(); ++m) {
        relay[m] = correlation(c_rd, symbols[m], inv_rd, counter);
        counter.add();  // comparison
        relay_best = std::max(relay_best, relay[m]);
    }

    int best = 0;
    double best_metric = kNegInf;
    for (std::size_t m = 0; m < symbols.size(); ++m) {
        const double direct = correlation(c_sd, symbols[m], inv_sd, counter);
        const double aligned = relay[m] + in.eta;
        counter.add(4);  // eta offset, branch max, link sum, running argmax
        const double metric = direct + std::max(aligned, relay_best);
        if (metric > best_metric) {
            best_metric = metric;
            best = static_cast<int>(m);
        }
    }
    return best + 1;
}

}  // namespace

double clamp_relay_ser(double epsilon) noexcept {
    return std::clamp(epsilon, 1e-12, 0.5 - 1e-9);
}

void set_relay_statistics(DetectorInput& input, double epsilon, int order) {
    if (order < 2) throw std::invalid_argument("modulation order must be >= 2");
    const double eps = clamp_relay_ser(epsilon);
    input.epsilon = eps;
    input.eta = std::log((1.0 - eps) * (order - 1) / eps);
}

int detect_exact_mld(const DetectorInput& in, const PskAlphabet& alphabet) {
    const auto symbols = alphabet.symbols();
    const int order = alphabet.order();
    const double log_keep = in.epsilon < 1.0 ? std::log1p(-in.epsilon) : kNegInf;
    const double log_flip = in.epsilon > 0.0 ? std::log(in.epsilon / (order - 1)) : kNegInf;

    // log f(y_rd[k] | x_r, y_rd[k-1]) up to a constant.
    std::vector<double> relay_loglik(symbols.size());
    for (std::size_t r = 0; r < symbols.size(); ++r) {
        relay_loglik[r] = -std::norm(in.y_rd_curr - in.y_rd_prev * symbols[r]) / (2.0 * in.sigma_rd);
    }

    int best = 0;
    double best_metric = kNegInf;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        double shift = kNegInf;
        for (std::size_t r = 0; r < symbols.size(); ++r) {
            shift = std::max(shift, relay_loglik[r] + (r == s ? log_keep : log_flip));
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < symbols.size(); ++r) {
            acc += std::exp(relay_loglik[r] + (r == s ? log_keep : log_flip) - shift);
        }
        const double direct = -std::norm(in.y_sd_curr - in.y_sd_prev * symbols[s]) / (2.0 * in.sigma_sd);
        const double metric = direct + shift + std::log(acc);
        if (metric > best_metric) {
            best_metric = metric;
            best = static_cast<int>(s);
        }
    }
    return best + 1;
}

int detect_proposed(const DetectorInput& input, const PskAlphabet& alphabet) {
    NoCount counter;
    return proposed_impl(input, alphabet, counter);
}

int detect_proposed_counted(const DetectorInput& input, const PskAlphabet& alphabet, OpCount& count) {
    Tally counter{count};
    return proposed_impl(input, alphabet, counter);
}

int detect_sd_only(const DetectorInput& input, const PskAlphabet& alphabet) {
    return relay_detect(input.y_sd_prev, input.y_sd_curr, alphabet);
}

std::string to_string(ComplexityRow row) {
    switch (row) {
        case ComplexityRow::ReferenceMld: return "mld";
        case ComplexityRow::ReferenceApproxMld: return "approx-mld";
        case ComplexityRow::Proposed: return "proposed";
    }
    return "unknown";
}

ComplexityRow complexity_row_from_string(const std::string& name) {
    if (name == "mld") return ComplexityRow::ReferenceMld;
    if (name == "approx-mld") return ComplexityRow::ReferenceApproxMld;
    if (name == "proposed") return ComplexityRow::Proposed;
    throw std::invalid_argument("unknown detector kind '" + name + "'");
}

OpCount count_operations(int order, ComplexityRow row, int riemann_intervals) {
    if (order < 2) throw std::invalid_argument("modulation order must be >= 2");
    if (riemann_intervals < 1) throw std::invalid_argument("Riemann subinterval count must be >= 1");
    const std::int64_t m = order;
    const std::int64_t s = riemann_intervals;
    switch (row) {
        case ComplexityRow::ReferenceMld:
            return {m * (7 * m * s + 7 * m), m * (15 * m * s + 20 * m + 8), m * m, m * (4 * m * s + m + 1)};
        case ComplexityRow::ReferenceApproxMld:
            return {41 * m, 78 * m, 4 * m, 13 * m};
        case ComplexityRow::Proposed:
            return {8 * m, 14 * m, 0, 1};
    }
    throw std::invalid_argument("unknown complexity row");
}

}  // namespace swipt
