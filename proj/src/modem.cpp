#include "swipt/modem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swipt {

PskAlphabet::PskAlphabet(int order) {
    if (order < 2) {
        throw std::invalid_argument("PSK order must be >= 2, got " + std::to_string(order));
    }
    symbols_.reserve(static_cast<std::size_t>(order));
    symbols_.emplace_back(1.0, 0.0);
    for (int m = 1; m < order; ++m) {
        // Exact values on the axes keep products of quarter-turns exact.
        if (4 * m % order == 0) {
            switch (4 * m / order) {
                case 1: symbols_.emplace_back(0.0, 1.0); continue;
                case 2: symbols_.emplace_back(-1.0, 0.0); continue;
                case 3: symbols_.emplace_back(0.0, -1.0); continue;
                default: break;
            }
        }
        symbols_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * m / order));
    }
}

cplx PskAlphabet::symbol(int index) const {
    if (index < 1 || index > order()) {
        throw std::invalid_argument("symbol index " + std::to_string(index) + " outside [1, " +
                                    std::to_string(order()) + "]");
    }
    return symbols_[static_cast<std::size_t>(index - 1)];
}

PskAlphabet mpsk_alphabet(int order) { return PskAlphabet(order); }

SymbolStream diff_encode(std::span<const int> info, const PskAlphabet& alphabet) {
    SymbolStream stream;
    stream.info.assign(info.begin(), info.end());
    stream.coded.reserve(info.size() + 1);
    stream.coded.emplace_back(1.0, 0.0);
    // Track the phase index so long streams do not accumulate rounding drift.
    int phase = 1;
    for (const int index : info) {
        if (index < 1 || index > alphabet.order()) {
            throw std::invalid_argument("info index " + std::to_string(index) + " outside [1, " +
                                        std::to_string(alphabet.order()) + "]");
        }
        phase = alphabet.product_index(phase, index);
        stream.coded.push_back(alphabet.symbols()[static_cast<std::size_t>(phase - 1)]);
    }
    return stream;
}

int relay_detect(cplx y_prev, cplx y_curr, const PskAlphabet& alphabet) {
    const cplx corr = std::conj(y_curr) * y_prev;
    const auto symbols = alphabet.symbols();
    int best = 0;
    double best_metric = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < symbols.size(); ++m) {
        const double metric = corr.real() * symbols[m].real() - corr.imag() * symbols[m].imag();
        if (metric > best_metric) {
            best_metric = metric;
            best = static_cast<int>(m);
        }
    }
    return best + 1;
}

}  // namespace swipt
