#pragma once

#include <complex>
#include <span>
#include <vector>

namespace swipt {

using cplx = std::complex<double>;

/**
 * M-PSK alphabet x_m = exp(j 2 pi (m-1) / M), m = 1..M.
 *
 * Indices on the public surface are 1-based; symbols()[m-1] is x_m.
 */
class PskAlphabet {
public:
    explicit PskAlphabet(int order);

    int order() const noexcept { return static_cast<int>(symbols_.size()); }
    /// 1-based access.
    cplx symbol(int index) const;
    std::span<const cplx> symbols() const noexcept { return symbols_; }

    /// Index of x_a * x_b (1-based in, 1-based out).
    int product_index(int a, int b) const noexcept { return (a - 1 + b - 1) % order() + 1; }

private:
    std::vector<cplx> symbols_;
};

PskAlphabet mpsk_alphabet(int order);

/// Differentially encoded stream: coded[0] = 1 and coded[k] = coded[k-1] * x(info[k-1]).
struct SymbolStream {
    std::vector<int> info;    ///< 1-based data indices x_I[1..n]
    std::vector<cplx> coded;  ///< u_I[0..n], size info.size() + 1
};

SymbolStream diff_encode(std::span<const int> info, const PskAlphabet& alphabet);

/// Non-coherent two-symbol decision argmax_m Re{conj(y_curr) y_prev x_m}; ties go to the smallest index.
int relay_detect(cplx y_prev, cplx y_curr, const PskAlphabet& alphabet);

}  // namespace swipt
