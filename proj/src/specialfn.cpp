#include "swipt/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace swipt::specialfn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEuler = std::numbers::egamma;
constexpr int kMaxIter = 10000;

void require_positive(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw std::invalid_argument(std::string(fn) + " requires a positive argument, got " +
                                    std::to_string(x));
    }
}

// K0 and K1 from the power series around zero; accurate for x <= 2.
std::pair<double, double> bessel_k01_series(double x) {
    const double y = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);

    // I0, I1, and the psi-weighted sums, accumulated together.
    double term0 = 1.0;          // y^k / (k!)^2
    double term1 = 0.5 * x;      // (x/2)^(2k+1) / (k! (k+1)!)
    double i0 = term0;
    double i1 = term1;
    double harmonic = 0.0;       // H_k
    double k0_sum = 0.0;         // sum_{k>=1} H_k y^k / (k!)^2
    double k1_sum = 0.0;         // sum_{k>=0} (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
    double term_k1 = 1.0;        // y^k / (k! (k+1)!)
    k1_sum = (-kEuler + (1.0 - kEuler)) * term_k1;
    for (int k = 1; k < kMaxIter; ++k) {
        const double kd = static_cast<double>(k);
        harmonic += 1.0 / kd;
        term0 *= y / (kd * kd);
        term1 *= y / (kd * (kd + 1.0));
        term_k1 *= y / (kd * (kd + 1.0));
        i0 += term0;
        i1 += term1;
        k0_sum += harmonic * term0;
        const double psi_sum = (-kEuler + harmonic) + (-kEuler + harmonic + 1.0 / (kd + 1.0));
        const double inc = psi_sum * term_k1;
        k1_sum += inc;
        if (term0 < kEps * i0 && std::abs(inc) < kEps * std::abs(k1_sum)) break;
    }
    const double k0 = -(log_half + kEuler) * i0 + k0_sum;
    const double k1 = 1.0 / x + i1 * log_half - 0.25 * x * k1_sum;
    return {k0, k1};
}

// Steed's continued fraction (Temme's normalization) for x > 2; returns e^x K0, e^x K1.
std::pair<double, double> bessel_k01_scaled_cf(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < kMaxIter; ++i) {
        const double id = static_cast<double>(i);
        a -= 2.0 * id;
        c = -a * c / (id + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

std::pair<double, double> bessel_k01(double x) {
    if (x <= 2.0) return bessel_k01_series(x);
    const auto [k0, k1] = bessel_k01_scaled_cf(x);
    const double scale = std::exp(-x);
    return {k0 * scale, k1 * scale};
}

double e1_series(double z) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -z / k;
        const double inc = -term / k;
        sum += inc;
        if (std::abs(inc) < kEps * std::abs(sum)) break;
    }
    return -kEuler - std::log(z) + sum;
}

// Modified Lentz evaluation of e^z E1(z), valid for z >= 1.
double e1_scaled_cf(double z) {
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_approx_two_exp(double x) {
    if (x < 0.0) {
        throw std::invalid_argument("q_approx_two_exp requires x >= 0, got " + std::to_string(x));
    }
    const double x2 = x * x;
    return std::exp(-0.5 * x2) / 12.0 + 0.25 * std::exp(-2.0 * x2 / 3.0);
}

double bessel_k1(double x) {
    require_positive(x, "bessel_k1");
    return bessel_k01(x).second;
}

double bessel_k0(double x) {
    require_positive(x, "bessel_k0");
    return bessel_k01(x).first;
}

double exp_integral_e1(double z) {
    require_positive(z, "exp_integral_e1");
    if (z < 1.0) return e1_series(z);
    return e1_scaled_cf(z) * std::exp(-z);
}

double gamma_upper_0(double z) { return exp_integral_e1(z); }

double scaled_exp_integral_e1(double z) {
    require_positive(z, "scaled_exp_integral_e1");
    if (z < 1.0) return std::exp(z) * e1_series(z);
    return e1_scaled_cf(z);
}

}  // namespace swipt::specialfn
