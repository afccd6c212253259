#pragma once

namespace swipt::specialfn {

/// Gaussian tail Q(x) = P[N(0,1) > x].
double q_function(double x);

/// (1/12) e^{-x^2/2} + (1/4) e^{-2x^2/3}; defined for x >= 0.
double q_approx_two_exp(double x);

/// Modified Bessel function of the second kind, order one, for x > 0.
/// Power series up to x = 2, Steed's continued fraction beyond.
double bessel_k1(double x);

/// Same algorithm, order zero (the continued fraction yields both).
double bessel_k0(double x);

/// Exponential integral E1(z) for z > 0. Series below 1, Lentz continued fraction above.
double exp_integral_e1(double z);

/// Upper incomplete gamma Gamma(0, z), identical to E1(z).
double gamma_upper_0(double z);

/// e^z E1(z), evaluated without overflow for large z.
double scaled_exp_integral_e1(double z);

}  // namespace swipt::specialfn
