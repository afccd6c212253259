#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "swipt/modem.hpp"

namespace swipt {

/// Received pairs at the destination plus the statistics the detector may use.
struct DetectorInput {
    cplx y_sd_prev;
    cplx y_sd_curr;
    cplx y_rd_prev;
    cplx y_rd_curr;
    double sigma_sd = 1.0;  ///< N_sd,1 + N_sd,2
    double sigma_rd = 1.0;  ///< N_rd,1 + N_rd,2
    double epsilon = 0.1;   ///< relay average SER
    double eta = 0.0;       ///< ln[(1 - epsilon)(M - 1) / epsilon]
};

/// Clamp applied to epsilon before it feeds the detector threshold.
double clamp_relay_ser(double epsilon) noexcept;

/// Fills epsilon (clamped) and eta for an M-ary alphabet.
void set_relay_statistics(DetectorInput& input, double epsilon, int order);

/// Exact joint maximum-likelihood decision, evaluated in the log domain.
int detect_exact_mld(const DetectorInput& input, const PskAlphabet& alphabet);

/// Max-sum detector with decoupled x_s / x_r enumerations (linear in M).
int detect_proposed(const DetectorInput& input, const PskAlphabet& alphabet);

/// Direct-link only decision (relay ignored).
int detect_sd_only(const DetectorInput& input, const PskAlphabet& alphabet);

/// Operation tally; also used to instrument detect_proposed.
struct OpCount {
    std::int64_t additions = 0;
    std::int64_t multiplications = 0;
    std::int64_t bessel_evals = 0;
    std::int64_t table_lookups = 0;

    friend bool operator==(const OpCount&, const OpCount&) = default;
};

/// detect_proposed with every arithmetic operation on the decision path counted.
int detect_proposed_counted(const DetectorInput& input, const PskAlphabet& alphabet, OpCount& count);

/// Rows of the per-symbol complexity table.
enum class ComplexityRow { ReferenceMld, ReferenceApproxMld, Proposed };

std::string to_string(ComplexityRow row);
ComplexityRow complexity_row_from_string(const std::string& name);

/// Operations per symbol detection; `riemann_intervals` only affects the reference MLD row.
OpCount count_operations(int order, ComplexityRow row, int riemann_intervals = 1);

}  // namespace swipt
