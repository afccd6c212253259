#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swipt/analysis.hpp"
#include "swipt/channel.hpp"
#include "swipt/mc_engine.hpp"

namespace swipt {

enum class OptimizeMethod { DerivativeRoot, ClosedFormMin, NumericAvgMin, SimulatedGrid };

std::string to_string(OptimizeMethod method);
/// Accepts the CLI names root, closed-min, numeric-min, sim-grid.
OptimizeMethod optimize_method_from_string(const std::string& name);

struct GridPoint {
    double ratio = 0.0;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::int64_t errors = 0;
};

struct RatioOptimum {
    double ratio = 0.0;
    OptimizeMethod method = OptimizeMethod::DerivativeRoot;
    Protocol protocol = Protocol::PowerSplitting;
    double objective_at_opt = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    int evaluations = 0;
    bool fallback_grid = false;  ///< coarse scan was not unimodal; result is the fine-grid minimum
    std::vector<GridPoint> grid;  ///< coarse scan, or every simulated point
};

/// The derivative keeps one sign on the search interval.
class NoInteriorOptimum : public std::runtime_error {
public:
    NoInteriorOptimum(const std::string& what, bool increasing)
        : std::runtime_error(what), increasing_(increasing) {}
    /// True if the objective increases across the whole interval (optimum at the lower edge).
    bool increasing() const noexcept { return increasing_; }

private:
    bool increasing_;
};

struct SearchOptions {
    double lower = 0.01;
    double upper = 0.99;
    double tolerance = 1e-4;
    int coarse_points = 21;
    double fine_step = 1e-3;
};

/// Bisection on a bracketed sign change until the bracket is narrower than `tolerance`.
double bisect_root(const std::function<double(double)>& f, double lower, double upper, double tolerance);

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Golden-section search on [lower, upper] until the bracket is narrower than `tolerance`.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lower, double upper,
                                      double tolerance);

/// Zero of ser_derivative_ps (PS only). Throws NoInteriorOptimum without a sign change.
RatioOptimum optimal_ratio_root(const NetworkConfig& cfg, const SearchOptions& options = {});

enum class Objective { Closed, Numeric };

/// 21-point scan, then golden section inside the bracket of the scan minimum.
RatioOptimum optimal_ratio_minimize(const NetworkConfig& cfg, Protocol protocol, Objective objective,
                                    const SearchOptions& options = {}, const NumericOptions& numeric = {});

/// Proposed-detector SER at every grid point (same seed everywhere); returns the grid argmin.
RatioOptimum optimal_ratio_simulated(const NetworkConfig& cfg, Protocol protocol, std::span<const double> grid,
                                     const SimulationOptions& sim);

/// lo, lo + step, ... up to hi (inclusive within step/1e6).
std::vector<double> make_grid(double lower, double upper, double step);

}  // namespace swipt
