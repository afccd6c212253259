#include "swipt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

namespace swipt {

namespace {

void require_search_domain(const SearchOptions& o) {
    if (!(o.lower > 0.0 && o.upper < 1.0 && o.lower < o.upper)) {
        throw std::invalid_argument("search interval must satisfy 0 < lower < upper < 1");
    }
    if (!(o.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (o.coarse_points < 3) throw std::invalid_argument("coarse scan needs at least 3 points");
    if (!(o.fine_step > 0.0)) throw std::invalid_argument("fine grid step must be positive");
}

// Number of interior local minima in a sampled sequence, ignoring flat steps.
int count_local_minima(const std::vector<GridPoint>& pts) {
    int minima = 0;
    int last_dir = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = pts[i].value - pts[i - 1].value;
        const int dir = d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
        if (dir == 0) continue;
        if (last_dir < 0 && dir > 0) ++minima;
        last_dir = dir;
    }
    return minima;
}

}  // namespace

std::string to_string(OptimizeMethod method) {
    switch (method) {
        case OptimizeMethod::DerivativeRoot: return "root";
        case OptimizeMethod::ClosedFormMin: return "closed-min";
        case OptimizeMethod::NumericAvgMin: return "numeric-min";
        case OptimizeMethod::SimulatedGrid: return "sim-grid";
    }
    return "unknown";
}

OptimizeMethod optimize_method_from_string(const std::string& name) {
    if (name == "root") return OptimizeMethod::DerivativeRoot;
    if (name == "closed-min") return OptimizeMethod::ClosedFormMin;
    if (name == "numeric-min") return OptimizeMethod::NumericAvgMin;
    if (name == "sim-grid") return OptimizeMethod::SimulatedGrid;
    throw std::invalid_argument("unknown method '" + name + "' (expected root, closed-min, numeric-min or sim-grid)");
}

double bisect_root(const std::function<double(double)>& f, double lower, double upper, double tolerance) {
    const auto done = [tolerance](double a, double b) { return std::abs(b - a) < tolerance; };
    const auto [a, b] = boost::math::tools::bisect(f, lower, upper, done);
    return 0.5 * (a + b);
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lower, double upper,
                                      double tolerance) {
    if (!(lower < upper)) throw std::invalid_argument("golden section needs lower < upper");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lower;
    double b = upper;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), evals + 1};
}

RatioOptimum optimal_ratio_root(const NetworkConfig& cfg, const SearchOptions& options) {
    require_search_domain(options);
    cfg.validate();
    const auto deriv = [&](double r) { return ser_derivative_ps(r, cfg); };
    const double lo = deriv(options.lower);
    const double hi = deriv(options.upper);
    if (!(lo < 0.0 && hi > 0.0)) {
        const bool increasing = lo >= 0.0 && hi >= 0.0;
        throw NoInteriorOptimum(std::string("derivative has no sign change on [") + std::to_string(options.lower) +
                                    ", " + std::to_string(options.upper) + "]: SER is " +
                                    (increasing ? "increasing" : lo <= 0.0 && hi <= 0.0 ? "decreasing" : "not convex") +
                                    " in the PS ratio",
                                increasing);
    }
    int evals = 2;
    const auto counted = [&](double r) {
        ++evals;
        return deriv(r);
    };
    const double root = bisect_root(counted, options.lower, options.upper, options.tolerance);
    RatioOptimum out;
    out.ratio = root;
    out.method = OptimizeMethod::DerivativeRoot;
    out.protocol = Protocol::PowerSplitting;
    out.objective_at_opt = avg_ser_closed_ps(root, cfg).P_e;
    out.bracket_low = root - options.tolerance / 2.0;
    out.bracket_high = root + options.tolerance / 2.0;
    out.evaluations = evals;
    return out;
}

std::vector<double> make_grid(double lower, double upper, double step) {
    if (!(step > 0.0) || !(upper >= lower)) throw std::invalid_argument("grid needs step > 0 and upper >= lower");
    std::vector<double> grid;
    const auto n = static_cast<std::int64_t>(std::floor((upper - lower) / step + 1e-6));
    grid.reserve(static_cast<std::size_t>(n + 1));
    // Snap to 12 decimals so 0.05 + 5 * 0.05 prints as 0.3.
    for (std::int64_t i = 0; i <= n; ++i) {
        grid.push_back(std::round((lower + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return grid;
}

RatioOptimum optimal_ratio_minimize(const NetworkConfig& cfg, Protocol protocol, Objective objective,
                                    const SearchOptions& options, const NumericOptions& numeric) {
    require_search_domain(options);
    cfg.validate();
    int evals = 0;
    const std::function<double(double)> f = [&](double r) {
        ++evals;
        const ProtocolParams params{protocol, r};
        return objective == Objective::Closed ? avg_ser_closed(params, cfg).P_e : avg_ser_numeric(params, cfg, numeric);
    };

    RatioOptimum out;
    out.method = objective == Objective::Closed ? OptimizeMethod::ClosedFormMin : OptimizeMethod::NumericAvgMin;
    out.protocol = protocol;
    const int n = options.coarse_points;
    const double h = (options.upper - options.lower) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double r = i + 1 == n ? options.upper : std::round((options.lower + i * h) * 1e12) / 1e12;
        GridPoint p;
        p.ratio = r;
        p.value = f(r);
        out.grid.push_back(p);
    }
    const auto best = std::min_element(out.grid.begin(), out.grid.end(),
                                       [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; });
    const auto i_best = static_cast<int>(best - out.grid.begin());

    if (count_local_minima(out.grid) > 1) {
        // Not unimodal at the coarse resolution: report the global fine-grid minimum.
        out.fallback_grid = true;
        double best_r = options.lower;
        double best_v = std::numeric_limits<double>::infinity();
        for (const double r : make_grid(options.lower, options.upper, options.fine_step)) {
            const double v = f(r);
            if (v < best_v) {
                best_v = v;
                best_r = r;
            }
        }
        out.ratio = best_r;
        out.objective_at_opt = best_v;
        out.bracket_low = std::max(options.lower, best_r - options.fine_step);
        out.bracket_high = std::min(options.upper, best_r + options.fine_step);
        out.evaluations = evals;
        return out;
    }

    out.bracket_low = out.grid[static_cast<std::size_t>(std::max(i_best - 1, 0))].ratio;
    out.bracket_high = out.grid[static_cast<std::size_t>(std::min(i_best + 1, n - 1))].ratio;
    const ScalarMinimum m = golden_section_minimize(f, out.bracket_low, out.bracket_high, options.tolerance);
    out.ratio = m.x;
    out.objective_at_opt = m.value;
    out.evaluations = evals;
    return out;
}

RatioOptimum optimal_ratio_simulated(const NetworkConfig& cfg, Protocol protocol, std::span<const double> grid,
                                     const SimulationOptions& sim) {
    if (grid.empty()) throw std::invalid_argument("simulation grid is empty");
    RatioOptimum out;
    out.method = OptimizeMethod::SimulatedGrid;
    out.protocol = protocol;
    double best_v = std::numeric_limits<double>::infinity();
    for (const double r : grid) {
        const ProtocolParams params{protocol, r};
        params.validate();
        const SerEstimate e = simulate_ser(cfg, params, DetectorKind::Proposed, sim);
        out.grid.push_back({r, e.ser, e.ci_low, e.ci_high, e.trials, e.errors});
        ++out.evaluations;
        if (e.ser < best_v) {
            best_v = e.ser;
            out.ratio = r;
        }
    }
    out.objective_at_opt = best_v;
    out.bracket_low = out.grid.front().ratio;
    out.bracket_high = out.grid.back().ratio;
    return out;
}

}  // namespace swipt
