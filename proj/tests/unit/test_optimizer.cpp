#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "swipt/analysis.hpp"
#include "swipt/optimizer.hpp"

using namespace swipt;

namespace {

NetworkConfig scenario(int M, double snr_db) {
    NetworkConfig cfg;
    cfg.modulation_order = M;
    cfg.snr_db = snr_db;
    return cfg;
}

}  // namespace

TEST_CASE("bisection and golden section on known functions") {
    const double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-10);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    const auto m = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, 0.0, 1.0, 1e-8);
    CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(1.0));
    CHECK(m.evaluations > 10);
    CHECK_THROWS_AS(golden_section_minimize([](double x) { return x; }, 1.0, 0.0, 1e-6), std::invalid_argument);
}

TEST_CASE("grid construction") {
    const auto g = make_grid(0.05, 0.95, 0.01);
    CHECK(g.size() == 91);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 0.95);
    CHECK(g[25] == 0.3);
    CHECK(make_grid(0.05, 0.95, 0.02).size() == 46);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("derivative root and closed-form minimum agree") {
    for (const auto& [M, snr, expected] : {std::tuple{2, 30.0, 0.78}, std::tuple{8, 40.0, 0.84}}) {
        const auto cfg = scenario(M, snr);
        const auto root = optimal_ratio_root(cfg);
        const auto min = optimal_ratio_minimize(cfg, Protocol::PowerSplitting, Objective::Closed);
        CHECK(root.ratio == doctest::Approx(expected).epsilon(0.03 / expected));
        CHECK(std::abs(root.ratio - min.ratio) < 1e-3);
        CHECK(root.bracket_high - root.bracket_low <= 1e-4 + 1e-12);
        CHECK(std::abs(ser_derivative_ps(root.ratio, cfg)) < 1e-3 * std::abs(ser_derivative_ps(0.05, cfg)));
        CHECK(min.grid.size() == 21);
        CHECK_FALSE(min.fallback_grid);
        CHECK(min.bracket_low <= min.ratio);
        CHECK(min.ratio <= min.bracket_high);
        // The closed form is no smaller anywhere on the coarse grid.
        for (const auto& p : min.grid) CHECK(p.value >= min.objective_at_opt - 1e-15);
    }
}

TEST_CASE("TS has an interior closed-form optimum") {
    const auto opt = optimal_ratio_minimize(scenario(2, 30.0), Protocol::TimeSwitching, Objective::Closed);
    CHECK(opt.ratio > 0.05);
    CHECK(opt.ratio < 0.95);
    CHECK(opt.protocol == Protocol::TimeSwitching);
}

TEST_CASE("numeric-average minimum lies near the closed-form one") {
    const auto cfg = scenario(2, 30.0);
    const auto n = optimal_ratio_minimize(cfg, Protocol::PowerSplitting, Objective::Numeric);
    const auto c = optimal_ratio_minimize(cfg, Protocol::PowerSplitting, Objective::Closed);
    CHECK(std::abs(n.ratio - c.ratio) < 0.15);
    CHECK(n.method == OptimizeMethod::NumericAvgMin);
}

TEST_CASE("no interior optimum is reported") {
    SearchOptions o;
    o.lower = 0.9;
    o.upper = 0.99;
    try {
        optimal_ratio_root(scenario(2, 30.0), o);
        FAIL("expected NoInteriorOptimum");
    } catch (const NoInteriorOptimum& e) {
        CHECK(e.increasing());
    }
    o.lower = 0.01;
    o.upper = 0.5;
    CHECK_THROWS_AS(optimal_ratio_root(scenario(2, 30.0), o), NoInteriorOptimum);
    o.upper = 1.0;
    CHECK_THROWS_AS(optimal_ratio_root(scenario(2, 30.0), o), std::invalid_argument);
}

TEST_CASE("simulated grid picks the better ratio") {
    SimulationOptions sim;
    sim.max_trials = 200000;
    sim.min_errors = 0;
    const std::vector<double> grid{0.2, 0.8};
    const auto opt = optimal_ratio_simulated(scenario(2, 30.0), Protocol::PowerSplitting, grid, sim);
    CHECK(opt.ratio == 0.8);
    REQUIRE(opt.grid.size() == 2);
    CHECK(opt.grid[1].ci_low <= opt.grid[1].value);
    CHECK(opt.grid[1].value <= opt.grid[1].ci_high);
    CHECK(opt.grid[0].trials == 200000);
}

TEST_CASE("method names") {
    for (const auto m : {OptimizeMethod::DerivativeRoot, OptimizeMethod::ClosedFormMin, OptimizeMethod::NumericAvgMin,
                         OptimizeMethod::SimulatedGrid}) {
        CHECK(optimize_method_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(optimize_method_from_string("newton"), std::invalid_argument);
}
