#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swipt/analysis.hpp"
#include "swipt/detectors.hpp"
#include "swipt/mc_engine.hpp"
#include "swipt/optimizer.hpp"
#include "swipt/specialfn.hpp"

namespace py = pybind11;
using namespace swipt;

namespace {

NetworkConfig network(int M, double snr_db, double delta, double d_sr, double d_rd) {
    NetworkConfig cfg;
    cfg.modulation_order = M;
    cfg.snr_db = snr_db;
    cfg.delta = delta;
    cfg.d_sr = d_sr;
    cfg.d_rd = d_rd;
    cfg.validate();
    return cfg;
}

ProtocolParams protocol(const std::string& kind, double ratio) {
    ProtocolParams p{protocol_from_string(kind), ratio};
    p.validate();
    return p;
}

py::dict estimate_dict(const SerEstimate& e) {
    py::dict d;
    d["detector"] = to_string(e.detector);
    d["ser"] = e.ser;
    d["ci_low"] = e.ci_low;
    d["ci_high"] = e.ci_high;
    d["trials"] = e.trials;
    d["errors"] = e.errors;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SWIPT differential decode-and-forward relay: simulation, analysis and ratio optimization";

    py::register_exception<NoInteriorOptimum>(m, "NoInteriorOptimum", PyExc_ArithmeticError);

    m.def("q_function", &specialfn::q_function, py::arg("x"));
    m.def("bessel_k1", &specialfn::bessel_k1, py::arg("x"));
    m.def("exp_integral_e1", &specialfn::exp_integral_e1, py::arg("z"));

    m.def(
        "simulate_ser",
        [](const std::string& kind, double ratio, int M, double snr_db, const std::string& detector,
           std::int64_t trials, std::int64_t min_errors, std::uint64_t seed, int threads, double delta, double d_sr,
           double d_rd) {
            SimulationOptions sim;
            sim.max_trials = trials;
            sim.min_errors = min_errors;
            sim.seed = seed;
            sim.threads = threads;
            const auto kinds = detectors_from_string(detector);
            std::vector<SerEstimate> est;
            {
                py::gil_scoped_release release;
                est = simulate_ser(network(M, snr_db, delta, d_sr, d_rd), protocol(kind, ratio), kinds, sim);
            }
            py::list out;
            for (const auto& e : est) out.append(estimate_dict(e));
            return out;
        },
        py::arg("protocol") = "ps", py::arg("ratio") = 0.8, py::arg("M") = 2, py::arg("snr_db") = 30.0,
        py::arg("detector") = "proposed", py::arg("trials") = 1'000'000, py::arg("min_errors") = 200,
        py::arg("seed") = 1, py::arg("threads") = 1, py::arg("delta") = 0.6, py::arg("d_sr") = 1.5,
        py::arg("d_rd") = 1.5);

    m.def(
        "avg_ser_closed",
        [](const std::string& kind, double ratio, int M, double snr_db, double delta, double d_sr, double d_rd) {
            const ClosedFormSer c = avg_ser_closed(protocol(kind, ratio), network(M, snr_db, delta, d_sr, d_rd));
            py::dict d;
            d["epsilon"] = c.epsilon;
            d["eta"] = c.eta;
            d["P_C"] = c.P_C;
            d["P_E"] = c.P_E;
            d["P_e"] = c.P_e;
            return d;
        },
        py::arg("protocol") = "ps", py::arg("ratio") = 0.8, py::arg("M") = 2, py::arg("snr_db") = 30.0,
        py::arg("delta") = 0.6, py::arg("d_sr") = 1.5, py::arg("d_rd") = 1.5);

    m.def(
        "avg_ser_numeric",
        [](const std::string& kind, double ratio, int M, double snr_db, const std::string& method, double delta,
           double d_sr, double d_rd) {
            NumericOptions opt;
            opt.method = averaging_method_from_string(method);
            return avg_ser_numeric(protocol(kind, ratio), network(M, snr_db, delta, d_sr, d_rd), opt);
        },
        py::arg("protocol") = "ps", py::arg("ratio") = 0.8, py::arg("M") = 2, py::arg("snr_db") = 30.0,
        py::arg("method") = "quadrature", py::arg("delta") = 0.6, py::arg("d_sr") = 1.5, py::arg("d_rd") = 1.5);

    m.def(
        "ser_derivative_ps",
        [](double rho, int M, double snr_db, double delta, double d_sr, double d_rd) {
            return ser_derivative_ps(rho, network(M, snr_db, delta, d_sr, d_rd));
        },
        py::arg("rho"), py::arg("M") = 2, py::arg("snr_db") = 30.0, py::arg("delta") = 0.6, py::arg("d_sr") = 1.5,
        py::arg("d_rd") = 1.5);

    m.def(
        "optimal_ratio",
        [](const std::string& kind, const std::string& method, int M, double snr_db, double delta, double d_sr,
           double d_rd) {
            const NetworkConfig cfg = network(M, snr_db, delta, d_sr, d_rd);
            const Protocol p = protocol_from_string(kind);
            switch (optimize_method_from_string(method)) {
                case OptimizeMethod::DerivativeRoot:
                    if (p != Protocol::PowerSplitting) throw py::value_error("root method is PS only");
                    return optimal_ratio_root(cfg).ratio;
                case OptimizeMethod::ClosedFormMin: return optimal_ratio_minimize(cfg, p, Objective::Closed).ratio;
                case OptimizeMethod::NumericAvgMin: return optimal_ratio_minimize(cfg, p, Objective::Numeric).ratio;
                case OptimizeMethod::SimulatedGrid: break;
            }
            throw py::value_error("sim-grid is available through the command-line tool");
        },
        py::arg("protocol") = "ps", py::arg("method") = "closed-min", py::arg("M") = 2, py::arg("snr_db") = 30.0,
        py::arg("delta") = 0.6, py::arg("d_sr") = 1.5, py::arg("d_rd") = 1.5);

    m.def(
        "count_operations",
        [](const std::string& row, int M, int S) {
            const OpCount c = count_operations(M, complexity_row_from_string(row), S);
            return py::make_tuple(c.additions, c.multiplications, c.bessel_evals, c.table_lookups);
        },
        py::arg("detector"), py::arg("M"), py::arg("S") = 1);
}
