#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdistil/bell_edp.hpp"
#include "qdistil/errors.hpp"
#include "qdistil/multipartite_edp.hpp"
#include "qdistil/oracle.hpp"
#include "qdistil/version.hpp"

namespace py = pybind11;

namespace {

qdistil::channels::ADParams ad(double d) {
    return qdistil::channels::ADParams(d);
}

qdistil::channels::NRWMParams nrwm(double w) {
    return qdistil::channels::NRWMParams(w);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    using namespace qdistil;

    m.doc() = "Efficiencies of weak-measurement-assisted entanglement "
              "distillation over amplitude damping channels";
    m.attr("__version__") = version;

    py::register_exception<NotDistillableError>(m, "NotDistillableError");
    py::register_exception<RatioUndefinedError>(m, "RatioUndefinedError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ArgumentError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "bell_filter",
        [](double d1, double d2, double w1, double w2) {
            const auto f = bell_edp::bell_filtered_state(
                {ad(d1), ad(d2), nrwm(w1), nrwm(w2)});
            py::dict out;
            out["probability"] = f.success_probability;
            out["concurrence"] = f.concurrence;
            out["amp01"] = f.params.amp01;
            out["amp10"] = f.params.amp10;
            out["vac"] = f.params.vac;
            return out;
        },
        py::arg("d1"), py::arg("d2"), py::arg("w1"), py::arg("w2"),
        "Damped and filtered Bell pair: filter success probability, "
        "concurrence and state parameters");

    m.def(
        "bell_efficiency",
        [](double d1, double d2, double w1, double w2, int rounds) {
            return bell_edp::two_copy_efficiency(
                       {ad(d1), ad(d2), nrwm(w1), nrwm(w2)}, rounds)
                .cumulative;
        },
        py::arg("d1"), py::arg("d2"), py::arg("w1"), py::arg("w2"),
        py::arg("rounds") = 10,
        "Bell-pair yield of the two-copy protocol, filters included");

    m.def(
        "nonmax_efficiency",
        [](double d, double w, int rounds) {
            return bell_edp::nonmax_initial_pipeline(ad(d), nrwm(w), rounds)
                .cumulative;
        },
        py::arg("d"), py::arg("w"), py::arg("rounds") = 10,
        "Two-copy protocol yield when seeding with the partially entangled "
        "pure state tuned to the damping rate");

    m.def(
        "bisection_efficiency",
        [](double d, double w, int copies) {
            return bell_edp::bisection_efficiency(ad(d), nrwm(w), copies)
                .cumulative;
        },
        py::arg("d"), py::arg("w"), py::arg("copies") = 32,
        "Yield of the Hamming-weight halving protocol on `copies` pairs");

    m.def(
        "ghz_filter",
        [](double d, double w) {
            const auto f = multipartite_edp::ghz_noisy_and_filtered(ad(d),
                                                                    nrwm(w));
            py::dict out;
            out["probability"] = f.success_probability;
            out["amp001"] = f.params.amp001;
            out["amp110"] = f.params.amp110;
            out["vac000"] = f.params.vac000;
            out["vac010"] = f.params.vac010;
            out["vac100"] = f.params.vac100;
            return out;
        },
        py::arg("d"), py::arg("w"),
        "Damped and filtered GHZ state: filter success probability and state "
        "parameters");

    m.def(
        "ghz_efficiency",
        [](double d, double w, int rounds) {
            return multipartite_edp::ghz_efficiency({ad(d), nrwm(w), rounds})
                .cumulative;
        },
        py::arg("d"), py::arg("w"), py::arg("rounds") = 10,
        "GHZ yield of the two-copy protocol, filters included");

    m.def(
        "w_round",
        [](int parties, double fidelity) {
            const auto r = multipartite_edp::w_round(parties, fidelity);
            return py::make_tuple(r.fidelity, r.success_probability);
        },
        py::arg("parties"), py::arg("fidelity"),
        "One W-state distillation step: (output fidelity, success "
        "probability)");

    m.def("w_threshold", &multipartite_edp::w_threshold_strength,
          py::arg("parties"), py::arg("d"),
          "Minimum filter strength for a convergent fidelity iteration");

    m.def(
        "w_trajectory",
        [](int parties, double d, double w, double epsilon) {
            const auto t = multipartite_edp::w_trajectory(
                {parties, ad(d), nrwm(w), epsilon});
            py::dict out;
            out["steps"] = t.steps;
            out["filter_probability"] = t.filter_probability;
            out["efficiency"] = t.efficiency;
            out["fidelities"] = t.fidelities;
            out["step_probs"] = t.step_probs;
            return out;
        },
        py::arg("parties"), py::arg("d"), py::arg("w"),
        py::arg("epsilon") = 1e-6,
        "W-state distillation run to the target infidelity: minimal step "
        "count, per-step data and total efficiency");

    m.def(
        "efficiency_ratio",
        [](int parties, double d, double w, double epsilon) {
            return multipartite_edp::efficiency_ratio(parties, ad(d), nrwm(w),
                                                      epsilon);
        },
        py::arg("parties"), py::arg("d"), py::arg("w"),
        py::arg("epsilon") = 1e-6,
        "Filtered over unfiltered W-state efficiency at the same target");

    m.def(
        "asymptotic_ratio",
        [](int parties, double d, double w) {
            return multipartite_edp::asymptotic_ratio(parties, ad(d), nrwm(w));
        },
        py::arg("parties"), py::arg("d"), py::arg("w"),
        "Limit of the efficiency ratio as the target infidelity goes to zero");

    m.def(
        "optimal_w",
        [](int parties, double d, double epsilon) {
            const auto best =
                multipartite_edp::optimal_w(parties, ad(d), epsilon);
            py::dict out;
            out["w"] = best.w;
            out["efficiency"] = best.efficiency;
            out["steps"] = best.steps;
            return out;
        },
        py::arg("parties"), py::arg("d"), py::arg("epsilon") = 1e-6,
        "Filter strength maximizing the W-state efficiency at fixed damping");

    m.def(
        "run_validation",
        [](std::uint64_t seed, int samples) {
            const auto s = oracle::run_all(seed, samples);
            py::dict out;
            out["passed"] = s.passed;
            out["checks"] = s.rows.size();
            out["max_abs_error"] = s.max_abs_error;
            return out;
        },
        py::arg("seed") = oracle::default_seed, py::arg("samples") = 50,
        "Cross-check the closed forms against the density-matrix oracle");
}
