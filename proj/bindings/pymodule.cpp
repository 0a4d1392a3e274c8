// Python bindings for the one-dimensional mu-generalized lattice Boltzmann
// construction. The surface mirrors the CLI: weights, reference temperatures,
// positivity intervals, equilibria, coefficient reports, tail statistics,
// the three-velocity comparison table, and the shock-tube solver. Results
// come back as plain Python structures (dicts, lists, tuples).

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mulb/analysis.hpp"
#include "mulb/elb_reference.hpp"
#include "mulb/equilibrium.hpp"
#include "mulb/lattice_model.hpp"
#include "mulb/lbgk_solver.hpp"
#include "mulb/moments.hpp"
#include "mulb/special_fn.hpp"

#include <complex>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace mulb;

namespace {

ModelParams make_model(const std::vector<double>& speeds, double mu, double theta) {
    ModelParams model{LatticeSet::from_speeds(speeds), mu, theta};
    model.validate();
    return model;
}

const char* condition_name(moments::MatchCondition c) {
    switch (c) {
        case moments::MatchCondition::Unconditional: return "unconditional";
        case moments::MatchCondition::RequiresTheta0: return "requires_theta0";
        default: return "never";
    }
}

}  // namespace

PYBIND11_MODULE(_mulb, m) {
    m.doc() = "One-dimensional mu-generalized Hermite lattice Boltzmann construction";

    m.def("gen_hermite", &special::gen_hermite, py::arg("n"), py::arg("mu"), py::arg("x"),
          "Generalized Hermite polynomial H_n^(mu)(x).");
    m.def("gen_exponential", &special::gen_exponential, py::arg("mu"), py::arg("x"),
          "Generalized exponential series e_mu(x).");

    m.def(
        "weights",
        [](const std::vector<double>& speeds, double mu, double theta) {
            const auto w = lattice::weights(make_model(speeds, mu, theta));
            py::dict out;
            out["speeds"] = w.speeds;
            out["values"] = w.values;
            out["all_positive"] = w.all_positive();
            return out;
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"),
        "Closed-form quadrature weights: values[k] belongs to +-c_k.");

    m.def(
        "theta_validity_range",
        [](const std::vector<double>& speeds, double mu) {
            return lattice::theta_validity_range(LatticeSet::from_speeds(speeds), mu);
        },
        py::arg("speeds"), py::arg("mu"),
        "Open theta intervals with all-positive weights, largest first.");

    m.def(
        "reference_theta",
        [](const std::vector<double>& speeds, double mu) {
            const auto res = moments::reference_theta(LatticeSet::from_speeds(speeds), mu);
            py::list roots;
            for (const auto& r : res.roots) {
                py::dict d;
                d["value"] = r.value;
                d["is_real"] = r.is_real;
                d["positive_weights"] = r.positive_weights;
                roots.append(d);
            }
            py::dict out;
            out["polynomial"] = res.polynomial.coefficients;
            out["roots"] = roots;
            out["positive_weight_roots"] = res.positive_weight_roots();
            return out;
        },
        py::arg("speeds"), py::arg("mu"),
        "Reference-temperature polynomial (ascending coefficients) and its roots.");

    m.def(
        "edf",
        [](const std::vector<double>& speeds, double mu, double theta, double rho, double u,
           int order_n) {
            const auto model = make_model(speeds, mu, theta);
            const int n = order_n > 0 ? order_n : equilibrium::default_order(model.lattice);
            const auto pops = equilibrium::edf(model, FlowState{rho, u}, n);
            return pops.signed_items();
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("rho"), py::arg("u"),
        py::arg("order_n") = 0,
        "Discrete equilibrium as (velocity, population) pairs, -c_z .. +c_z.");

    m.def(
        "max_speed",
        [](const std::vector<double>& speeds, double mu, double theta, int order_n, double rho,
           double tol) {
            const auto model = make_model(speeds, mu, theta);
            const int n = order_n > 0 ? order_n : equilibrium::default_order(model.lattice);
            return equilibrium::max_speed(model, n, rho, tol);
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("order_n") = 0,
        py::arg("rho") = 1.0, py::arg("tol") = 1e-4,
        "Largest velocity with all equilibrium populations positive.");

    m.def(
        "negative_populations",
        [](const std::vector<double>& speeds, double mu, double theta, double u, int order_n) {
            const auto model = make_model(speeds, mu, theta);
            const int n = order_n > 0 ? order_n : equilibrium::default_order(model.lattice);
            return equilibrium::negative_populations(model, n, u);
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("u"),
        py::arg("order_n") = 0,
        "Lattice velocities whose equilibrium populations are negative, ascending.");

    m.def(
        "coefficient_report",
        [](const std::vector<double>& speeds, double mu, double theta, int order_n) {
            const auto model = make_model(speeds, mu, theta);
            const int n = order_n > 0 ? order_n : equilibrium::default_order(model.lattice);
            const auto report = moments::coefficient_report(model, n);
            py::list rows;
            for (const auto& r : report.rows) {
                py::dict d;
                d["name"] = r.name;
                d["moment_order"] = r.moment_order;
                d["u_power"] = r.u_power;
                d["computed"] = r.computed;
                d["target"] = r.target;
                d["matched"] = r.matched;
                d["condition"] = condition_name(r.condition);
                rows.append(d);
            }
            return rows;
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("order_n") = 0,
        "Velocity-power coefficients of the raw moments against their targets.");

    m.def(
        "cdf",
        [](const std::vector<double>& speeds, double mu, double theta, double c) {
            return analysis::cdf(lattice::weights(make_model(speeds, mu, theta)), c);
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("c"),
        "Cumulative weight at lattice velocity c.");

    m.def(
        "ccdf",
        [](const std::vector<double>& speeds, double mu, double theta, double c) {
            return analysis::ccdf(lattice::weights(make_model(speeds, mu, theta)), c);
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("c"),
        "Tail weight strictly above lattice velocity c.");

    m.def(
        "elb_comparison",
        [](double rho, double u, double theta, double c1) {
            py::list rows;
            for (const auto& r : elb::comparison_table(rho, u, theta, c1)) {
                py::dict d;
                d["label"] = r.label;
                d["mass"] = r.mass_residual;
                d["momentum"] = r.momentum_residual;
                d["pressure"] = r.pressure_residual;
                d["third"] = r.third_moment_residual;
                rows.append(d);
            }
            return rows;
        },
        py::arg("rho"), py::arg("u"), py::arg("theta"), py::arg("c1") = 1.0,
        "Moment residuals of the six three-velocity equilibrium candidates.");

    m.def(
        "shock_tube",
        [](const std::vector<double>& speeds, double mu, double theta, double tau, long nodes,
           long steps, long snapshot_every, int threads) {
            solver::SolverConfig config;
            config.model = make_model(speeds, mu, theta);
            config.tau = tau;
            config.nodes = nodes;
            config.steps = steps;
            config.snapshot_every = snapshot_every;
            config.threads = threads;
            py::list out;
            for (const auto& snap : solver::run(config)) {
                py::dict d;
                d["step"] = snap.step;
                d["rho"] = snap.rho;
                d["u"] = snap.u;
                out.append(d);
            }
            return out;
        },
        py::arg("speeds"), py::arg("mu"), py::arg("theta"), py::arg("tau"), py::arg("nodes"),
        py::arg("steps"), py::arg("snapshot_every") = 0, py::arg("threads") = 1,
        "Periodic two-plateau relaxation run; returns recorded density/velocity profiles.");
}
