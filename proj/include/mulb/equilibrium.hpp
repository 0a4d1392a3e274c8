#pragma once

#include "mulb/lattice_model.hpp"

#include <optional>
#include <vector>

namespace mulb {

// Flow fields feeding an equilibrium: density > 0 and velocity.
struct FlowState {
    double rho = 1.0;
    double u = 0.0;
};

// Per-velocity populations in the layout 0, +c_1..+c_z, -c_1..-c_z.
struct Populations {
    std::vector<double> velocities;
    std::vector<double> f;

    double mass() const;
    double momentum() const;
    // (velocity, value) pairs ordered -c_z ... 0 ... +c_z.
    std::vector<std::pair<double, double>> signed_items() const;
    double at_velocity(double c) const;  // throws std::out_of_range
};

namespace equilibrium {

// Default Hermite expansion order for the standard lattices:
// N = 3, 4, 5, 6 for n_q = 5, 7, 9, 11 (z + 1 in general).
int default_order(const LatticeSet& lattice);

// Truncated Hermite-series equilibrium:
// f_i = rho W_i sum_{n=0}^{N} H_n^(mu)(c_i / sqrt(2 theta)) / n! * (u / sqrt(2 theta))^n.
// Negative weights are allowed (callers may probe invalid regions).
Populations edf(const ModelParams& model, const FlowState& state, int order_n);

// Closed-form single-speed (z = 1) equilibrium, written out term by term;
// the cubic terms are gated by include_n3. Requires z = 1 and mu away from
// the poles -1/2, -3/2.
Populations edf_d1q3_closed(const ModelParams& model, const FlowState& state, bool include_n3);

// Largest u* >= 0 such that every population stays nonnegative for all
// |u| <= u*; bisection over [0, c_z] after a coarse scan, both velocity
// signs checked, resolution tol. Populations >= -1e-13 * rho count as
// nonnegative. Requires all weights positive.
double max_speed(const ModelParams& model, int order_n, double rho, double tol = 1e-4);

// Velocities whose population is negative at the given u (ascending);
// empty when all populations are nonnegative.
std::vector<double> negative_populations(const ModelParams& model, int order_n, double u);

}  // namespace equilibrium
}  // namespace mulb
