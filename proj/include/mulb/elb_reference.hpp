#pragma once

#include "mulb/equilibrium.hpp"

#include <string>
#include <vector>

// Entropic-LB product-form equilibrium for the three-velocity model and the
// comparison harness that classifies the competing D1Q3 equilibria by their
// momentum, pressure, and third-moment residuals.
namespace mulb::elb {

// Constraint data for the entropy minimization. p_trace is the target
// second moment per unit density, c_sound^2 + u^2.
struct ElbInput {
    double rho = 1.0;
    double j = 0.0;        // momentum density rho * u
    double p_trace = 0.0;  // target trace pressure per density
    double theta = 1.0 / 3.0;
    double c1 = 1.0;
    int m_max = 2;  // highest constrained moment, 1 or 2

    void validate() const;
};

// Closed-form entropy minimizer on {0, +c1, -c1}. With m_max = 2 this is
// the exact product form (mass, momentum, and pressure all matched; the
// theta dependence cancels). With m_max = 1 only mass and momentum are
// constrained and theta must equal c1^2/3.
Populations elb_edf(const ElbInput& in);

// Independent check: solves the same constrained minimization with Lagrange
// multipliers by damped Newton iteration started from f_i = rho W_i.
// Throws std::runtime_error after 100 iterations without convergence.
Populations elb_lagrange_oracle(const ElbInput& in);

// Discrete H function sum f_i log(f_i / W_i) for the three-velocity
// weights at the given theta (mu = 0).
double entropy(const Populations& pops, double theta, double c1);

// One row of the comparison table: residuals of the conserved and first
// non-conserved moments against the row's own target system.
struct ComparisonRow {
    std::string label;
    double mass_residual = 0.0;
    double momentum_residual = 0.0;
    double pressure_residual = 0.0;
    double third_moment_residual = 0.0;
};

// Evaluates the six three-velocity equilibria (second- and third-order
// Hermite at mu = 0, the same two with mu tied to theta, and the entropic
// forms with m_max = 1, 2) at the given state and returns their moment
// residuals. The m_max = 1 entropic row is always evaluated at
// theta = c1^2/3 as its construction requires.
std::vector<ComparisonRow> comparison_table(double rho, double u, double theta, double c1);

}  // namespace mulb::elb
