#pragma once

#include "mulb/equilibrium.hpp"
#include "mulb/lattice_model.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace mulb::moments {

// M-th raw moment structured as the target systems print it:
// moment = rho * sum over slots (u-power j, theta-power k) with j + 2k = M.
struct MomentPolynomial {
    int order = 0;
    // key = (u-power, theta-power); value = normalized coefficient, i.e. the
    // measured u^j coefficient divided by theta^k.
    std::map<std::pair<int, int>, double> terms;
};

enum class MatchCondition { Unconditional, RequiresTheta0, Never };

struct CoefficientRow {
    std::string name;  // Q_1, Q_3, R_0, ... (letter = moment order, index = u-power)
    int moment_order = 0;
    int u_power = 0;
    double computed = 0.0;  // at the model's theta
    double target = 0.0;    // generalized target coefficient at the model's mu
    bool matched = false;
    MatchCondition condition = MatchCondition::Never;
};

struct CoefficientReport {
    std::vector<CoefficientRow> rows;
};

// One root of the reference-temperature polynomial.
struct ReferenceRoot {
    std::complex<double> value;
    bool is_real = false;
    bool positive_weights = false;  // meaningful only for real positive roots
};

struct ReferenceThetaResult {
    special::PolyCoeffs polynomial;       // ascending powers of theta
    std::vector<ReferenceRoot> roots;     // all roots, flagged
    // Real positive roots whose weights are all positive, ascending.
    std::vector<double> positive_weight_roots() const;
};

enum class SoundSystem { LowOrderMu, MaxwellBoltzmann, MSystem };

// sum_i f_i c_i^M.
double raw_moment(const Populations& pops, int M);

// Gaussian raw moment via m_0 = rho, m_1 = rho u, m_{M+1} = u m_M + M theta m_{M-1}.
double mb_target_moment(int M, double rho, double u, double theta);

// Correction factor multiplying the theta^k u^{M-2k} Gaussian coefficient in
// the generalized system; equals 1 at mu = 0.
double generalized_factor(int n, int k, double mu);

// Generalized target moment: each Gaussian theta^k u^{M-2k} coefficient is
// scaled by generalized_factor(n, k, mu) with n = M - ((M+1) mod 2).
double m_target_moment(int M, double rho, double u, double theta, double mu);

// Target coefficient for the slot u^j theta^{(M-j)/2} of the generalized
// system (the value the tables compare against).
double m_target_coefficient(int M, int u_power, double mu);

// Coefficients of u^j (j = 0..max(N, M)) in the M-th raw moment of the EDF
// at unit density: recovered by sampling the moment at Chebyshev-spaced u in
// [-1/2, 1/2] and solving the Vandermonde system. Residual above 1e-8 throws
// std::logic_error (the moment is exactly polynomial in u, so a bad fit
// means an implementation bug).
std::vector<double> moment_u_coefficients(const ModelParams& model, int order_n, int M);

// Normalized slot coefficients (divide the u^j coefficient by theta^{(M-j)/2}).
// Requires M <= order_n + 2.
MomentPolynomial moment_coefficients(const ModelParams& model, int order_n, int M);

// Printed closed forms for the two-speed lattice (moment orders 3..5).
struct D1q5Coefficients {
    double q3, r2, s1, s3, r4, s5;
};
D1q5Coefficients coefficient_formulas_d1q5(double theta, double c1, double c2);

// Printed closed forms for the three-speed lattice (orders 4..6).
struct D1q7Coefficients {
    double r4, s3, s5, v2, v4, v6;
};
D1q7Coefficients coefficient_formulas_d1q7(double theta, double c1, double c2, double c3);

// Reference-temperature polynomial
//   sum_{k=0}^{z} (-1)^k 2^{z+1-k} (mu+1/2)_{z+1-k} theta^{z-k} e_k(c^2),
// including the five-speed theta^5 correction term, with every root flagged.
// Requires z <= 5.
ReferenceThetaResult reference_theta(const LatticeSet& lattice, double mu);

// mu that restores third-order momentum on the single-speed lattice:
// mu = -(3 theta - c1^2) / (2 theta), defined for theta in (0, c1^2 / 2).
double mu_for_d1q3(double theta, double c1);

// sqrt(c1^2 - 2 theta), sqrt(theta), or sqrt((1 + 2 mu) theta).
double speed_of_sound(const ModelParams& model, SoundSystem system);

// theta = D_m c1^2 / (3 D_m + 2) from the heat-capacity ratio argument.
double theta_from_gamma(double d_m, double c1);

// Full slot-by-slot comparison for moment orders 3..min(6, 2z+1):
// computed value at the model's theta, generalized target, and a
// classification obtained by re-evaluating at generic in-range thetas and at
// every positive-weight reference temperature.
CoefficientReport coefficient_report(const ModelParams& model, int order_n);

}  // namespace mulb::moments
