#pragma once

#include "mulb/lattice_model.hpp"

#include <array>
#include <utility>
#include <vector>

// Distributional diagnostics of weight families: CDF/CCDF over the signed
// lattice, exponential-tail comparison, standardized shape moments, and
// exact rational evaluation of far-tail weights for large lattices where
// double precision loses the alternating-sum cancellation.
namespace mulb::analysis {

// Heaviside step with H_a(0) = a.
double heaviside(double a, double x);

// sgn via the step function: 2 H_{1/2}(x) - 1.
double sign_from_step(double x);

// F(c_n) = sum of weights at velocities <= c_n. Evaluated both as the
// naive partial sum and through the step-function identity
//   (-1)^{H_1} * sum_{c_k <= min(c_n, -1)} W + H_1 sgn(c_n) sum_{1 <= c_k <= c_n} W + H_1;
// throws std::logic_error if the two routes disagree beyond 1e-12 and
// std::domain_error when c_n is not a lattice velocity.
double cdf(const WeightVector& weights, double c_n);

// 1 - F(c_n); for c_n >= 0 cross-checked against the direct tail sum
// over velocities > c_n (same 1e-12 agreement requirement).
double ccdf(const WeightVector& weights, double c_n);

// Tail of the unit-rate-family exponential law: exp(-s x) for x >= 0, else 1.
double exp_ccdf(double s, double x);

struct TailReport {
    std::vector<std::pair<double, double>> ccdf_values;       // (velocity, ccdf) over the lattice
    double kurtosis = 0.0;                                    // M4 / M2^2 of the weight distribution
    double skewness = 0.0;                                    // M3 / M2^(3/2)
    std::vector<std::pair<double, double>> extreme_weights;   // two outermost (velocity, weight)
    std::vector<std::array<double, 3>> exp_comparison;        // (velocity, ccdf, exp_ccdf(1, v))
    std::vector<double> long_tail_ratios;                     // ccdf(prev) / ccdf(c_k), k = 1..z-1
    std::vector<std::pair<double, double>> subexp_sequence;   // (velocity, e^v * ccdf(v))
};

// Assembles the tail diagnostics for positive weights.
TailReport tail_report(const ModelParams& model);

// First positive velocity at which the CCDF drops below the threshold;
// c_z always qualifies since ccdf(c_z) = 0.
double ccdf_crossing(const WeightVector& weights, double threshold);

struct ExtremeWeight {
    int velocity = 0;
    int sign = 0;           // -1, 0, +1
    double log10_abs = 0.0; // meaningless when sign == 0
    double value = 0.0;     // double-rounded value; may underflow to 0
};

// Exact rational closed-form weights for the consecutive-integer lattice
// {0, ±1, ..., ±z} at theta = theta_num/theta_den and mu = 0, evaluated for
// each requested speed index. Arbitrary-precision arithmetic keeps the
// alternating numerator sums exact; the magnitude is returned as a base-10
// exponent so sub-underflow weights remain reportable.
std::vector<ExtremeWeight> extreme_weights_exact(int z, long theta_num, long theta_den,
                                                 const std::vector<int>& speed_indices);

// Full weight vector (velocity 0 then 1..z) of the same exact computation,
// rounded to double at the end. Intended for large-z CCDF work where the
// double-precision closed form has already lost all significant digits.
std::vector<double> weights_exact(int z, long theta_num, long theta_den);

}  // namespace mulb::analysis
