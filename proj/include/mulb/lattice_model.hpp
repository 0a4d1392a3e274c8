#pragma once

#include "mulb/special_fn.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mulb {

// Discrete velocity set {0, +-c_1, ..., +-c_z}; only the positive half is
// stored. on_cartesian marks integer speeds (streaming requires it).
struct LatticeSet {
    std::vector<double> speeds;  // strictly increasing, all > 0
    bool on_cartesian = false;

    int z() const { return static_cast<int>(speeds.size()); }
    int nq() const { return 2 * z() + 1; }
    double max_speed() const { return speeds.back(); }

    // Velocities in population layout order: 0, +c_1..+c_z, -c_1..-c_z.
    std::vector<double> velocities() const;

    static LatticeSet from_speeds(std::vector<double> speeds);

    // Accepts "1,2,3", "1 2 3", or the signed compact form "0,±1,±2,±3"
    // (also "+-1"); zero entries and sign markers are dropped, the positive
    // speeds deduplicated and sorted. Throws std::domain_error on anything
    // unparseable or non-positive.
    static LatticeSet parse(std::string_view text);
};

// (lattice, mu, theta) fully determines weights and equilibria.
struct ModelParams {
    LatticeSet lattice;
    double mu = 0.0;
    double theta = 1.0;

    void validate() const;  // throws std::domain_error
};

// Quadrature weights, symmetric by construction: values[0] belongs to the
// zero velocity, values[k] to +-c_k.
struct WeightVector {
    std::vector<double> speeds;  // positive half, matches LatticeSet::speeds
    std::vector<double> values;  // size z+1

    int z() const { return static_cast<int>(speeds.size()); }
    double sum() const;  // values[0] + 2 * sum of the rest
    double min_value() const;
    // Tiny negatives count as zero (tolerance -1e-12).
    bool all_positive(double tol = -1e-12) const;
    // (velocity, weight) pairs ordered -c_z ... 0 ... +c_z.
    std::vector<std::pair<double, double>> signed_items() const;
    // Weight at a signed velocity (matched to 1e-9); throws std::out_of_range.
    double at_velocity(double c) const;
};

namespace lattice {

// Numerator polynomial of the center weight:
// P0(theta) = sum_{i=0}^{z} (-1)^{z-i} 2^{z-i} (mu+1/2)_{z-i} theta^{z-i} e_i(c^2),
// normalized so P0(0) = e_z > 0.
special::PolyCoeffs w0_numerator(const LatticeSet& lattice, double mu);

// Numerator polynomial of the +-c_k weights (k is 1-based):
// N_k(theta) = sum_{i=0}^{z-1} (-1)^{z-1-i} 2^{z-i} (mu+1/2)_{z-i} theta^{z-i}
//              e_i(c^2 with c_k^2 excluded).
special::PolyCoeffs wk_numerator(const LatticeSet& lattice, double mu, int k);

// Closed-form weights: W_0 = P0/e_z, W_{+-c_k} = N_k / (2 c_k^2 prod_{n != k} (c_n^2 - c_k^2)).
WeightVector weights(const ModelParams& model);

// Independent route: solve sum_i W_i H_n^(mu)(c_i / sqrt(2 theta)) = delta_{n0}
// for n = 0..max_order (least squares when overdetermined). Requires
// max_order >= n_q - 1 and z <= 6. Throws std::domain_error on a singular
// (degenerate) system.
WeightVector weights_oracle(const ModelParams& model, int max_order);

// Open intervals of theta where every weight is positive, largest first.
// Interval endpoints are positive real roots of P0 and the N_k.
std::vector<std::pair<double, double>> theta_validity_range(const LatticeSet& lattice,
                                                            double mu);

// d-dimensional product weights (d in {2, 3}); keys are velocity tuples.
std::map<std::vector<double>, double> tensor_weights(const WeightVector& one_d, int d);

}  // namespace lattice
}  // namespace mulb
