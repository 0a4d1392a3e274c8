#pragma once

#include "mulb/equilibrium.hpp"

#include <vector>

// One-dimensional single-relaxation-time stream-collide solver on periodic
// integer lattices, used for the shock-tube experiment.
namespace mulb::solver {

struct SolverConfig {
    ModelParams model;
    int order_n = 0;  // 0 = default expansion order z + 1
    long nodes = 0;
    long steps = 0;
    double tau = 1.0;

    enum class Init { ShockTube, Uniform };
    Init init = Init::ShockTube;
    double rho_left = 1.0;
    double rho_right = 0.5;
    double rho0 = 1.0;
    double u0 = 0.0;

    long snapshot_every = 0;  // 0 = record the final state only
    int threads = 1;

    int effective_order() const;
    // tau > 1/2, L > 2 c_z, integer (on-Cartesian) speeds, positive weights.
    void validate() const;
};

struct SimulationState {
    long nodes = 0;
    std::vector<double> velocities;  // n_q entries, layout 0, +c_1.., -c_1..
    std::vector<double> f;           // velocity-major, f[i * nodes + x]
    long time = 0;

    double density_at(long x) const;
    double velocity_at(long x) const;
    double total_mass() const;
    double total_momentum() const;
};

struct Snapshot {
    long step = 0;
    std::vector<double> rho;
    std::vector<double> u;
};

// Populations set to the zero-velocity equilibrium of the two-plateau
// density profile: rho_left for 1-based positions <= nodes/2, rho_right
// beyond. Throws when the weights are not positive at the configured theta.
SimulationState init_shock_tube(const SolverConfig& config);

// Uniform equilibrium at (rho0, u0) everywhere.
SimulationState init_uniform(const SolverConfig& config);

// BGK relaxation toward the local equilibrium, every node independently:
// f_i <- f_i - (f_i - f_i^eq(rho, u)) / tau. Throws std::runtime_error with
// the node index when a density is non-positive or non-finite.
void collide(SimulationState& state, const SolverConfig& config);

// Exact cyclic shift of each velocity sheet by its integer speed.
void stream(SimulationState& state, const SolverConfig& config);

// Alternates collide and stream for config.steps steps, recording density
// and velocity profiles every snapshot_every steps plus the final state.
std::vector<Snapshot> run(const SolverConfig& config);

}  // namespace mulb::solver
