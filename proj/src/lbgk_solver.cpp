#include "mulb/lbgk_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace mulb::solver {

int SolverConfig::effective_order() const {
    return order_n > 0 ? order_n : equilibrium::default_order(model.lattice);
}

void SolverConfig::validate() const {
    model.validate();
    if (!model.lattice.on_cartesian) {
        throw std::domain_error("streaming requires integer lattice speeds");
    }
    if (!(tau > 0.5)) throw std::domain_error("stability requires tau > 1/2");
    if (nodes <= 2 * static_cast<long>(model.lattice.max_speed())) {
        throw std::domain_error("domain must be longer than twice the largest speed");
    }
    if (steps < 0) throw std::domain_error("steps must be non-negative");
    if (threads < 1) throw std::domain_error("threads must be >= 1");
}

double SimulationState::density_at(long x) const {
    double rho = 0.0;
    for (size_t i = 0; i < velocities.size(); ++i) {
        rho += f[i * static_cast<size_t>(nodes) + static_cast<size_t>(x)];
    }
    return rho;
}

double SimulationState::velocity_at(long x) const {
    double rho = 0.0;
    double mom = 0.0;
    for (size_t i = 0; i < velocities.size(); ++i) {
        const double fi = f[i * static_cast<size_t>(nodes) + static_cast<size_t>(x)];
        rho += fi;
        mom += fi * velocities[i];
    }
    return mom / rho;
}

double SimulationState::total_mass() const {
    double total = 0.0;
    for (double v : f) total += v;
    return total;
}

double SimulationState::total_momentum() const {
    double total = 0.0;
    for (size_t i = 0; i < velocities.size(); ++i) {
        double sheet = 0.0;
        for (long x = 0; x < nodes; ++x) {
            sheet += f[i * static_cast<size_t>(nodes) + static_cast<size_t>(x)];
        }
        total += sheet * velocities[i];
    }
    return total;
}

namespace {

// Per-velocity polynomial coefficients of the equilibrium at unit density:
// f_i^eq(rho, u) = rho * sum_n table[i][n] u^n. The equilibrium is exactly
// polynomial in u, so a Chebyshev-sampled fit recovers it to rounding.
std::vector<std::vector<double>> equilibrium_table(const ModelParams& model, int order_n) {
    const int degree = order_n;
    const int samples = degree + 3;
    const size_t nq = static_cast<size_t>(model.lattice.nq());

    Eigen::MatrixXd vander(samples, degree + 1);
    Eigen::MatrixXd rhs(samples, static_cast<Eigen::Index>(nq));
    for (int s = 0; s < samples; ++s) {
        const double u = 0.5 * std::cos(std::numbers::pi * (2.0 * s + 1.0) / (2.0 * samples));
        double power = 1.0;
        for (int j = 0; j <= degree; ++j) {
            vander(s, j) = power;
            power *= u;
        }
        const Populations pops = equilibrium::edf(model, {1.0, u}, order_n);
        for (size_t i = 0; i < nq; ++i) rhs(s, static_cast<Eigen::Index>(i)) = pops.f[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
    const Eigen::MatrixXd coeffs = qr.solve(rhs);
    if ((vander * coeffs - rhs).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::logic_error("equilibrium polynomial fit failed");
    }

    std::vector<std::vector<double>> table(nq, std::vector<double>(static_cast<size_t>(degree) + 1));
    for (size_t i = 0; i < nq; ++i) {
        for (int j = 0; j <= degree; ++j) {
            table[i][static_cast<size_t>(j)] = coeffs(j, static_cast<Eigen::Index>(i));
        }
    }
    return table;
}

SimulationState blank_state(const SolverConfig& config) {
    config.validate();
    const WeightVector weights = lattice::weights(config.model);
    if (!weights.all_positive()) {
        throw std::domain_error("initialization requires positive weights at the chosen theta");
    }
    SimulationState state;
    state.nodes = config.nodes;
    state.velocities = config.model.lattice.velocities();
    state.f.assign(state.velocities.size() * static_cast<size_t>(config.nodes), 0.0);
    return state;
}

void fill_equilibrium(SimulationState& state, const SolverConfig& config,
                      const std::vector<double>& rho_profile, double u) {
    const Populations unit = equilibrium::edf(config.model, {1.0, u}, config.effective_order());
    for (size_t i = 0; i < state.velocities.size(); ++i) {
        double* sheet = state.f.data() + i * static_cast<size_t>(state.nodes);
        for (long x = 0; x < state.nodes; ++x) {
            sheet[x] = rho_profile[static_cast<size_t>(x)] * unit.f[i];
        }
    }
}

void collide_with_table(SimulationState& state, const SolverConfig& config,
                        const std::vector<std::vector<double>>& table) {
    const size_t nq = state.velocities.size();
    const long nodes = state.nodes;
    const double inv_tau = 1.0 / config.tau;
    const int order = config.effective_order();

    auto work = [&](long begin, long end) {
        std::vector<double> upow(static_cast<size_t>(order) + 1, 1.0);
        for (long x = begin; x < end; ++x) {
            double rho = 0.0;
            double mom = 0.0;
            for (size_t i = 0; i < nq; ++i) {
                const double fi = state.f[i * static_cast<size_t>(nodes) + static_cast<size_t>(x)];
                rho += fi;
                mom += fi * state.velocities[i];
            }
            if (!(rho > 0.0) || !std::isfinite(rho)) {
                throw std::runtime_error("non-positive or non-finite density at node " +
                                         std::to_string(x) + ", step " +
                                         std::to_string(state.time));
            }
            const double u = mom / rho;
            for (int n = 1; n <= order; ++n) {
                upow[static_cast<size_t>(n)] = upow[static_cast<size_t>(n) - 1] * u;
            }
            for (size_t i = 0; i < nq; ++i) {
                double series = 0.0;
                for (int n = order; n >= 0; --n) {
                    series += table[i][static_cast<size_t>(n)] * upow[static_cast<size_t>(n)];
                }
                double& fi = state.f[i * static_cast<size_t>(nodes) + static_cast<size_t>(x)];
                fi += (rho * series - fi) * inv_tau;
            }
        }
    };

    if (config.threads <= 1) {
        work(0, nodes);
        return;
    }
    const int workers = std::min<long>(config.threads, nodes);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < workers; ++t) {
        const long begin = nodes * t / workers;
        const long end = nodes * (t + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                work(begin, end);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SimulationState init_shock_tube(const SolverConfig& config) {
    SimulationState state = blank_state(config);
    std::vector<double> rho(static_cast<size_t>(config.nodes));
    for (long x = 0; x < config.nodes; ++x) {
        // 1-based position x+1; the left plateau covers positions <= L/2.
        rho[static_cast<size_t>(x)] = (x + 1 <= config.nodes / 2) ? config.rho_left
                                                                  : config.rho_right;
    }
    fill_equilibrium(state, config, rho, 0.0);
    return state;
}

SimulationState init_uniform(const SolverConfig& config) {
    SimulationState state = blank_state(config);
    std::vector<double> rho(static_cast<size_t>(config.nodes), config.rho0);
    fill_equilibrium(state, config, rho, config.u0);
    return state;
}

void collide(SimulationState& state, const SolverConfig& config) {
    collide_with_table(state, config, equilibrium_table(config.model, config.effective_order()));
}

void stream(SimulationState& state, const SolverConfig& config) {
    const long nodes = state.nodes;
    for (size_t i = 0; i < state.velocities.size(); ++i) {
        const double speed = state.velocities[i];
        const long c = std::lround(speed);
        if (std::abs(speed - static_cast<double>(c)) > 1e-12) {
            throw std::domain_error("streaming requires integer speeds");
        }
        const long right = ((c % nodes) + nodes) % nodes;
        const long left = (nodes - right) % nodes;
        if (left == 0) continue;
        double* sheet = state.f.data() + i * static_cast<size_t>(nodes);
        std::rotate(sheet, sheet + left, sheet + nodes);
    }
}

std::vector<Snapshot> run(const SolverConfig& config) {
    config.validate();
    SimulationState state =
        config.init == SolverConfig::Init::ShockTube ? init_shock_tube(config)
                                                     : init_uniform(config);
    const auto table = equilibrium_table(config.model, config.effective_order());

    auto snapshot_of = [&](const SimulationState& s) {
        Snapshot snap;
        snap.step = s.time;
        snap.rho.resize(static_cast<size_t>(s.nodes));
        snap.u.resize(static_cast<size_t>(s.nodes));
        for (long x = 0; x < s.nodes; ++x) {
            snap.rho[static_cast<size_t>(x)] = s.density_at(x);
            snap.u[static_cast<size_t>(x)] = s.velocity_at(x);
        }
        return snap;
    };

    std::vector<Snapshot> series;
    if (config.snapshot_every > 0) series.push_back(snapshot_of(state));
    for (long step = 0; step < config.steps; ++step) {
        collide_with_table(state, config, table);
        stream(state, config);
        ++state.time;
        if (config.snapshot_every > 0 && state.time % config.snapshot_every == 0 &&
            state.time != config.steps) {
            series.push_back(snapshot_of(state));
        }
    }
    series.push_back(snapshot_of(state));
    return series;
}

}  // namespace mulb::solver
