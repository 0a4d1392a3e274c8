#include "mulb/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mulb {

double Populations::mass() const {
    double total = 0.0;
    for (double fi : f) total += fi;
    return total;
}

double Populations::momentum() const {
    double total = 0.0;
    for (size_t i = 0; i < f.size(); ++i) total += f[i] * velocities[i];
    return total;
}

std::vector<std::pair<double, double>> Populations::signed_items() const {
    std::vector<std::pair<double, double>> items;
    items.reserve(f.size());
    for (size_t i = 0; i < f.size(); ++i) items.emplace_back(velocities[i], f[i]);
    std::sort(items.begin(), items.end());
    return items;
}

double Populations::at_velocity(double c) const {
    for (size_t i = 0; i < velocities.size(); ++i) {
        if (std::abs(velocities[i] - c) < 1e-9) return f[i];
    }
    throw std::out_of_range("velocity not present in populations");
}

namespace equilibrium {

int default_order(const LatticeSet& lattice) { return lattice.z() + 1; }

Populations edf(const ModelParams& model, const FlowState& state, int order_n) {
    model.validate();
    if (order_n < 2) throw std::domain_error("edf needs order N >= 2");
    if (!(state.rho > 0.0)) throw std::domain_error("density must be positive");

    const WeightVector w = lattice::weights(model);
    const double s2t = std::sqrt(2.0 * model.theta);
    const double b = state.u / s2t;

    Populations pops;
    pops.velocities = model.lattice.velocities();
    pops.f.resize(pops.velocities.size());

    for (size_t i = 0; i < pops.velocities.size(); ++i) {
        const double c = pops.velocities[i];
        const double wi = w.at_velocity(c);
        double series = 0.0;
        double bn = 1.0;        // b^n
        double factorial = 1.0; // n!
        for (int n = 0; n <= order_n; ++n) {
            if (n > 0) {
                bn *= b;
                factorial *= n;
            }
            series += special::gen_hermite(n, model.mu, c / s2t) / factorial * bn;
        }
        pops.f[i] = state.rho * wi * series;
    }
    return pops;
}

Populations edf_d1q3_closed(const ModelParams& model, const FlowState& state, bool include_n3) {
    if (model.lattice.z() != 1) throw std::domain_error("closed form is for the single-speed lattice");
    for (double pole : {-0.5, -1.5}) {
        if (std::abs(model.mu - pole) < 1e-12) {
            throw std::domain_error("closed form invalid at mu = -1/2 and mu = -3/2");
        }
    }
    model.validate();

    const double c1 = model.lattice.speeds[0];
    const double c1s = c1 * c1;
    const double th = model.theta;
    const double mu = model.mu;
    const double u = state.u;
    const double w0 = -(th * (2.0 * mu + 1.0) - c1s) / c1s;
    const double w1 = th * (2.0 * mu + 1.0) / (2.0 * c1s);

    Populations pops;
    pops.velocities = {0.0, c1, -c1};
    pops.f.resize(3);
    const double weightsArr[3] = {w0, w1, w1};
    for (int i = 0; i < 3; ++i) {
        const double c = pops.velocities[static_cast<size_t>(i)];
        double bracket = 1.0 + c * u / (th * (2.0 * mu + 1.0)) - u * u / (2.0 * th) +
                         c * c * u * u / (2.0 * th * th * (2.0 * mu + 1.0));
        if (include_n3) {
            bracket += c * c * c * u * u * u /
                           (2.0 * th * th * th * (2.0 * mu + 1.0) * (2.0 * mu + 3.0)) -
                       c * u * u * u / (2.0 * th * th * (2.0 * mu + 1.0));
        }
        pops.f[static_cast<size_t>(i)] = state.rho * weightsArr[i] * bracket;
    }
    return pops;
}

namespace {

bool populations_nonnegative(const ModelParams& model, int order_n, double rho, double u) {
    const Populations pops = edf(model, {rho, u}, order_n);
    const double floor = -1e-13 * rho;
    return std::all_of(pops.f.begin(), pops.f.end(), [floor](double fi) { return fi >= floor; });
}

// Largest nonnegative-u bound on one sign direction (direction = +-1).
double directional_max_speed(const ModelParams& model, int order_n, double rho, double tol,
                             int direction) {
    const double limit = model.lattice.max_speed();
    constexpr int kScanSteps = 2000;
    int firstBad = -1;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double u = direction * limit * i / kScanSteps;
        if (!populations_nonnegative(model, order_n, rho, u)) {
            firstBad = i;
            break;
        }
    }
    if (firstBad < 0) return limit;

    double lo = limit * (firstBad - 1) / kScanSteps;
    double hi = limit * firstBad / kScanSteps;
    while (hi - lo > tol * 0.5) {
        const double mid = 0.5 * (lo + hi);
        if (populations_nonnegative(model, order_n, rho, direction * mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double max_speed(const ModelParams& model, int order_n, double rho, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("max_speed needs tol > 0");
    if (!lattice::weights(model).all_positive()) {
        throw std::domain_error("max_speed requires all-positive weights");
    }
    const double up = directional_max_speed(model, order_n, rho, tol, +1);
    const double down = directional_max_speed(model, order_n, rho, tol, -1);
    return std::min(up, down);
}

std::vector<double> negative_populations(const ModelParams& model, int order_n, double u) {
    const Populations pops = edf(model, {1.0, u}, order_n);
    std::vector<double> negatives;
    for (size_t i = 0; i < pops.f.size(); ++i) {
        if (pops.f[i] < -1e-13) negatives.push_back(pops.velocities[i]);
    }
    std::sort(negatives.begin(), negatives.end());
    return negatives;
}

}  // namespace equilibrium
}  // namespace mulb
