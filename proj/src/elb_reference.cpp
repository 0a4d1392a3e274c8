#include "mulb/elb_reference.hpp"

#include "mulb/moments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mulb::elb {

namespace {

constexpr double kThetaPin = 1e-12;

// mu = 0 three-velocity weights (W0, W1) at the given theta.
std::pair<double, double> d1q3_weights(double theta, double c1) {
    const double w1 = theta / (2.0 * c1 * c1);
    return {1.0 - 2.0 * w1, w1};
}

}  // namespace

void ElbInput::validate() const {
    if (!(rho > 0.0)) throw std::domain_error("elb requires rho > 0");
    if (!(c1 > 0.0)) throw std::domain_error("elb requires c1 > 0");
    if (!(theta > 0.0)) throw std::domain_error("elb requires theta > 0");
    if (!(std::abs(j) < rho * c1)) {
        throw std::domain_error("elb requires |j| < rho c1 for solvability");
    }
    if (m_max != 1 && m_max != 2) throw std::domain_error("elb supports m_max in {1, 2}");
    if (m_max == 2 && std::abs(theta - c1 * c1) <= kThetaPin * (1.0 + c1 * c1)) {
        throw std::domain_error("elb product form divides by theta - c1^2");
    }
    if (m_max == 1 && std::abs(theta - c1 * c1 / 3.0) > kThetaPin * (1.0 + c1 * c1)) {
        throw std::domain_error("the two-constraint entropic form fixes theta = c1^2/3");
    }
}

Populations elb_edf(const ElbInput& in) {
    in.validate();
    Populations out;
    out.velocities = {0.0, in.c1, -in.c1};
    out.f.resize(3);

    if (in.m_max == 1) {
        // Exact minimizer under mass and momentum constraints only.
        const double v = in.j / (in.rho * in.c1);
        const double root = std::sqrt(1.0 + 3.0 * v * v);
        const double g = 2.0 - root;
        const double x = (2.0 * v + root) / (1.0 - v);
        out.f[0] = (2.0 * in.rho / 3.0) * g;
        out.f[1] = (in.rho / 6.0) * g * x;
        out.f[2] = (in.rho / 6.0) * g / x;
        return out;
    }

    const double c2 = in.c1 * in.c1;
    const double rp = in.rho * in.p_trace;
    const double disc = rp * rp - in.j * in.j * c2;
    if (disc < 0.0) throw std::domain_error("elb square-root argument negative");
    const double sq = std::sqrt(disc);
    const double xden = rp - in.j * in.c1;
    const double yden = in.rho * in.theta * (in.p_trace - c2);
    if (xden == 0.0 || yden == 0.0) {
        throw std::domain_error("elb product form hit a zero denominator");
    }

    const auto [w0, w1] = d1q3_weights(in.theta, in.c1);
    const double g = (in.p_trace - c2) / (in.theta - c2);
    const double x = sq / xden;
    const double y = (in.theta - c2) * sq / yden;
    out.f[0] = in.rho * w0 * g;
    out.f[1] = in.rho * w1 * g * x * y;
    out.f[2] = in.rho * w1 * g * y / x;
    return out;
}

Populations elb_lagrange_oracle(const ElbInput& in) {
    in.validate();
    const int n = in.m_max + 1;
    const double c[3] = {0.0, in.c1, -in.c1};
    const auto [w0, w1] = d1q3_weights(in.theta, in.c1);
    const double w[3] = {w0, w1, w1};
    Eigen::VectorXd targets(n);
    targets(0) = in.rho;
    targets(1) = in.j;
    if (n > 2) targets(2) = in.rho * in.p_trace;
    const double scale = 1.0 + targets.cwiseAbs().maxCoeff();

    Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
    lam(0) = std::log(in.rho);

    auto populations = [&](const Eigen::VectorXd& l) {
        std::array<double, 3> f{};
        for (int i = 0; i < 3; ++i) {
            double expo = 0.0;
            for (int m = 0; m < n; ++m) expo += l(m) * std::pow(c[i], m);
            f[static_cast<size_t>(i)] = w[i] * std::exp(expo);
        }
        return f;
    };
    auto residual = [&](const Eigen::VectorXd& l) {
        const auto f = populations(l);
        Eigen::VectorXd r(n);
        for (int m = 0; m < n; ++m) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i) s += f[static_cast<size_t>(i)] * std::pow(c[i], m);
            r(m) = s - targets(m);
        }
        return r;
    };

    Eigen::VectorXd r = residual(lam);
    for (int iter = 0; iter < 100; ++iter) {
        if (r.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
            const auto f = populations(lam);
            Populations out;
            out.velocities = {0.0, in.c1, -in.c1};
            out.f = {f[0], f[1], f[2]};
            return out;
        }
        const auto f = populations(lam);
        Eigen::MatrixXd jac(n, n);
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int i = 0; i < 3; ++i) {
                    s += f[static_cast<size_t>(i)] * std::pow(c[i], m + k);
                }
                jac(m, k) = s;
            }
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
        double alpha = 1.0;
        Eigen::VectorXd next_r = residual(lam + alpha * step);
        int halvings = 0;
        while (next_r.norm() > r.norm() && halvings < 40) {
            alpha *= 0.5;
            next_r = residual(lam + alpha * step);
            ++halvings;
        }
        lam += alpha * step;
        r = next_r;
    }
    throw std::runtime_error("entropic Lagrange iteration did not converge in 100 steps");
}

double entropy(const Populations& pops, double theta, double c1) {
    const auto [w0, w1] = d1q3_weights(theta, c1);
    const double w[3] = {w0, w1, w1};
    double h = 0.0;
    for (size_t i = 0; i < pops.f.size(); ++i) {
        if (!(pops.f[i] > 0.0)) throw std::domain_error("entropy requires positive populations");
        h += pops.f[i] * std::log(pops.f[i] / w[i]);
    }
    return h;
}

namespace {

ComparisonRow row_from(const std::string& label, const Populations& pops, double rho, double u,
                       double pressure_target, double third_target) {
    ComparisonRow row;
    row.label = label;
    row.mass_residual = pops.mass() - rho;
    row.momentum_residual = pops.momentum() - rho * u;
    row.pressure_residual = moments::raw_moment(pops, 2) - pressure_target;
    row.third_moment_residual = moments::raw_moment(pops, 3) - third_target;
    return row;
}

}  // namespace

std::vector<ComparisonRow> comparison_table(double rho, double u, double theta, double c1) {
    const LatticeSet lattice = LatticeSet::from_speeds({c1});
    const FlowState state{rho, u};
    const double mu16 = moments::mu_for_d1q3(theta, c1);

    // Targets: the mu = 0 rows aim at the Gaussian moments; the tied-mu rows
    // aim at the generalized system whose pressure is rho(c1^2 - 2 theta).
    const double p_mb = rho * (theta + u * u);
    const double q_mb = rho * (3.0 * theta * u + u * u * u);
    const double p_mu = moments::m_target_moment(2, rho, u, theta, mu16);
    const double q_mu = moments::m_target_moment(3, rho, u, theta, mu16);

    std::vector<ComparisonRow> rows;
    rows.push_back(row_from("H(2)^(0)", equilibrium::edf({lattice, 0.0, theta}, state, 2), rho, u,
                            p_mb, q_mb));
    rows.push_back(row_from("H(3)^(0)", equilibrium::edf({lattice, 0.0, theta}, state, 3), rho, u,
                            p_mb, q_mb));
    rows.push_back(row_from("H(2)^(mu)", equilibrium::edf({lattice, mu16, theta}, state, 2), rho,
                            u, p_mu, q_mu));
    rows.push_back(row_from("H(3)^(mu)", equilibrium::edf({lattice, mu16, theta}, state, 3), rho,
                            u, p_mu, q_mu));

    // Entropic rows; the two-constraint form lives at theta = c1^2/3.
    const double theta_e1 = c1 * c1 / 3.0;
    ElbInput e1{rho, rho * u, theta_e1 + u * u, theta_e1, c1, 1};
    rows.push_back(row_from("E(1)", elb_edf(e1), rho, u, rho * (theta_e1 + u * u),
                            rho * (3.0 * theta_e1 * u + u * u * u)));
    ElbInput e2{rho, rho * u, theta + u * u, theta, c1, 2};
    rows.push_back(row_from("E(2)", elb_edf(e2), rho, u, p_mb, q_mb));
    return rows;
}

}  // namespace mulb::elb
