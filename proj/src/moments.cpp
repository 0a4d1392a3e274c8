#include "mulb/moments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mulb::moments {

std::vector<double> ReferenceThetaResult::positive_weight_roots() const {
    std::vector<double> out;
    for (const auto& root : roots) {
        if (root.is_real && root.value.real() > 0.0 && root.positive_weights) {
            out.push_back(root.value.real());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double raw_moment(const Populations& pops, int M) {
    if (M < 0) throw std::domain_error("raw_moment needs M >= 0");
    double total = 0.0;
    for (size_t i = 0; i < pops.f.size(); ++i) {
        total += pops.f[i] * std::pow(pops.velocities[i], M);
    }
    return total;
}

double mb_target_moment(int M, double rho, double u, double theta) {
    if (M < 0) throw std::domain_error("mb_target_moment needs M >= 0");
    double prev = rho;
    if (M == 0) return prev;
    double cur = rho * u;
    for (int m = 1; m < M; ++m) {
        const double next = u * cur + m * theta * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double generalized_factor(int n, int k, double mu) {
    double factor = 1.0;
    for (int m = 0; m < k; ++m) {
        const int base = n - 2 * m - ((n - 2 * m + 1) % 2);
        factor *= (base + 2.0 * mu) / base;
    }
    return factor;
}

namespace {

// Gaussian coefficient of theta^k u^{M-2k}: M! / (2^k k! (M-2k)!).
double gaussian_coefficient(int M, int k) {
    double value = 1.0;
    // M! / (M-2k)! = product of 2k descending factors.
    for (int j = 0; j < 2 * k; ++j) value *= M - j;
    for (int j = 1; j <= k; ++j) value /= 2.0 * j;
    return value;
}

}  // namespace

double m_target_moment(int M, double rho, double u, double theta, double mu) {
    special::require_valid_mu(mu);
    const int n = M - ((M + 1) % 2);
    double total = 0.0;
    for (int k = 0; k <= M / 2; ++k) {
        total += gaussian_coefficient(M, k) * generalized_factor(n, k, mu) *
                 std::pow(theta, k) * std::pow(u, M - 2 * k);
    }
    return rho * total;
}

double m_target_coefficient(int M, int u_power, double mu) {
    if ((M - u_power) % 2 != 0 || u_power > M || u_power < 0) {
        throw std::domain_error("target slot must satisfy j <= M with matching parity");
    }
    const int k = (M - u_power) / 2;
    const int n = M - ((M + 1) % 2);
    return gaussian_coefficient(M, k) * generalized_factor(n, k, mu);
}

std::vector<double> moment_u_coefficients(const ModelParams& model, int order_n, int M) {
    const int degree = std::max(order_n, M);
    const int samples = degree + 3;

    Eigen::MatrixXd vander(samples, degree + 1);
    Eigen::VectorXd rhs(samples);
    for (int s = 0; s < samples; ++s) {
        // Chebyshev nodes in [-1/2, 1/2] keep the fit well conditioned.
        const double u = 0.5 * std::cos(std::numbers::pi * (2.0 * s + 1.0) / (2.0 * samples));
        double power = 1.0;
        for (int j = 0; j <= degree; ++j) {
            vander(s, j) = power;
            power *= u;
        }
        rhs(s) = raw_moment(equilibrium::edf(model, {1.0, u}, order_n), M);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
    const Eigen::VectorXd coeffs = qr.solve(rhs);
    const double residual = (vander * coeffs - rhs).cwiseAbs().maxCoeff();
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (residual > 1e-8 * (1.0 + scale)) {
        throw std::logic_error("moment fit residual too large; the moment must be polynomial in u");
    }
    return {coeffs.data(), coeffs.data() + coeffs.size()};
}

MomentPolynomial moment_coefficients(const ModelParams& model, int order_n, int M) {
    if (M > order_n + 2) throw std::domain_error("moment_coefficients requires M <= N + 2");
    const std::vector<double> cj = moment_u_coefficients(model, order_n, M);

    MomentPolynomial poly;
    poly.order = M;
    for (int j = M; j >= 0; j -= 2) {
        const int k = (M - j) / 2;
        const double raw = (j < static_cast<int>(cj.size())) ? cj[static_cast<size_t>(j)] : 0.0;
        poly.terms[{j, k}] = raw / std::pow(model.theta, k);
    }
    return poly;
}

D1q5Coefficients coefficient_formulas_d1q5(double theta, double c1, double c2) {
    const double a = c1 * c1;
    const double b = c2 * c2;
    const double th = theta;
    // e_2 of {c1^2, c2^2, -3 theta}.
    const double e2m = a * b + (a + b) * (-3.0 * th);

    D1q5Coefficients out{};
    out.q3 = e2m / (-6.0 * th * th) - 1.5;
    out.r2 = e2m / (-2.0 * th * th) - 1.5;
    out.s1 = e2m / (-th * th);
    const double s3num = a * b * b + 9.0 * a * th * th - 3.0 * a * a * th + a * a * b -
                         3.0 * b * b * th - 6.0 * th * a * b + 9.0 * b * th * th;
    out.s3 = -s3num / (6.0 * th * th * th);
    out.r4 = 0.0;
    out.s5 = 0.0;
    return out;
}

D1q7Coefficients coefficient_formulas_d1q7(double theta, double c1, double c2, double c3) {
    const double a = c1 * c1;
    const double b = c2 * c2;
    const double c = c3 * c3;
    const double th = theta;
    const std::vector<double> extended{a, b, c, -3.0 * th};
    const double e3m = special::elementary_symmetric(extended, 3);
    const double e1 = a + b + c;
    const double th3 = th * th * th;

    D1q7Coefficients out{};
    out.r4 = (e3m + 15.0 * th * th * e1 - 81.0 * th3) / (24.0 * th3);
    out.s3 = (e3m + 15.0 * th * th * e1 - 45.0 * th3) / (6.0 * th3);
    out.v2 = (e3m + 15.0 * th * th * e1 - 15.0 * th3) / (2.0 * th3);
    const double v4num = -90.0 * b * th3 - 12.0 * a * th * b * c - 3.0 * c * a * a * th -
                         3.0 * c * c * a * th - 3.0 * c * c * b * th + a * a * c * b +
                         b * a * c * c - 3.0 * a * a * th * b + 33.0 * b * th * th * a +
                         33.0 * b * th * th * c + 33.0 * a * th * th * c +
                         15.0 * th * th * b * b - 3.0 * c * th * b * b - 3.0 * a * th * b * b +
                         a * c * b * b + 45.0 * th3 * th + 15.0 * a * a * th * th -
                         90.0 * th3 * c - 90.0 * th3 * a + 15.0 * c * c * th * th;
    out.v4 = v4num / (24.0 * th3 * th);
    out.s5 = 0.0;
    out.v6 = 0.0;
    return out;
}

ReferenceThetaResult reference_theta(const LatticeSet& lattice, double mu) {
    special::require_valid_mu(mu);
    const int z = lattice.z();
    if (z > 5) throw std::domain_error("reference_theta supports z <= 5");

    std::vector<double> y;
    for (double c : lattice.speeds) y.push_back(c * c);
    const std::vector<double> e = special::elementary_symmetric_all(y);

    ReferenceThetaResult result;
    result.polynomial.coefficients.assign(static_cast<size_t>(z) + 1, 0.0);
    for (int k = 0; k <= z; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        result.polynomial.coefficients[static_cast<size_t>(z - k)] =
            sign * std::ldexp(1.0, z + 1 - k) * special::pochhammer(mu + 0.5, z + 1 - k) *
            e[static_cast<size_t>(k)];
    }
    if (z == 5) {
        // Five-speed correction to the theta^5 part. The printed term lacks
        // the (1 + 2 mu) factor; this form reproduces the tabulated roots.
        result.polynomial.coefficients[5] +=
            -36.0 * (1.0 + 2.0 * mu) * (3.0 + 2.0 * mu) * (5.0 + 2.0 * mu);
    }

    for (const auto& root : special::poly_roots(result.polynomial)) {
        ReferenceRoot entry;
        entry.value = root;
        entry.is_real = std::abs(root.imag()) < 1e-9 * (1.0 + std::abs(root));
        if (entry.is_real && root.real() > 0.0) {
            try {
                ModelParams probe{lattice, mu, root.real()};
                entry.positive_weights = lattice::weights(probe).all_positive();
            } catch (const std::exception&) {
                entry.positive_weights = false;
            }
        }
        result.roots.push_back(entry);
    }
    std::sort(result.roots.begin(), result.roots.end(), [](const auto& a, const auto& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return result;
}

double mu_for_d1q3(double theta, double c1) {
    if (!(theta > 0.0) || !(theta < c1 * c1 / 2.0)) {
        throw std::domain_error("mu_for_d1q3 requires theta in (0, c1^2 / 2)");
    }
    return -(3.0 * theta - c1 * c1) / (2.0 * theta);
}

double speed_of_sound(const ModelParams& model, SoundSystem system) {
    double radicand = 0.0;
    switch (system) {
        case SoundSystem::LowOrderMu:
            radicand = model.lattice.speeds[0] * model.lattice.speeds[0] - 2.0 * model.theta;
            break;
        case SoundSystem::MaxwellBoltzmann:
            radicand = model.theta;
            break;
        case SoundSystem::MSystem:
            radicand = (1.0 + 2.0 * model.mu) * model.theta;
            break;
    }
    if (radicand <= 0.0) throw std::domain_error("speed of sound radicand not positive");
    return std::sqrt(radicand);
}

double theta_from_gamma(double d_m, double c1) { return d_m * c1 * c1 / (3.0 * d_m + 2.0); }

namespace {

std::string slot_name(int M, int u_power) {
    const char letter = (M == 3) ? 'Q' : (M == 4) ? 'R' : (M == 5) ? 'S' : 'V';
    return std::string(1, letter) + std::to_string(u_power);
}

bool slot_matched(double computed, double target) {
    return std::abs(computed - target) <= 1e-9 * (1.0 + std::abs(target));
}

double slot_value(const ModelParams& model, int order_n, int M, int j) {
    const MomentPolynomial poly = moment_coefficients(model, order_n, M);
    return poly.terms.at({j, (M - j) / 2});
}

}  // namespace

CoefficientReport coefficient_report(const ModelParams& model, int order_n) {
    model.validate();
    const int z = model.lattice.z();
    const int max_order = std::min({6, 2 * z + 1, order_n + 2});

    // Generic thetas for the conditional classification: interior points of
    // the widest validity interval, fractions chosen to avoid the reference
    // roots.
    std::vector<double> generic;
    const auto ranges = lattice::theta_validity_range(model.lattice, model.mu);
    if (!ranges.empty()) {
        const auto [lo, hi] = ranges.front();
        for (double t : {0.237, 0.541, 0.863}) generic.push_back(lo + t * (hi - lo));
    }
    std::vector<double> reference_roots;
    if (z <= 5) {
        reference_roots = reference_theta(model.lattice, model.mu).positive_weight_roots();
    }

    CoefficientReport report;
    for (int M = 3; M <= max_order; ++M) {
        for (int j = M; j >= 0; j -= 2) {
            CoefficientRow row;
            row.name = slot_name(M, j);
            row.moment_order = M;
            row.u_power = j;
            row.target = m_target_coefficient(M, j, model.mu);
            row.computed = slot_value(model, order_n, M, j);
            row.matched = slot_matched(row.computed, row.target);

            bool generic_ok = !generic.empty();
            for (double th : generic) {
                ModelParams probe{model.lattice, model.mu, th};
                if (!slot_matched(slot_value(probe, order_n, M, j), row.target)) {
                    generic_ok = false;
                    break;
                }
            }
            bool theta0_ok = false;
            for (double th : reference_roots) {
                ModelParams probe{model.lattice, model.mu, th};
                if (slot_matched(slot_value(probe, order_n, M, j), row.target)) {
                    theta0_ok = true;
                    break;
                }
            }
            row.condition = generic_ok  ? MatchCondition::Unconditional
                            : theta0_ok ? MatchCondition::RequiresTheta0
                                        : MatchCondition::Never;
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace mulb::moments
