#include "mulb/special_fn.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mulb::special {

int PolyCoeffs::degree() const {
    for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k) {
        if (coefficients[static_cast<size_t>(k)] != 0.0) return k;
    }
    return -1;
}

double PolyCoeffs::eval(double x) const {
    double acc = 0.0;
    for (size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
    return acc;
}

std::complex<double> PolyCoeffs::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
    return acc;
}

PolyCoeffs PolyCoeffs::derivative() const {
    PolyCoeffs d;
    for (size_t k = 1; k < coefficients.size(); ++k) {
        d.coefficients.push_back(static_cast<double>(k) * coefficients[k]);
    }
    return d;
}

std::vector<std::complex<double>> poly_roots(const PolyCoeffs& p) {
    const int deg = p.degree();
    if (deg <= 0) return {};
    const auto& c = p.coefficients;
    const double lead = c[static_cast<size_t>(deg)];

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[static_cast<size_t>(i)] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    const PolyCoeffs dp = p.derivative();

    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        std::complex<double> r = solver.eigenvalues()(i);
        const std::complex<double> slope = dp.eval(r);
        if (std::abs(slope) > 0.0) r -= p.eval(r) / slope;
        roots.push_back(r);
    }
    return roots;
}

std::vector<double> poly_real_roots(const PolyCoeffs& p) {
    std::vector<double> out;
    for (const auto& r : poly_roots(p)) {
        if (std::abs(r.imag()) < 1e-9 * (1.0 + std::abs(r))) out.push_back(r.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

double pochhammer(double x, int m) {
    if (m < 0) throw std::domain_error("pochhammer: m must be nonnegative");
    double acc = 1.0;
    for (int j = 0; j < m; ++j) acc *= x + j;
    return acc;
}

double q_pochhammer(double a, double q, int z) {
    if (z < 0) throw std::domain_error("q_pochhammer: z must be nonnegative");
    double acc = 1.0;
    double qk = 1.0;
    for (int k = 0; k < z; ++k) {
        acc *= 1.0 - a * qk;
        qk *= q;
    }
    return acc;
}

long long double_factorial(int n) {
    if (n < -1) throw std::domain_error("double_factorial: n must be >= -1");
    long long acc = 1;
    for (int k = n; k > 1; k -= 2) acc *= k;
    return acc;
}

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
    std::vector<double> e(values.size() + 1, 0.0);
    e[0] = 1.0;
    for (double v : values) {
        for (size_t i = e.size() - 1; i >= 1; --i) e[i] += v * e[i - 1];
    }
    return e;
}

double elementary_symmetric(std::span<const double> values, int k) {
    if (k < 0 || static_cast<size_t>(k) > values.size()) {
        throw std::out_of_range("elementary_symmetric: k outside 0..n");
    }
    return elementary_symmetric_all(values)[static_cast<size_t>(k)];
}

double gen_laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::domain_error("gen_laguerre: n must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

bool mu_is_valid(double mu) {
    const double a = mu + 0.5;
    if (a > 0.0) return true;
    const double nearest = std::round(a);
    return std::abs(a - nearest) > 1e-12;
}

void require_valid_mu(double mu) {
    if (!mu_is_valid(mu)) {
        throw std::domain_error("mu + 1/2 must not be zero or a negative integer");
    }
}

namespace {

// (1/2)_k / (mu + 1/2)_k, the cancelled normalization ratio; exactly 1 at mu = 0.
double normalization_ratio(int k, double mu) {
    double acc = 1.0;
    for (int j = 0; j < k; ++j) acc *= (0.5 + j) / (mu + 0.5 + j);
    return acc;
}

}  // namespace

double gen_hermite(int n, double mu, double x) {
    if (n < 0) throw std::domain_error("gen_hermite: n must be nonnegative");
    require_valid_mu(mu);
    if (n == 0) return 1.0;
    if (n % 2 == 0) {
        const int k = n / 2;
        const double norm = normalization_ratio(k, mu);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return norm * sign * std::ldexp(1.0, 2 * k) * std::tgamma(k + 1.0) *
               gen_laguerre(k, mu - 0.5, x * x);
    }
    const int k = (n - 1) / 2;
    const double norm = normalization_ratio(k + 1, mu);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return norm * sign * std::ldexp(1.0, 2 * k + 1) * std::tgamma(k + 1.0) * x *
           gen_laguerre(k, mu + 0.5, x * x);
}

double gen_exponential(double mu, double x) {
    require_valid_mu(mu);
    // Term pair recurrences: a_m covers even powers, b_m odd powers; the
    // Gamma prefactor cancels into the starting values, so nothing overflows.
    const double h = 0.5 * x;
    double a = 1.0;
    double b = h / (mu + 0.5);
    double sum = a + b;
    for (int m = 0; m < 200; ++m) {
        a *= h * h / ((m + 1.0) * (m + mu + 0.5));
        b *= h * h / ((m + 1.0) * (m + mu + 1.5));
        sum += a + b;
        // Test the even and odd halves separately: for negative arguments
        // they can cancel exactly long before the series has converged.
        if (std::abs(a) + std::abs(b) < 1e-16 * (std::abs(sum) + 1.0)) return sum;
    }
    throw std::domain_error("gen_exponential: series did not converge (|x| too large)");
}

}  // namespace mulb::special
