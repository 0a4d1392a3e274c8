#pragma once

#include <complex>
#include <span>
#include <vector>

// Special functions underlying the one-dimensional high-order lattice
// construction: rising factorials, elementary symmetric polynomials,
// generalized Laguerre / Hermite polynomials with the mu-parameterized
// normalization, and the generalized exponential series.
namespace mulb::special {

// Dense polynomial, coefficients[k] = coefficient of x^k.
struct PolyCoeffs {
    std::vector<double> coefficients;

    int degree() const;                 // index of last nonzero coefficient, -1 if zero
    double eval(double x) const;        // Horner
    std::complex<double> eval(std::complex<double> x) const;
    PolyCoeffs derivative() const;
};

// All complex roots via companion-matrix eigenvalues on the monic
// normalization, each polished by one Newton step.
std::vector<std::complex<double>> poly_roots(const PolyCoeffs& p);

// Roots with |imag| < 1e-9 * (1 + |root|) collapsed to the real axis,
// returned sorted ascending; complex pairs are dropped.
std::vector<double> poly_real_roots(const PolyCoeffs& p);

// Rising factorial x (x+1) ... (x+m-1); 1 for m = 0.
double pochhammer(double x, int m);

// prod_{k=0}^{z-1} (1 - a q^k); 1 for z = 0.
double q_pochhammer(double a, double q, int z);

// n!! with 0!! = 1!! = 1.
long long double_factorial(int n);

// e_k of the inputs via incremental expansion of prod (t + v_i); e_0 = 1.
// Throws std::out_of_range unless 0 <= k <= values.size().
double elementary_symmetric(std::span<const double> values, int k);

// All of e_0 ... e_n at once (same expansion, one pass).
std::vector<double> elementary_symmetric_all(std::span<const double> values);

// Generalized Laguerre L_n^alpha(x) by the three-term recurrence.
double gen_laguerre(int n, double alpha, double x);

// True unless mu + 1/2 is zero or a negative integer (poles of the
// normalization ratio; the construction is undefined there).
bool mu_is_valid(double mu);

// Throws std::domain_error when mu sits on a pole.
void require_valid_mu(double mu);

// Normalized generalized Hermite polynomial H_n^(mu)(x): the Szego form
// scaled so that the mu = 0 case reduces exactly to the classical
// physicists' polynomials. The normalization ratio is evaluated as the
// cancelled product (1/2)_k / (mu+1/2)_k, finite for every valid mu.
double gen_hermite(int n, double mu, double x);

// Generalized exponential e_mu(x): power series truncated when the term
// drops below 1e-16 relative or after 200 terms. e_0(x) = exp(x).
// Throws std::domain_error for invalid mu or if the series fails to
// converge (|x| beyond the documented bound of 50).
double gen_exponential(double mu, double x);

}  // namespace mulb::special
