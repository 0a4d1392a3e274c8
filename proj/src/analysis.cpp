#include "mulb/analysis.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mulb::analysis {

double heaviside(double a, double x) {
    if (x < 0.0) return 0.0;
    if (x > 0.0) return 1.0;
    return a;
}

double sign_from_step(double x) { return 2.0 * heaviside(0.5, x) - 1.0; }

namespace {

constexpr double kRouteTol = 1e-12;

bool is_lattice_velocity(const WeightVector& weights, double c_n) {
    if (c_n == 0.0) return true;
    for (double c : weights.speeds) {
        if (std::abs(std::abs(c_n) - c) <= 1e-12 * (1.0 + c)) return true;
    }
    return false;
}

}  // namespace

double cdf(const WeightVector& weights, double c_n) {
    if (!is_lattice_velocity(weights, c_n)) {
        throw std::domain_error("cdf argument must be a lattice velocity");
    }

    double naive = 0.0;
    double below_sum = 0.0;  // negative velocities <= min(c_n, -c_1)
    double pos_sum = 0.0;    // positive velocities <= c_n
    for (const auto& [v, w] : weights.signed_items()) {
        if (v <= c_n + 1e-12) naive += w;
        if (v < 0.0 && (c_n >= 0.0 || v <= c_n + 1e-12)) below_sum += w;
        if (v > 0.0 && v <= c_n + 1e-12) pos_sum += w;
    }

    const double h1 = heaviside(1.0, c_n);
    const double via_step =
        (1.0 - 2.0 * h1) * below_sum + h1 * sign_from_step(c_n) * pos_sum + h1;
    if (std::abs(naive - via_step) > kRouteTol) {
        throw std::logic_error("cdf partial sum and step-function route disagree");
    }
    return naive;
}

double ccdf(const WeightVector& weights, double c_n) {
    const double complement = 1.0 - cdf(weights, c_n);
    if (c_n >= 0.0) {
        double tail = 0.0;
        for (const auto& [v, w] : weights.signed_items()) {
            if (v > c_n + 1e-12) tail += w;
        }
        if (std::abs(tail - complement) > kRouteTol) {
            throw std::logic_error("ccdf complement and tail sum disagree");
        }
        return tail;
    }
    return complement;
}

double exp_ccdf(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("exp_ccdf requires s > 0");
    return x >= 0.0 ? std::exp(-s * x) : 1.0;
}

TailReport tail_report(const ModelParams& model) {
    const WeightVector weights = lattice::weights(model);
    if (!weights.all_positive()) {
        throw std::domain_error("tail_report requires all-positive weights");
    }

    TailReport report;
    auto items = weights.signed_items();
    std::sort(items.begin(), items.end());
    for (const auto& [v, w] : items) {
        report.ccdf_values.emplace_back(v, ccdf(weights, v));
    }

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const auto& [v, w] : items) {
        m2 += w * v * v;
        m3 += w * v * v * v;
        m4 += w * v * v * v * v;
    }
    report.kurtosis = m4 / (m2 * m2);
    report.skewness = m3 / std::pow(m2, 1.5);

    const size_t z = weights.speeds.size();
    if (z >= 2) {
        report.extreme_weights.emplace_back(weights.speeds[z - 2], weights.values[z - 1]);
    }
    report.extreme_weights.emplace_back(weights.speeds[z - 1], weights.values[z]);

    std::vector<double> nonneg{0.0};
    nonneg.insert(nonneg.end(), weights.speeds.begin(), weights.speeds.end());
    for (double v : nonneg) {
        report.exp_comparison.push_back({v, ccdf(weights, v), exp_ccdf(1.0, v)});
        report.subexp_sequence.emplace_back(v, std::exp(v) * ccdf(weights, v));
    }
    for (size_t k = 1; k + 1 < nonneg.size(); ++k) {
        report.long_tail_ratios.push_back(ccdf(weights, nonneg[k - 1]) / ccdf(weights, nonneg[k]));
    }
    return report;
}

double ccdf_crossing(const WeightVector& weights, double threshold) {
    std::vector<double> nonneg{0.0};
    nonneg.insert(nonneg.end(), weights.speeds.begin(), weights.speeds.end());
    for (double v : nonneg) {
        if (ccdf(weights, v) < threshold) return v;
    }
    return weights.speeds.back();
}

namespace {

struct ExactWeightTable {
    std::vector<mpq_class> w;  // index 0 = rest weight, k = speed k
};

// Closed-form weights over {0, ±1, ..., ±z} with mu = 0, exact in rational
// arithmetic. The numerators are alternating sums that cancel tens of
// digits for z near 100, which is what this path exists to survive.
ExactWeightTable exact_weight_table(int z, long theta_num, long theta_den,
                                    const std::vector<int>& speed_indices, bool need_w0) {
    if (z < 1) throw std::domain_error("exact weights need z >= 1");
    if (theta_den <= 0 || theta_num <= 0) throw std::domain_error("theta must be positive");
    mpq_class theta(theta_num, theta_den);
    theta.canonicalize();

    // Elementary symmetric polynomials of all squared speeds 1, 4, ..., z^2.
    std::vector<mpz_class> e(static_cast<size_t>(z) + 1);
    e[0] = 1;
    for (int n = 1; n <= z; ++n) {
        const mpz_class y = mpz_class(n) * n;
        for (int i = n; i >= 1; --i) {
            e[static_cast<size_t>(i)] += y * e[static_cast<size_t>(i) - 1];
        }
    }

    // Odd double factorials (2m-1)!! with the empty product at m = 0.
    std::vector<mpz_class> dfact(static_cast<size_t>(z) + 1);
    dfact[0] = 1;
    for (int m = 1; m <= z; ++m) dfact[static_cast<size_t>(m)] = dfact[static_cast<size_t>(m) - 1] * (2 * m - 1);

    std::vector<mpq_class> theta_pow(static_cast<size_t>(z) + 1);
    theta_pow[0] = 1;
    for (int m = 1; m <= z; ++m) theta_pow[static_cast<size_t>(m)] = theta_pow[static_cast<size_t>(m) - 1] * theta;

    ExactWeightTable table;
    table.w.assign(static_cast<size_t>(z) + 1, mpq_class(0));

    if (need_w0) {
        mpq_class p0(0);
        for (int i = 0; i <= z; ++i) {
            mpq_class term = theta_pow[static_cast<size_t>(z - i)];
            term *= dfact[static_cast<size_t>(z - i)];
            term *= e[static_cast<size_t>(i)];
            if ((z - i) % 2 != 0) term = -term;
            p0 += term;
        }
        table.w[0] = p0 / mpq_class(e[static_cast<size_t>(z)]);
    }

    for (int k : speed_indices) {
        if (k < 1 || k > z) throw std::domain_error("speed index outside 1..z");
        const mpz_class yk = mpz_class(k) * k;

        // Symmetric polynomials with speed k removed, derived from the full
        // table by back-substitution.
        std::vector<mpz_class> ep(static_cast<size_t>(z));
        ep[0] = 1;
        for (int i = 1; i <= z - 1; ++i) {
            ep[static_cast<size_t>(i)] =
                e[static_cast<size_t>(i)] - yk * ep[static_cast<size_t>(i) - 1];
        }

        mpq_class numer(0);
        for (int i = 0; i <= z - 1; ++i) {
            mpq_class term = theta_pow[static_cast<size_t>(z - i)];
            term *= dfact[static_cast<size_t>(z - i)];
            term *= ep[static_cast<size_t>(i)];
            if ((z - 1 - i) % 2 != 0) term = -term;
            numer += term;
        }

        mpz_class denom = 2 * yk;
        for (int n = 1; n <= z; ++n) {
            if (n == k) continue;
            denom *= mpz_class(n) * n - yk;
        }
        table.w[static_cast<size_t>(k)] = numer / mpq_class(denom);
    }
    return table;
}

ExtremeWeight describe(int velocity, const mpq_class& w) {
    ExtremeWeight out;
    out.velocity = velocity;
    out.sign = sgn(w);
    out.value = w.get_d();
    if (out.sign != 0) {
        const mpq_class magnitude = abs(w);
        mpf_class f(magnitude, 256);
        long exp2 = 0;
        const double mant = mpf_get_d_2exp(&exp2, f.get_mpf_t());
        out.log10_abs = std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
    }
    return out;
}

}  // namespace

std::vector<ExtremeWeight> extreme_weights_exact(int z, long theta_num, long theta_den,
                                                 const std::vector<int>& speed_indices) {
    const ExactWeightTable table = exact_weight_table(z, theta_num, theta_den, speed_indices, false);
    std::vector<ExtremeWeight> out;
    out.reserve(speed_indices.size());
    for (int k : speed_indices) {
        out.push_back(describe(k, table.w[static_cast<size_t>(k)]));
    }
    return out;
}

std::vector<double> weights_exact(int z, long theta_num, long theta_den) {
    std::vector<int> all(static_cast<size_t>(z));
    for (int k = 1; k <= z; ++k) all[static_cast<size_t>(k) - 1] = k;
    const ExactWeightTable table = exact_weight_table(z, theta_num, theta_den, all, true);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(z) + 1);
    for (const auto& w : table.w) out.push_back(w.get_d());
    return out;
}

}  // namespace mulb::analysis
