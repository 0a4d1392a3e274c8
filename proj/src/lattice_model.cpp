#include "mulb/lattice_model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mulb {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

}  // namespace

std::vector<double> LatticeSet::velocities() const {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(nq()));
    v.push_back(0.0);
    for (double c : speeds) v.push_back(c);
    for (double c : speeds) v.push_back(-c);
    return v;
}

LatticeSet LatticeSet::from_speeds(std::vector<double> speeds) {
    std::sort(speeds.begin(), speeds.end());
    if (speeds.empty()) throw std::domain_error("lattice needs at least one positive speed");
    for (size_t i = 0; i < speeds.size(); ++i) {
        if (speeds[i] <= 0.0) throw std::domain_error("lattice speeds must be positive");
        if (i > 0 && speeds[i] == speeds[i - 1]) {
            throw std::domain_error("lattice speeds must be distinct");
        }
    }
    LatticeSet lattice;
    lattice.on_cartesian =
        std::all_of(speeds.begin(), speeds.end(), [](double c) { return near_integer(c); });
    lattice.speeds = std::move(speeds);
    return lattice;
}

LatticeSet LatticeSet::parse(std::string_view text) {
    std::vector<double> speeds;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            throw std::domain_error("cannot parse lattice token '" + token + "'");
        }
        if (used != token.size()) {
            throw std::domain_error("cannot parse lattice token '" + token + "'");
        }
        token.clear();
        if (value == 0.0) return;  // implicit rest velocity
        speeds.push_back(std::abs(value));
    };
    for (size_t i = 0; i < text.size(); ++i) {
        const unsigned char ch = static_cast<unsigned char>(text[i]);
        if (ch == ',' || std::isspace(ch)) {
            flush();
        } else if (ch == 0xC2 && i + 1 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0xB1) {
            ++i;  // UTF-8 plus-minus sign, acts as a separator prefix
            flush();
        } else if (ch == '+') {
            continue;  // "+-1" / "+1" forms
        } else {
            token.push_back(static_cast<char>(ch));
        }
    }
    flush();
    std::sort(speeds.begin(), speeds.end());
    speeds.erase(std::unique(speeds.begin(), speeds.end()), speeds.end());
    return from_speeds(std::move(speeds));
}

void ModelParams::validate() const {
    special::require_valid_mu(mu);
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    if (lattice.speeds.empty()) throw std::domain_error("empty lattice");
}

double WeightVector::sum() const {
    double total = values[0];
    for (size_t k = 1; k < values.size(); ++k) total += 2.0 * values[k];
    return total;
}

double WeightVector::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

bool WeightVector::all_positive(double tol) const { return min_value() >= tol; }

std::vector<std::pair<double, double>> WeightVector::signed_items() const {
    std::vector<std::pair<double, double>> items;
    items.reserve(2 * speeds.size() + 1);
    for (size_t k = speeds.size(); k-- > 0;) items.emplace_back(-speeds[k], values[k + 1]);
    items.emplace_back(0.0, values[0]);
    for (size_t k = 0; k < speeds.size(); ++k) items.emplace_back(speeds[k], values[k + 1]);
    return items;
}

double WeightVector::at_velocity(double c) const {
    if (std::abs(c) < 1e-9) return values[0];
    for (size_t k = 0; k < speeds.size(); ++k) {
        if (std::abs(std::abs(c) - speeds[k]) < 1e-9) return values[k + 1];
    }
    throw std::out_of_range("velocity not on the lattice");
}

namespace lattice {

special::PolyCoeffs w0_numerator(const LatticeSet& lattice, double mu) {
    special::require_valid_mu(mu);
    const int z = lattice.z();
    std::vector<double> y;
    for (double c : lattice.speeds) y.push_back(c * c);
    const std::vector<double> e = special::elementary_symmetric_all(y);

    special::PolyCoeffs p;
    p.coefficients.assign(static_cast<size_t>(z) + 1, 0.0);
    for (int i = 0; i <= z; ++i) {
        const int power = z - i;
        const double sign = (power % 2 == 0) ? 1.0 : -1.0;
        p.coefficients[static_cast<size_t>(power)] =
            sign * std::ldexp(1.0, power) * special::pochhammer(mu + 0.5, power) * e[static_cast<size_t>(i)];
    }
    return p;
}

special::PolyCoeffs wk_numerator(const LatticeSet& lattice, double mu, int k) {
    special::require_valid_mu(mu);
    const int z = lattice.z();
    if (k < 1 || k > z) throw std::out_of_range("wk_numerator: k outside 1..z");
    std::vector<double> y;
    for (int j = 0; j < z; ++j) {
        if (j != k - 1) y.push_back(lattice.speeds[static_cast<size_t>(j)] * lattice.speeds[static_cast<size_t>(j)]);
    }
    const std::vector<double> e = special::elementary_symmetric_all(y);

    special::PolyCoeffs p;
    p.coefficients.assign(static_cast<size_t>(z) + 1, 0.0);
    for (int i = 0; i <= z - 1; ++i) {
        const int power = z - i;
        const double sign = ((z - 1 - i) % 2 == 0) ? 1.0 : -1.0;
        p.coefficients[static_cast<size_t>(power)] =
            sign * std::ldexp(1.0, power) * special::pochhammer(mu + 0.5, power) * e[static_cast<size_t>(i)];
    }
    return p;
}

WeightVector weights(const ModelParams& model) {
    model.validate();
    const int z = model.lattice.z();
    std::vector<double> y;
    for (double c : model.lattice.speeds) y.push_back(c * c);

    WeightVector w;
    w.speeds = model.lattice.speeds;
    w.values.resize(static_cast<size_t>(z) + 1);

    const double ez = special::elementary_symmetric_all(y)[static_cast<size_t>(z)];
    w.values[0] = w0_numerator(model.lattice, model.mu).eval(model.theta) / ez;

    for (int k = 1; k <= z; ++k) {
        double denom = 2.0 * y[static_cast<size_t>(k - 1)];
        for (int n = 0; n < z; ++n) {
            if (n != k - 1) denom *= y[static_cast<size_t>(n)] - y[static_cast<size_t>(k - 1)];
        }
        if (denom == 0.0) throw std::domain_error("repeated speeds make the weight denominator vanish");
        w.values[static_cast<size_t>(k)] =
            wk_numerator(model.lattice, model.mu, k).eval(model.theta) / denom;
    }

    if (std::abs(w.sum() - 1.0) > 1e-8) {
        throw std::logic_error("weights failed the unit-sum identity");
    }
    return w;
}

WeightVector weights_oracle(const ModelParams& model, int max_order) {
    model.validate();
    const int z = model.lattice.z();
    const int nq = model.lattice.nq();
    if (z > 6) throw std::domain_error("weights_oracle supports z <= 6");
    if (max_order < nq - 1) {
        throw std::domain_error("weights_oracle needs max_order >= n_q - 1");
    }

    const std::vector<double> vel = model.lattice.velocities();
    const double s2t = std::sqrt(2.0 * model.theta);
    const int rows = max_order + 1;

    Eigen::MatrixXd a(rows, nq);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    b(0) = 1.0;
    for (int n = 0; n < rows; ++n) {
        for (int i = 0; i < nq; ++i) {
            a(n, i) = special::gen_hermite(n, model.mu, vel[static_cast<size_t>(i)] / s2t);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < nq) throw std::domain_error("weights_oracle: singular quadrature system");
    const Eigen::VectorXd solution = qr.solve(b);

    WeightVector w;
    w.speeds = model.lattice.speeds;
    w.values.resize(static_cast<size_t>(z) + 1);
    w.values[0] = solution(0);
    // Positive and negative partners must agree by symmetry; average them.
    for (int k = 1; k <= z; ++k) {
        w.values[static_cast<size_t>(k)] = 0.5 * (solution(k) + solution(z + k));
    }
    return w;
}

std::vector<std::pair<double, double>> theta_validity_range(const LatticeSet& lattice,
                                                            double mu) {
    const int z = lattice.z();
    std::vector<double> cuts;
    for (double r : special::poly_real_roots(w0_numerator(lattice, mu))) {
        if (r > 0.0) cuts.push_back(r);
    }
    for (int k = 1; k <= z; ++k) {
        for (double r : special::poly_real_roots(wk_numerator(lattice, mu, k))) {
            if (r > 0.0) cuts.push_back(r);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> points;
    points.push_back(0.0);
    points.insert(points.end(), cuts.begin(), cuts.end());
    points.push_back(cuts.empty() ? 10.0 : cuts.back() * 2.0);

    std::vector<std::pair<double, double>> intervals;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] - points[i] < 1e-12) continue;
        const double mid = 0.5 * (points[i] + points[i + 1]);
        ModelParams probe{lattice, mu, mid};
        if (weights(probe).all_positive()) intervals.emplace_back(points[i], points[i + 1]);
    }
    std::stable_sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) {
        return (a.second - a.first) > (b.second - b.first);
    });
    return intervals;
}

std::map<std::vector<double>, double> tensor_weights(const WeightVector& one_d, int d) {
    if (d != 2 && d != 3) throw std::domain_error("tensor_weights supports d in {2, 3}");
    const auto items = one_d.signed_items();
    std::map<std::vector<double>, double> out;
    for (const auto& [ci, wi] : items) {
        for (const auto& [cj, wj] : items) {
            if (d == 2) {
                out[{ci, cj}] = wi * wj;
            } else {
                for (const auto& [ck, wk] : items) out[{ci, cj, ck}] = wi * wj * wk;
            }
        }
    }
    return out;
}

}  // namespace lattice
}  // namespace mulb
