// Command-line front end: every library computation exposed as a
// deterministic, file-emitting subcommand with a uniform exit-code contract
// (0 success, 1 I/O failure, 2 domain/model error).

#include "mulb/analysis.hpp"
#include "mulb/elb_reference.hpp"
#include "mulb/equilibrium.hpp"
#include "mulb/lattice_model.hpp"
#include "mulb/lbgk_solver.hpp"
#include "mulb/moments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;

// 17 significant digits: round-trip exact for doubles, byte-stable output.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct OutputSink {
    std::string path;    // empty = stdout
    std::string format;  // "csv" or "json"

    int write_rows(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows,
                   const json& metadata) const {
        std::ostringstream body;
        if (format == "json") {
            json doc;
            doc["metadata"] = metadata;
            doc["columns"] = columns;
            json data = json::array();
            for (const auto& row : rows) data.push_back(row);
            doc["rows"] = data;
            body << doc.dump(2) << "\n";
        } else {
            for (auto it = metadata.begin(); it != metadata.end(); ++it) {
                body << "# " << it.key() << " = "
                     << (it.value().is_string() ? it.value().get<std::string>()
                                                : it.value().dump())
                     << "\n";
            }
            for (size_t c = 0; c < columns.size(); ++c) {
                body << columns[c] << (c + 1 < columns.size() ? "," : "\n");
            }
            for (const auto& row : rows) {
                for (size_t c = 0; c < row.size(); ++c) {
                    body << row[c] << (c + 1 < row.size() ? "," : "\n");
                }
            }
        }
        if (path.empty()) {
            std::cout << body.str();
            return std::cout ? kExitOk : kExitIo;
        }
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot open " << path << " for writing\n";
            return kExitIo;
        }
        out << body.str();
        return out ? kExitOk : kExitIo;
    }
};

// Shared model flags: lattice speeds, mu, and a theta that may be the
// literal string "auto" (resolved through the reference-temperature roots).
struct ModelFlags {
    std::string lattice;
    double mu = 0.0;
    std::string theta = "auto";

    mulb::LatticeSet parse_lattice() const { return mulb::LatticeSet::parse(lattice); }

    double resolve_theta(const mulb::LatticeSet& set) const {
        if (theta != "auto") return std::stod(theta);
        const auto result = mulb::moments::reference_theta(set, mu);
        const auto roots = result.positive_weight_roots();
        if (roots.empty()) {
            throw std::domain_error(
                "no real reference temperature with all-positive weights; pass --theta");
        }
        if (roots.size() > 1) {
            std::cerr << "warning: " << roots.size()
                      << " positive-weight reference roots; using the smallest (";
            for (size_t i = 0; i < roots.size(); ++i) {
                std::cerr << (i ? ", " : "") << fmt(roots[i]);
            }
            std::cerr << ")\n";
        }
        return roots.front();
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags, bool with_theta = true) {
    cmd->add_option("--lattice", flags.lattice,
                    "comma-separated positive speeds, e.g. 1,2,3 (the 0 and the "
                    "negative partners are implied)")
        ->required();
    cmd->add_option("--mu", flags.mu, "generalization parameter mu");
    if (with_theta) {
        cmd->add_option("--theta", flags.theta,
                        "temperature, or 'auto' for the reference value");
    }
}

void warn_off_cartesian(const mulb::LatticeSet& set) {
    if (!set.on_cartesian) {
        std::cerr << "warning: non-integer speeds; streaming-based commands will reject "
                     "this lattice\n";
    }
}

json model_metadata(const mulb::LatticeSet& set, double mu, double theta) {
    json meta;
    std::string speeds;
    for (size_t i = 0; i < set.speeds.size(); ++i) {
        speeds += (i ? "," : "") + fmt(set.speeds[i]);
    }
    meta["lattice"] = speeds;
    meta["n_q"] = set.nq();
    meta["mu"] = fmt(mu);
    meta["theta"] = fmt(theta);
    return meta;
}

int cmd_weights(const ModelFlags& flags, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    warn_off_cartesian(set);
    const double theta = flags.resolve_theta(set);
    const mulb::ModelParams model{set, flags.mu, theta};
    const auto weights = mulb::lattice::weights(model);

    json meta = model_metadata(set, flags.mu, theta);
    meta["all_positive"] = weights.all_positive();
    std::vector<std::vector<std::string>> rows;
    for (const auto& [v, w] : weights.signed_items()) {
        rows.push_back({fmt(v), fmt(w)});
    }
    return sink.write_rows({"velocity", "weight"}, rows, meta);
}

int cmd_theta0(const ModelFlags& flags, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    const auto result = mulb::moments::reference_theta(set, flags.mu);

    json meta = model_metadata(set, flags.mu, 0.0);
    meta.erase("theta");
    std::vector<std::vector<std::string>> rows;
    for (const auto& root : result.roots) {
        if (root.is_real) {
            rows.push_back({fmt(root.value.real()), "real",
                            root.positive_weights ? "yes" : "no"});
        } else {
            rows.push_back({fmt(root.value.real()) + (root.value.imag() < 0 ? "-" : "+") +
                                fmt(std::abs(root.value.imag())) + "i",
                            "complex", "no"});
        }
    }
    return sink.write_rows({"root", "kind", "positive_weights"}, rows, meta);
}

int cmd_report(const ModelFlags& flags, int order_n, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    const double theta = flags.resolve_theta(set);
    const mulb::ModelParams model{set, flags.mu, theta};
    const int order = order_n > 0 ? order_n : mulb::equilibrium::default_order(set);
    const auto report = mulb::moments::coefficient_report(model, order);

    json meta = model_metadata(set, flags.mu, theta);
    meta["order_n"] = order;
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : report.rows) {
        const char* condition =
            row.condition == mulb::moments::MatchCondition::Unconditional ? "unconditional"
            : row.condition == mulb::moments::MatchCondition::RequiresTheta0
                ? "requires_theta0"
                : "never";
        rows.push_back({row.name, fmt(row.computed), fmt(row.target),
                        row.matched ? "yes" : "no", condition});
    }
    return sink.write_rows({"coefficient", "computed", "target", "matched", "condition"}, rows,
                           meta);
}

int cmd_range(const ModelFlags& flags, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    const auto ranges = mulb::lattice::theta_validity_range(set, flags.mu);

    json meta = model_metadata(set, flags.mu, 0.0);
    meta.erase("theta");
    std::vector<std::vector<std::string>> rows;
    for (const auto& [lo, hi] : ranges) {
        rows.push_back({fmt(lo), fmt(hi)});
    }
    return sink.write_rows({"theta_min", "theta_max"}, rows, meta);
}

int cmd_umax(const ModelFlags& flags, int order_n, double tol, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    const double theta = flags.resolve_theta(set);
    const mulb::ModelParams model{set, flags.mu, theta};
    const int order = order_n > 0 ? order_n : mulb::equilibrium::default_order(set);
    const double umax = mulb::equilibrium::max_speed(model, order, 1.0, tol);

    json meta = model_metadata(set, flags.mu, theta);
    meta["order_n"] = order;
    meta["scan_tolerance"] = fmt(tol);
    return sink.write_rows({"u_max"}, {{fmt(umax)}}, meta);
}

int cmd_ccdf(const ModelFlags& flags, bool exact, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    double theta = 0.0;
    mulb::WeightVector weights;
    if (exact) {
        // Exact rational path for large consecutive-integer lattices where
        // the double-precision alternating sums have no digits left.
        const int z = set.z();
        for (int k = 0; k < z; ++k) {
            if (set.speeds[static_cast<size_t>(k)] != k + 1) {
                throw std::domain_error("--exact requires the consecutive lattice 1..z");
            }
        }
        if (flags.mu != 0.0) throw std::domain_error("--exact supports mu = 0 only");
        if (flags.theta == "auto") throw std::domain_error("--exact requires a numeric --theta");
        long num = 0, den = 1;
        const auto slash = flags.theta.find('/');
        if (slash == std::string::npos) {
            double integral = 0.0;
            if (std::modf(std::stod(flags.theta), &integral) != 0.0) {
                throw std::domain_error("--exact needs an integer or p/q rational --theta");
            }
            num = std::lround(integral);
        } else {
            num = std::stol(flags.theta.substr(0, slash));
            den = std::stol(flags.theta.substr(slash + 1));
        }
        theta = static_cast<double>(num) / static_cast<double>(den);
        const auto exact_w = mulb::analysis::weights_exact(z, num, den);
        weights.speeds = set.speeds;
        weights.values = exact_w;
    } else {
        theta = flags.resolve_theta(set);
        weights = mulb::lattice::weights({set, flags.mu, theta});
    }

    json meta = model_metadata(set, flags.mu, theta);
    meta["exact"] = exact;
    std::vector<std::vector<std::string>> rows;
    auto items = weights.signed_items();
    std::sort(items.begin(), items.end());
    for (const auto& [v, w] : items) {
        rows.push_back({fmt(v), fmt(w), fmt(mulb::analysis::cdf(weights, v)),
                        fmt(mulb::analysis::ccdf(weights, v)),
                        fmt(mulb::analysis::exp_ccdf(1.0, v))});
    }
    return sink.write_rows({"velocity", "weight", "cdf", "ccdf", "exp_ccdf"}, rows, meta);
}

int cmd_edf(const ModelFlags& flags, int order_n, double rho, double u, const OutputSink& sink) {
    const auto set = flags.parse_lattice();
    const double theta = flags.resolve_theta(set);
    const mulb::ModelParams model{set, flags.mu, theta};
    const int order = order_n > 0 ? order_n : mulb::equilibrium::default_order(set);
    const auto pops = mulb::equilibrium::edf(model, {rho, u}, order);

    json meta = model_metadata(set, flags.mu, theta);
    meta["order_n"] = order;
    meta["rho"] = fmt(rho);
    meta["u"] = fmt(u);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [v, fv] : pops.signed_items()) {
        rows.push_back({fmt(v), fmt(fv)});
    }
    return sink.write_rows({"velocity", "population"}, rows, meta);
}

int cmd_elb_compare(double rho, double u, double theta, double c1, const OutputSink& sink) {
    const auto rows_in = mulb::elb::comparison_table(rho, u, theta, c1);

    json meta;
    meta["rho"] = fmt(rho);
    meta["u"] = fmt(u);
    meta["theta"] = fmt(theta);
    meta["c1"] = fmt(c1);
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : rows_in) {
        rows.push_back({row.label, fmt(row.mass_residual), fmt(row.momentum_residual),
                        fmt(row.pressure_residual), fmt(row.third_moment_residual)});
    }
    return sink.write_rows(
        {"model", "mass_residual", "momentum_residual", "pressure_residual",
         "third_moment_residual"},
        rows, meta);
}

int cmd_shocktube(const ModelFlags& flags, mulb::solver::SolverConfig config, double nu,
                  const OutputSink& sink, const std::string& config_out) {
    const auto set = flags.parse_lattice();
    const double theta = flags.resolve_theta(set);
    config.model = {set, flags.mu, theta};
    if (nu > 0.0) {
        config.tau = 0.5 + nu / ((1.0 + 2.0 * flags.mu) * theta);
    }
    const auto snapshots = mulb::solver::run(config);

    json meta = model_metadata(set, flags.mu, theta);
    meta["order_n"] = config.effective_order();
    meta["tau"] = fmt(config.tau);
    meta["nodes"] = config.nodes;
    meta["steps"] = config.steps;
    meta["rho_left"] = fmt(config.rho_left);
    meta["rho_right"] = fmt(config.rho_right);
    if (!config_out.empty()) {
        std::ofstream cfg(config_out);
        if (!cfg) {
            std::cerr << "error: cannot open " << config_out << " for writing\n";
            return kExitIo;
        }
        cfg << meta.dump(2) << "\n";
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto& snap : snapshots) {
        for (long x = 0; x < config.nodes; ++x) {
            rows.push_back({std::to_string(snap.step), std::to_string(x + 1),
                            fmt(snap.rho[static_cast<size_t>(x)]),
                            fmt(snap.u[static_cast<size_t>(x)])});
        }
    }
    return sink.write_rows({"step", "node", "rho", "u"}, rows, meta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mu-generalized one-dimensional lattice Boltzmann toolkit"};
    app.require_subcommand(1);

    OutputSink sink;
    app.add_option("--out", sink.path, "output file (default: stdout)");
    app.add_option("--format", sink.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");

    ModelFlags flags;
    int order_n = 0;
    double rho = 1.0, u = 0.0, theta = 1.0 / 3.0, c1 = 1.0, nu = 0.0, tol = 1e-4;
    bool exact = false;
    std::string config_out;
    mulb::solver::SolverConfig solver_config;
    solver_config.nodes = 8000;
    solver_config.steps = 3000;
    solver_config.tau = 0.55;

    auto* weights_cmd = app.add_subcommand("weights", "closed-form lattice weights");
    add_model_flags(weights_cmd, flags);

    auto* theta0_cmd =
        app.add_subcommand("theta0", "reference-temperature polynomial roots (z <= 5)");
    add_model_flags(theta0_cmd, flags, false);

    auto* report_cmd =
        app.add_subcommand("report", "moment-coefficient table with matching classification");
    add_model_flags(report_cmd, flags);
    report_cmd->add_option("--order", order_n, "expansion order N (default z+1)");

    auto* range_cmd = app.add_subcommand("range", "positive-weight theta intervals");
    add_model_flags(range_cmd, flags, false);

    auto* umax_cmd = app.add_subcommand("umax", "largest speed with positive populations");
    add_model_flags(umax_cmd, flags);
    umax_cmd->add_option("--order", order_n, "expansion order N (default z+1)");
    umax_cmd->add_option("--tol", tol, "bisection tolerance");

    auto* ccdf_cmd = app.add_subcommand("ccdf", "weight distribution CDF/CCDF table");
    add_model_flags(ccdf_cmd, flags);
    ccdf_cmd->add_flag("--exact", exact,
                       "exact rational weights (consecutive integer lattice, mu=0, "
                       "rational theta)");

    auto* edf_cmd = app.add_subcommand("edf", "equilibrium populations at a flow state");
    add_model_flags(edf_cmd, flags);
    edf_cmd->add_option("--order", order_n, "expansion order N (default z+1)");
    edf_cmd->add_option("--rho", rho, "density");
    edf_cmd->add_option("--u", u, "flow velocity");

    auto* elb_cmd = app.add_subcommand(
        "elb-compare", "three-velocity equilibrium comparison (moment residuals)");
    elb_cmd->add_option("--rho", rho, "density");
    elb_cmd->add_option("--u", u, "flow velocity");
    elb_cmd->add_option("--theta", theta, "temperature in (0, c1^2/2)");
    elb_cmd->add_option("--c1", c1, "lattice speed");

    auto* shock_cmd = app.add_subcommand("shocktube", "two-plateau density relaxation run");
    add_model_flags(shock_cmd, flags);
    shock_cmd->add_option("--order", order_n, "expansion order N (default z+1)");
    shock_cmd->add_option("--nu", nu, "kinematic viscosity; sets tau = 1/2 + nu/((1+2mu)theta)");
    shock_cmd->add_option("--tau", solver_config.tau, "relaxation time (overridden by --nu)");
    shock_cmd->add_option("--nodes", solver_config.nodes, "domain length L");
    shock_cmd->add_option("--steps", solver_config.steps, "number of time steps");
    shock_cmd->add_option("--rho-left", solver_config.rho_left, "left plateau density");
    shock_cmd->add_option("--rho-right", solver_config.rho_right, "right plateau density");
    shock_cmd->add_option("--snapshot-every", solver_config.snapshot_every,
                          "snapshot stride (0 = final only)");
    shock_cmd->add_option("--threads", solver_config.threads, "collision worker threads");
    shock_cmd->add_option("--config-out", config_out, "also write the run parameters as JSON");

    // Let --out/--format appear after the subcommand name as well.
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (weights_cmd->parsed()) return cmd_weights(flags, sink);
        if (theta0_cmd->parsed()) {
            if (flags.parse_lattice().z() > 5) {
                std::cerr << "error: reference-temperature polynomial is implemented for "
                             "z <= 5\n";
                return kExitDomain;
            }
            return cmd_theta0(flags, sink);
        }
        if (report_cmd->parsed()) return cmd_report(flags, order_n, sink);
        if (range_cmd->parsed()) return cmd_range(flags, sink);
        if (umax_cmd->parsed()) return cmd_umax(flags, order_n, tol, sink);
        if (ccdf_cmd->parsed()) return cmd_ccdf(flags, exact, sink);
        if (edf_cmd->parsed()) return cmd_edf(flags, order_n, rho, u, sink);
        if (elb_cmd->parsed()) return cmd_elb_compare(rho, u, theta, c1, sink);
        if (shock_cmd->parsed()) {
            solver_config.order_n = order_n;
            return cmd_shocktube(flags, solver_config, nu, sink, config_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
