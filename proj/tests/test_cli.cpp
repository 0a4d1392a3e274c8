#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#ifndef _WIN32
#include <sys/wait.h>
#endif
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// End-to-end checks of the command-line tool. The binary path arrives via
// the MULB_CLI environment variable set by the test harness.

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* cli_path() { return std::getenv("MULB_CLI"); }

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / ("mulb_cli_out_" + std::to_string(++counter) + ".txt");
    const auto err = dir / ("mulb_cli_err_" + std::to_string(counter) + ".txt");
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
#ifdef _WIN32
    result.exit_code = status;
#else
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
#endif
    result.out = read_file(out);
    result.err = read_file(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return result;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

// Data rows of a CSV body: everything after the '#' metadata block and the
// header line.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        rows.push_back(split_csv(line));
    }
    return rows;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("command-line tool is reachable") {
    REQUIRE_MESSAGE(cli_path() != nullptr, "MULB_CLI must point at the built binary");
    auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "weights"));
    CHECK(contains(r.out, "shocktube"));
}

TEST_CASE("weights of the three-velocity lattice at the automatic temperature") {
    auto r = run_cli("weights --lattice 1 --mu 0");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "-1");
    CHECK(std::stod(rows[0][1]) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(std::stod(rows[1][1]) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(contains(r.out, "# all_positive = true"));
}

TEST_CASE("weights flag negative entries without failing") {
    auto r = run_cli("weights --lattice 1,2 --mu 0 --theta 0.2");
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "# all_positive = false"));
}

TEST_CASE("automatic temperature with several candidates warns on stderr") {
    auto r = run_cli("weights --lattice 1,3 --mu 0");
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.err, "warning"));
    CHECK(contains(r.err, "using the smallest"));
    CHECK(contains(r.out, "# theta = 0.367544467966324"));
}

TEST_CASE("reference temperature roots of the five-speed lattice") {
    auto r = run_cli("theta0 --lattice 1,2,3,4,5 --mu 0");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    bool found = false;
    for (const auto& row : rows) {
        if (row.size() != 3 || row[1] != "real") continue;
        if (std::abs(std::stod(row[0]) - 2.123517542924955553) < 1e-12) {
            CHECK(row[2] == "yes");
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("reference temperature refuses oversized lattices") {
    auto r = run_cli("theta0 --lattice 1,2,3,4,5,6 --mu 0");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "z <= 5"));
}

TEST_CASE("coefficient report marks the in-place matches") {
    auto r = run_cli("report --lattice 1,2,3 --mu 0");
    REQUIRE(r.exit_code == 0);
    bool s3_seen = false;
    for (const auto& row : csv_rows(r.out)) {
        REQUIRE(row.size() == 5);
        if (row[0] == "S3") {
            s3_seen = true;
            CHECK(std::stod(row[1]) == doctest::Approx(10.0).epsilon(1e-9));
            CHECK(row[2] == "10");
            CHECK(row[3] == "yes");
            CHECK(row[4] == "requires_theta0");
        }
        if (row[0] == "V6") {
            CHECK(row[3] == "no");
            CHECK(row[4] == "never");
        }
    }
    CHECK(s3_seen);
}

TEST_CASE("positivity ranges for the generalized three-speed lattice") {
    auto r = run_cli("range --lattice 1,2,3 --mu 0.2");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][0]) == doctest::Approx(0.32000287646303355).epsilon(1e-12));
    CHECK(std::stod(rows[0][1]) == doctest::Approx(1.4012838319803406).epsilon(1e-12));
}

TEST_CASE("largest admissible speed of the classical three-speed lattice") {
    auto r = run_cli("umax --lattice 1,2,3 --mu 0");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][0]) == doctest::Approx(0.7615).epsilon(0.01));
}

TEST_CASE("largest admissible speed needs positive weights") {
    auto r = run_cli("umax --lattice 1,2 --mu 0 --theta 0.2");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error"));
}

TEST_CASE("equilibrium populations match the library fixture") {
    auto r = run_cli("edf --lattice 1,3 --mu 0 --theta 1.6324555320336759 --rho 1.2 --u 0.31");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[3][0] == "1");
    CHECK(std::stod(rows[3][1]) == doctest::Approx(0.58972635686543187).epsilon(1e-12));
    CHECK(std::stod(rows[0][1]) == doctest::Approx(0.029112729879708676).epsilon(1e-12));
}

TEST_CASE("exact and double tail tables agree on a small lattice") {
    auto exact = run_cli("ccdf --lattice 1,2,3,4,5 --mu 0 --theta 1 --exact");
    auto plain = run_cli("ccdf --lattice 1,2,3,4,5 --mu 0 --theta 1");
    REQUIRE(exact.exit_code == 0);
    REQUIRE(plain.exit_code == 0);
    auto re = csv_rows(exact.out);
    auto rp = csv_rows(plain.out);
    REQUIRE(re.size() == 11);
    REQUIRE(re.size() == rp.size());
    for (size_t i = 0; i < re.size(); ++i) {
        CAPTURE(i);
        CHECK(re[i][0] == rp[i][0]);
        for (size_t c = 1; c < 5; ++c) {
            CHECK(std::stod(re[i][c]) == doctest::Approx(std::stod(rp[i][c])).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact tail table rejects non-rational temperatures") {
    auto r = run_cli("ccdf --lattice 1,2,3,4,5 --mu 0 --theta 1.25e-1 --exact");
    CHECK(r.exit_code == 2);
}

TEST_CASE("entropic comparison table emits six classified rows") {
    auto r = run_cli("elb-compare --rho 1.1 --u 0.2 --theta 0.3 --c1 1");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 5);
        if (row[0] == "E(2)") CHECK(std::abs(std::stod(row[3])) < 1e-12);
        if (row[0] == "H(2)^(0)") CHECK(std::abs(std::stod(row[3])) > 1e-6);
    }
}

TEST_CASE("identical invocations produce identical bytes") {
    const std::string cmd = "weights --lattice 1,2,3,5 --mu 0 --format json";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("the two output formats carry the same numbers") {
    auto csv = run_cli("weights --lattice 1,3 --mu 0 --theta 1");
    auto js = run_cli("weights --lattice 1,3 --mu 0 --theta 1 --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(js.exit_code == 0);
    for (const auto& row : csv_rows(csv.out)) {
        CAPTURE(row[1]);
        CHECK(contains(js.out, "\"" + row[1] + "\""));
    }
    CHECK(contains(js.out, "\"columns\""));
    CHECK(contains(js.out, "\"metadata\""));
}

TEST_CASE("file output and run-parameter sidecar") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto data = dir / "mulb_cli_shock.csv";
    const auto cfg = dir / "mulb_cli_shock_config.json";
    auto r = run_cli("shocktube --lattice 1 --mu 0 --theta 0.333333 --tau 0.6 --nodes 30 "
                     "--steps 5 --out " + data.string() + " --config-out " + cfg.string());
    REQUIRE(r.exit_code == 0);
    const std::string body = read_file(data);
    CHECK(csv_rows(body).size() == 30);
    CHECK(contains(body, "step,node,rho,u"));
    const std::string config = read_file(cfg);
    CHECK(contains(config, "\"tau\""));
    CHECK(contains(config, "\"nodes\": 30"));
    std::filesystem::remove(data);
    std::filesystem::remove(cfg);
}

TEST_CASE("malformed lattices exit with the domain code") {
    auto r = run_cli("weights --lattice abc");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error"));
    auto zero = run_cli("weights --lattice 0");
    CHECK(zero.exit_code == 2);
}
