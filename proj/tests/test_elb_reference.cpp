#include "mulb/elb_reference.hpp"

#include "mulb/moments.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace mulb;
using namespace mulb::elb;

namespace {

ElbInput product_input(double rho, double u, double theta, double c1) {
    return ElbInput{rho, rho * u, theta + u * u, theta, c1, 2};
}

}  // namespace

TEST_CASE("product form fixture and moment constraints") {
    auto in = product_input(1.1, 0.2, 1.0 / 3.0, 1.0);
    auto pops = elb_edf(in);
    REQUIRE(pops.f.size() == 3);
    CHECK(pops.f[0] == doctest::Approx(0.68933333333333333).epsilon(1e-14));
    CHECK(pops.f[1] == doctest::Approx(0.31533333333333333).epsilon(1e-14));
    CHECK(pops.f[2] == doctest::Approx(0.09533333333333333).epsilon(1e-14));
    CHECK(pops.mass() == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(pops.momentum() == doctest::Approx(0.22).epsilon(1e-14));
    CHECK(moments::raw_moment(pops, 2) ==
          doctest::Approx(in.rho * in.p_trace).epsilon(1e-14));
}

TEST_CASE("two-constraint minimizer fixture") {
    ElbInput in{1.1, 0.22, 0.0, 1.0 / 3.0, 1.0, 1};
    auto pops = elb_edf(in);
    CHECK(pops.f[0] == doctest::Approx(0.69057961542105343).epsilon(1e-14));
    CHECK(pops.f[1] == doctest::Approx(0.31471019228947329).epsilon(1e-14));
    CHECK(pops.f[2] == doctest::Approx(0.094710192289473287).epsilon(1e-14));
    CHECK(pops.mass() == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(pops.momentum() == doctest::Approx(0.22).epsilon(1e-14));
}

TEST_CASE("product form does not depend on theta") {
    auto base = elb_edf(product_input(0.9, -0.15, 1.0 / 3.0, 1.0));
    for (double theta : {0.29, 0.5, 0.9}) {
        ElbInput in{0.9, 0.9 * -0.15, 1.0 / 3.0 + 0.15 * 0.15, theta, 1.0, 2};
        auto pops = elb_edf(in);
        for (int i = 0; i < 3; ++i) CHECK(pops.f[i] == doctest::Approx(base.f[i]).epsilon(1e-13));
    }
}

TEST_CASE("rest states reduce to scaled weights") {
    SUBCASE("three constraints") {
        ElbInput in{1.4, 0.0, 0.4, 0.4, 1.0, 2};
        auto pops = elb_edf(in);
        CHECK(pops.f[0] == doctest::Approx(1.4 * 0.6).epsilon(1e-14));
        CHECK(pops.f[1] == doctest::Approx(1.4 * 0.2).epsilon(1e-14));
        CHECK(pops.f[2] == doctest::Approx(1.4 * 0.2).epsilon(1e-14));
    }
    SUBCASE("two constraints") {
        ElbInput in{1.4, 0.0, 0.0, 1.0 / 3.0, 1.0, 1};
        auto pops = elb_edf(in);
        CHECK(pops.f[0] == doctest::Approx(1.4 * 2.0 / 3.0).epsilon(1e-14));
        CHECK(pops.f[1] == doctest::Approx(1.4 / 6.0).epsilon(1e-14));
        CHECK(pops.f[2] == doctest::Approx(1.4 / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("damped Newton oracle agrees with the closed forms") {
    SUBCASE("three constraints") {
        // States scale with the lattice speed (v = u c1, theta' = theta c1^2),
        // which keeps the target pressure admissible for every c1.
        for (double c1 : {1.0, 2.0}) {
            for (double theta : {0.3, 1.0 / 3.0}) {
                for (double u : {-0.3, 0.0, 0.25}) {
                    for (double rho : {0.7, 1.3}) {
                        CAPTURE(c1);
                        CAPTURE(theta);
                        CAPTURE(u);
                        const double v = u * c1;
                        const double th = theta * c1 * c1;
                        ElbInput in{rho, rho * v, th + v * v, th, c1, 2};
                        auto closed = elb_edf(in);
                        auto iter = elb_lagrange_oracle(in);
                        for (int i = 0; i < 3; ++i)
                            CHECK(iter.f[i] == doctest::Approx(closed.f[i]).epsilon(1e-10));
                    }
                }
            }
        }
    }
    SUBCASE("two constraints") {
        for (double c1 : {1.0, 2.0}) {
            for (double u : {-0.35, 0.1, 0.4}) {
                CAPTURE(c1);
                CAPTURE(u);
                const double theta = c1 * c1 / 3.0;
                ElbInput in{1.2, 1.2 * u * c1, 0.0, theta, c1, 1};
                auto closed = elb_edf(in);
                auto iter = elb_lagrange_oracle(in);
                for (int i = 0; i < 3; ++i)
                    CHECK(iter.f[i] == doctest::Approx(closed.f[i]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("minimizer beats mass and momentum preserving perturbations") {
    ElbInput in{1.0, 0.2, 0.0, 1.0 / 3.0, 1.0, 1};
    auto star = elb_edf(in);
    const double h_star = entropy(star, in.theta, in.c1);
    for (double eps : {1e-3, -1e-3, 1e-4, -1e-4}) {
        Populations probe = star;
        probe.f[0] -= 2.0 * eps;
        probe.f[1] += eps;
        probe.f[2] += eps;
        CHECK(entropy(probe, in.theta, in.c1) > h_star);
    }
}

TEST_CASE("entropy rejects non-positive populations") {
    Populations pops;
    pops.velocities = {0.0, 1.0, -1.0};
    pops.f = {0.5, -0.1, 0.6};
    CHECK_THROWS_AS(entropy(pops, 1.0 / 3.0, 1.0), std::domain_error);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(elb_edf(ElbInput{-1.0, 0.0, 0.4, 1.0 / 3.0, 1.0, 2}), std::domain_error);
    CHECK_THROWS_AS(elb_edf(ElbInput{1.0, 1.2, 1.5, 1.0 / 3.0, 1.0, 2}), std::domain_error);
    CHECK_THROWS_AS(elb_edf(ElbInput{1.0, 0.1, 1.04, 1.0, 1.0, 2}), std::domain_error);
    CHECK_THROWS_AS(elb_edf(ElbInput{1.0, 0.1, 0.0, 0.4, 1.0, 1}), std::domain_error);
    CHECK_THROWS_AS(elb_edf(ElbInput{1.0, 0.1, 0.4, 1.0 / 3.0, 1.0, 3}), std::domain_error);
}

TEST_CASE("comparison table ranks the contenders by their residuals") {
    const double rho = 1.1, u = 0.2;

    SUBCASE("at the matched temperature the quadratic form is exact in pressure") {
        auto rows = comparison_table(rho, u, 1.0 / 3.0, 1.0);
        REQUIRE(rows.size() == 6);
        CHECK(rows[0].label == "H(2)^(0)");
        CHECK(std::abs(rows[0].pressure_residual) < 1e-13);
    }

    auto rows = comparison_table(rho, u, 0.3, 1.0);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CAPTURE(row.label);
        CHECK(std::abs(row.mass_residual) < 1e-13);
    }

    SUBCASE("quadratic classical form misses the pressure off temperature") {
        CHECK(std::abs(rows[0].pressure_residual) > 1e-6);
        CHECK(std::abs(rows[1].pressure_residual) > 1e-6);
    }

    SUBCASE("tying the shape parameter to theta restores momentum and pressure") {
        for (int i : {2, 3}) {
            CAPTURE(rows[i].label);
            CHECK(std::abs(rows[i].momentum_residual) < 1e-13);
            CHECK(std::abs(rows[i].pressure_residual) < 1e-13);
            CHECK(rows[i].third_moment_residual ==
                  doctest::Approx(-rho * u * u * u).epsilon(1e-11));
        }
    }

    SUBCASE("product form matches the Gaussian pressure by construction") {
        CHECK(rows[5].label == "E(2)");
        CHECK(std::abs(rows[5].pressure_residual) < 1e-12);
        CHECK(std::abs(rows[5].momentum_residual) < 1e-13);
    }

    SUBCASE("two-constraint entropic pressure error scales as the fourth power") {
        double ratios[3];
        const double speeds[3] = {0.02, 0.01, 0.005};
        for (int i = 0; i < 3; ++i) {
            auto small = comparison_table(1.0, speeds[i], 1.0 / 3.0, 1.0);
            CHECK(small[4].label == "E(1)");
            CHECK(std::abs(small[4].momentum_residual) < 1e-13);
            ratios[i] = small[4].pressure_residual / std::pow(speeds[i], 4);
        }
        CHECK(ratios[0] != 0.0);
        CHECK(ratios[1] / ratios[0] == doctest::Approx(1.0).epsilon(0.2));
        CHECK(ratios[2] / ratios[1] == doctest::Approx(1.0).epsilon(0.2));
    }
}
