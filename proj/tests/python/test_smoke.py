"""Smoke tests for the _mulb extension module.

The heavy numerical validation lives in the C++ suites; these checks confirm
the Python surface is wired to the same library and returns sane structures.
"""

import math

import pytest

import _mulb as mulb

THETA0_D1Q7 = 0.697953322019683088
THETA0_D1Q9 = 0.756080852594268582
THETA0_D1Q11 = 2.123517542924955553


def test_weights_three_velocity_lattice():
    w = mulb.weights([1.0], 0.0, 1.0 / 3.0)
    assert w["values"][0] == pytest.approx(2.0 / 3.0, abs=1e-14)
    assert w["values"][1] == pytest.approx(1.0 / 6.0, abs=1e-14)
    assert w["all_positive"]


def test_reference_theta_five_speed_lattice():
    res = mulb.reference_theta([1, 2, 3, 4, 5], 0.0)
    roots = res["positive_weight_roots"]
    assert any(abs(r - THETA0_D1Q11) < 1e-12 for r in roots)
    assert len(res["polynomial"]) == 6
    assert any(not r["is_real"] for r in res["roots"]) or all(
        r["is_real"] for r in res["roots"]
    )


def test_validity_ranges_chain_between_lattices():
    theta0 = mulb.reference_theta([1, 2, 3], 0.0)["positive_weight_roots"][0]
    lo, _hi = mulb.theta_validity_range([1, 2, 3, 5], 0.0)[0]
    assert lo == pytest.approx(theta0, abs=1e-12)


def test_equilibrium_conserves_mass_and_momentum():
    pops = mulb.edf([1, 2, 3], 0.0, 0.8, 1.2, 0.1)
    velocities = [c for c, _ in pops]
    assert velocities == sorted(velocities)
    assert sum(f for _, f in pops) == pytest.approx(1.2, abs=1e-12)
    assert sum(c * f for c, f in pops) == pytest.approx(0.12, abs=1e-12)


def test_max_speed_matches_documented_value():
    u_max = mulb.max_speed([1, 2, 3], 0.0, THETA0_D1Q7)
    assert u_max == pytest.approx(0.761, abs=5e-3)


def test_negative_population_onset():
    bad = mulb.negative_populations([1, 2, 3, 4, 5], 0.0, 1.0, 1.1)
    assert bad == [-3.0]


def test_coefficient_report_classification():
    rows = mulb.coefficient_report([1, 2, 3], 0.0, THETA0_D1Q7, 4)
    named = {r["name"]: r for r in rows}
    assert named["S3"]["matched"]
    assert named["S3"]["condition"] == "requires_theta0"
    assert named["Q3"]["computed"] == pytest.approx(1.0, abs=1e-9)
    assert not named["V6"]["matched"]
    assert named["V6"]["condition"] == "never"


def test_tail_functions_are_complementary():
    total = mulb.cdf([1, 2, 3], 0.0, 1.0, 1.0) + mulb.ccdf([1, 2, 3], 0.0, 1.0, 1.0)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_generating_function_identity():
    mu, a, x = 1.0 / 3.0, 0.4, 0.7
    series = sum(
        mulb.gen_hermite(n, mu, x) * a**n / math.factorial(n) for n in range(21)
    )
    target = mulb.gen_exponential(mu, 2.0 * x * a) * math.exp(-a * a)
    assert series == pytest.approx(target, abs=1e-10)


def test_elb_comparison_rows():
    rows = mulb.elb_comparison(1.1, 0.2, 1.0 / 3.0)
    labels = [r["label"] for r in rows]
    assert len(rows) == 6
    assert labels[0] == "H(2)^(0)"
    assert abs(rows[0]["pressure"]) < 1e-12  # quadratic form is exact at theta = 1/3
    assert abs(rows[5]["pressure"]) < 1e-12  # product form is exact by construction


def test_shock_tube_conserves_mass():
    tau = 0.5 + (1.0 / 30.0) / THETA0_D1Q9
    snaps = mulb.shock_tube([1, 2, 3, 5], 0.0, THETA0_D1Q9, tau, 200, 40)
    assert snaps[-1]["step"] == 40
    rho = snaps[-1]["rho"]
    assert sum(rho) == pytest.approx(150.0, abs=1e-9)
    assert all(x > 0.0 for x in rho)


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        mulb.weights([1.0], 0.0, -1.0)
