"""One-dimensional mu-generalized Hermite lattice Boltzmann construction."""

from ._mulb import (
    ccdf,
    cdf,
    coefficient_report,
    edf,
    elb_comparison,
    gen_exponential,
    gen_hermite,
    max_speed,
    negative_populations,
    reference_theta,
    shock_tube,
    theta_validity_range,
    weights,
)

__all__ = [
    "ccdf",
    "cdf",
    "coefficient_report",
    "edf",
    "elb_comparison",
    "gen_exponential",
    "gen_hermite",
    "max_speed",
    "negative_populations",
    "reference_theta",
    "shock_tube",
    "theta_validity_range",
    "weights",
]
