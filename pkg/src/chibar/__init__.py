"""Expected chromatic numbers of binomial random graphs G(n, p)."""

from .asymptotics import bollobas_bounds, recurrence_step, recurrence_trajectory
from .census import (
    ChromaticCensus,
    ExpectationPolynomial,
    build_census,
    census_to_polynomial,
    evaluate_polynomial,
    exact_polynomial,
    ingest_census_fixture,
)
from .coloring import ChromaticResult, chi_bruteforce, chi_exact
from .graph import LabeledGraph, enumerate_all, graph_probability, sample_gnp
from .ircm import ircm_run, ircm_until_stable
from .sampling import McEstimate, mc_ac, mc_ircm

__version__ = "0.1.0"

__all__ = [
    "ChromaticCensus",
    "ChromaticResult",
    "ExpectationPolynomial",
    "LabeledGraph",
    "McEstimate",
    "bollobas_bounds",
    "build_census",
    "census_to_polynomial",
    "chi_bruteforce",
    "chi_exact",
    "enumerate_all",
    "evaluate_polynomial",
    "exact_polynomial",
    "graph_probability",
    "ingest_census_fixture",
    "ircm_run",
    "ircm_until_stable",
    "mc_ac",
    "mc_ircm",
    "recurrence_step",
    "recurrence_trajectory",
    "sample_gnp",
]
