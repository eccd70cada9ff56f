"""Exact q-series and partition tools for checking Rogers-Ramanujan-type identities."""
from .series import (
    Monomial, Polynomial, TruncatedSeries, coeff, gaussian, monomial, pochhammer_finite,
    pochhammer_infinite, q_binomial, series_equal,
)
from .partitions import ConstraintSet, Partition, enumerate_partitions, weighted_gf
from .identities import CATALOG, build, oracle_check, verify

__all__ = [
    "CATALOG", "ConstraintSet", "Monomial", "Partition", "Polynomial", "TruncatedSeries", "build",
    "coeff", "enumerate_partitions", "gaussian", "monomial", "oracle_check", "pochhammer_finite",
    "pochhammer_infinite", "q_binomial", "series_equal", "verify", "weighted_gf",
]
__version__ = "0.1.0"
