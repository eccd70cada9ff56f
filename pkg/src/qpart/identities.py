"""Both sides of every identity in the catalog, and the harness that compares them.

Series identities are compared as truncated series; each sum is cut off as soon
as the smallest q-degree its term can contribute exceeds the truncation order.
Polynomial identities (``thm4``, ``corollary``) are compared exactly after
multiplying both sides by the common ``(q^2; q^2)`` denominator.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .partitions import (
    DISTINCT_SPARSE_EVENS, RR, ConstraintSet, weighted_gf, weighted_pair_gf,
)
from .series import (
    Difference, Monomial, Polynomial, Q, TruncatedSeries, divide_exact, first_difference,
    gaussian, monomial, series_equal,
)

DEFAULT_T = 20

Q2 = monomial(q=2)
ATQ = monomial(a=1, t=1, q=1)
BTQ = monomial(b=1, t=1, q=1)
PAIR_WEIGHTS = ({"nu": ("t", "b")}, {"nu": ("t", "a")})


class CatalogError(ValueError):
    """Unknown identity, side or parameter."""


def _mono_series(T: int, c: int = 1, **exps: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(monomial(**exps), T, c)


def _poly_series(poly: Polynomial, T: int, **exps: int) -> TruncatedSeries:
    return TruncatedSeries.from_polynomial(poly * Polynomial.mono(monomial(**exps)), T)


def _upto(T: int, min_degree: Callable[[int], int]) -> range:
    """Indices 0..K with ``min_degree(K) <= T``; ``min_degree`` must be increasing from index 1."""
    k = 0
    while min_degree(k + 1) <= T:
        k += 1
    return range(k + 1)


# --- first pair of identities: a, b, t weighted -----------------------------


def ismail_raw_lhs(p, T):
    total = TruncatedSeries.zero(T)
    for k in _upto(T, lambda k: k * (k + 1) // 2):
        term = _mono_series(T, (-1) ** k, b=k, t=k, q=k * (k + 1) // 2)
        total += term.div_pochhammer(Q, k).div_pochhammer(ATQ, k)
    return total.times_pochhammer(ATQ, None).div_pochhammer(Q, None)


def ismail_raw_rhs(p, T):
    total = TruncatedSeries.zero(T)
    for k in _upto(T, lambda k: k * (3 * k + 1) // 2):
        term = _mono_series(T, (-1) ** k, a=k, b=k, t=2 * k, q=k + k * (3 * k - 1) // 2)
        total += term.div_pochhammer(ATQ, k).div_pochhammer(BTQ, k).div_pochhammer(Q, k)
    return (total.times_pochhammer(ATQ, None).times_pochhammer(BTQ, None)
            .div_pochhammer(Q, None))


def distinct_pairs_lhs(p, T):
    """sum_k (bt)^k q^(k(k+1)/2) / (q, atq; q)_k"""
    total = TruncatedSeries.zero(T)
    for k in _upto(T, lambda k: k * (k + 1) // 2):
        term = _mono_series(T, b=k, t=k, q=k * (k + 1) // 2)
        total += term.div_pochhammer(Q, k).div_pochhammer(ATQ, k)
    return total


def durfee_pairs_rhs(p, T):
    """sum_m (bt)^m q^(m(m+1)/2) (-btq^(m+1); q)_inf (at)^m q^(m^2) / (q, atq; q)_m"""
    total = TruncatedSeries.zero(T)
    for m in _upto(T, lambda m: m * (m + 1) // 2 + m * m):
        term = _mono_series(T, a=m, b=m, t=2 * m, q=m * (m + 1) // 2 + m * m)
        term = term.div_pochhammer(Q, m).div_pochhammer(ATQ, m)
        total += term.times_pochhammer(BTQ * Monomial(q=m), None, scale=-1)
    return total


def main_connection_rhs(p, T):
    total = TruncatedSeries.zero(T)
    for m in _upto(T, lambda m: m * (m + 1) // 2 + m * m):
        for k in range(m, T + 1):
            if k * (k + 1) // 2 + m * m > T:
                break
            term = _poly_series(gaussian(k, m), T, a=m, b=k, t=k + m, q=k * (k + 1) // 2 + m * m)
            total += term.div_pochhammer(Q, k).div_pochhammer(ATQ, m)
    return total


def pairs_largest_le_nu(p, T, max_part=None):
    c1 = ConstraintSet(gap=1, max_part=max_part)
    c2 = ConstraintSet(max_part=max_part)
    return weighted_pair_gf(c1, c2, "largest_le_nu", *PAIR_WEIGHTS, T)


def pairs_durfee_le_run(p, T, max_part=None):
    c1 = ConstraintSet(gap=1, max_part=max_part)
    c2 = ConstraintSet(max_part=max_part)
    return weighted_pair_gf(c1, c2, "durfee_le_run", *PAIR_WEIGHTS, T)


def thmL_lhs(p, T):
    N = p["N"]
    total = TruncatedSeries.zero(T)
    for k in _upto(T, lambda k: k * (k + 1) // 2):
        if k > N:
            break
        term = _poly_series(gaussian(N, k), T, b=k, t=k, q=k * (k + 1) // 2)
        total += term.div_pochhammer(ATQ, k)
    return total


def thmL_rhs(p, T):
    N = p["N"]
    total = TruncatedSeries.zero(T)
    for m in _upto(T, lambda m: m * (m + 1) // 2 + m * m):
        if m > N:
            break
        term = _poly_series(gaussian(N, m), T, a=m, b=m, t=2 * m, q=m * (m + 1) // 2 + m * m)
        term = term.div_pochhammer(ATQ, m)
        total += term.times_pochhammer(BTQ * Monomial(q=m), N - m, scale=-1)
    return total


# --- second pair: x weighted, gap-2 partitions ------------------------------


def ramanujan_raw_lhs(p, T):
    total = TruncatedSeries.zero(T)
    for n in _upto(T, lambda n: n * n):
        total += _mono_series(T, (-1) ** n, x=n, q=n * n).div_pochhammer(Q, n)
    return total


def ramanujan_raw_rhs(p, T):
    XQ2 = monomial(x=1, q=2)
    total = TruncatedSeries.zero(T)
    for n in _upto(T, lambda n: n * n):
        term = _mono_series(T, (-1) ** n, x=n, q=n * n)
        total += term.div_pochhammer(Q2, n, Q2).div_pochhammer(XQ2, n, Q2)
    return total.times_pochhammer(XQ2, None, Q2)


def ramanujan_lhs(p, T):
    total = TruncatedSeries.zero(T)
    for n in _upto(T, lambda n: n * n):
        total += _mono_series(T, x=n, q=n * n).div_pochhammer(Q, n)
    return total


def ramanujan_rhs(p, T):
    total = TruncatedSeries.zero(T)
    for n in _upto(T, lambda n: n * n):
        term = _mono_series(T, x=n, q=n * n).div_pochhammer(Q2, n, Q2)
        total += term.times_pochhammer(monomial(x=1, q=2 * n + 2), None, Q2, scale=-1)
    return total


def dist_even_lhs(p, T):
    n = p["n"]
    return TruncatedSeries.one(T).times_pochhammer(monomial(x=1, q=2 * n + 2), None, Q2, scale=-1)


def dist_even_rhs(p, T):
    n = p["n"]
    total = TruncatedSeries.zero(T)
    for k in _upto(T, lambda k: 2 * n * k + k * (k + 1)):
        total += _mono_series(T, x=k, q=2 * n * k + k * (k + 1)).div_pochhammer(Q2, k, Q2)
    return total


def _nk_pairs(T):
    for n in _upto(T, lambda n: n * n):
        for k in _upto(T - n * n, lambda k: 2 * n * k + k * (k + 1)):
            yield n, k


def nk_separate(p, T):
    total = TruncatedSeries.zero(T)
    for n, k in _nk_pairs(T):
        term = _mono_series(T, x=n + k, q=n * n + 2 * n * k + k * (k + 1))
        total += term.div_pochhammer(Q2, n, Q2).div_pochhammer(Q2, k, Q2)
    return total


def nk_binomial(p, T):
    total = TruncatedSeries.zero(T)
    for n, k in _nk_pairs(T):
        term = _poly_series(gaussian(n + k, k, step=2), T, x=n + k, q=n * n + 2 * n * k + k * (k + 1))
        total += term.div_pochhammer(Q2, n + k, Q2)
    return total


def rr_oracle(p, T):
    return weighted_gf(RR, {"nu": "x"}, T)


def sparse_evens_oracle(p, T):
    return weighted_gf(DISTINCT_SPARSE_EVENS, {"nu": "x"}, T)


# --- polynomial identities ---------------------------------------------------


def _has_zero_factor(c: int, length: int) -> bool:
    # (q^(2c); q^2)_length contains the factor (1 - q^0)
    return length > 0 and c <= 0 <= c + length - 1


def _qpoch2(c: int, length: int) -> Polynomial:
    """``(q^(2c); q^2)_length`` as an exact polynomial."""
    if _has_zero_factor(c, length):
        return Polynomial()
    if length > 0 and c < 0:
        raise ValueError(f"(q^{2 * c}; q^2)_{length} is not a polynomial")
    coeffs = [1]
    for i in range(length):
        e = 2 * (c + i)
        nxt = coeffs + [0] * e
        for j, v in enumerate(coeffs):
            nxt[j + e] -= v
        coeffs = nxt
    return Polynomial.from_univariate(coeffs)


def thm4_cleared(p, correction: str | None = "printed") -> tuple[Polynomial, Polynomial, Polynomial]:
    """(lhs * D, rhs * D, D) with ``D = (q^2; q^2)_(2*floor(L/2))``."""
    L = p["L"]
    A, B = (L + 1) // 2, L // 2
    den = _qpoch2(1, 2 * B)
    lhs = Polynomial()
    for n in range(B + 1):
        for k in range(B + 1):
            if _has_zero_factor(A - n - k + 1, n) or _has_zero_factor(B - n - k + 1, k):
                continue
            term = (Polynomial.mono(monomial(x=n + k, q=n * n + 2 * n * k + k * (k + 1)))
                    * gaussian(n + k, k, step=2)
                    * _qpoch2(A - n - k + 1, n) * _qpoch2(B - n - k + 1, k)
                    * _qpoch2(n + k + 1, 2 * B - n - k))
            lhs += term
    return lhs, thm4_rhs(p, correction) * den, den


def thm4_lhs(p):
    num, _, den = thm4_cleared(p)
    return divide_exact(num, den)


def thm4_rhs(p, correction: str | None = "printed") -> Polynomial:
    """Gap-2 partitions with parts <= L, plus the odd-L correction.

    ``"printed"`` subtracts ``q^(L^2) x^L``; ``"amended"`` subtracts
    ``q^(A^2) x^A`` with ``A = (L+1)/2``, the staircase with ``A`` odd parts
    that the left side's range ``n <= floor(L/2)`` leaves out. ``None``
    drops the correction.
    """
    L = p["L"]
    total = Polynomial()
    if L % 2 and correction == "printed":
        total -= Polynomial.mono(monomial(x=L, q=L * L))
    elif L % 2 and correction == "amended":
        A = (L + 1) // 2
        total -= Polynomial.mono(monomial(x=A, q=A * A))
    elif correction not in (None, "printed", "amended"):
        raise ValueError(f"unknown correction {correction!r}")
    for n in range(L + 2):
        total += Polynomial.mono(monomial(x=n, q=n * n)) * gaussian(L - n + 1, n)
    return total


def corollary_cleared(p) -> tuple[Polynomial, Polynomial, Polynomial]:
    L, m = p["L"], p["m"]
    c1 = (L + m) // 2 - m + 1
    c2 = (L + m - 1) // 2 - m + 1
    den = _qpoch2(1, m)
    lhs = Polynomial()
    for k in range(m + 1):
        if _has_zero_factor(c1, m - k) or _has_zero_factor(c2, k):
            continue
        lhs += (Polynomial.mono(monomial(q=k)) * _qpoch2(c1, m - k) * _qpoch2(c2, k)
                * gaussian(m, k, step=2))
    return lhs, gaussian(L, m) * den, den


def corollary_lhs(p):
    num, _, den = corollary_cleared(p)
    return divide_exact(num, den)


def corollary_rhs(p):
    return gaussian(p["L"], p["m"])


# --- background generating functions ----------------------------------------


def gf_bdd_product(p, T):
    j, N = p["j"], p["N"]
    return TruncatedSeries.one(T).div_pochhammer(monomial(x=1, q=j), N - j + 1)


def gf_bdd_smallest(p, T):
    j, N = p["j"], p["N"]
    total = TruncatedSeries.one(T)
    for i in range(j, N + 1):
        total += _mono_series(T, x=1, q=i).div_pochhammer(monomial(x=1, q=i), N - i + 1)
    return total


def gf_bdd_durfee(p, T):
    j, N = p["j"], p["N"]
    total = TruncatedSeries.zero(T)
    for i in range(j, N + 1):
        term = _poly_series(gaussian(N, i), T, x=i, q=i * i)
        total += term.div_pochhammer(monomial(x=1, q=j), i - j + 1)
    for i in range(j):
        total += _poly_series(gaussian(N - j + i, i), T, x=i, q=i * j)
    return total


def gf_bdd_oracle(p, T):
    return weighted_gf(ConstraintSet(min_part=p["j"], max_part=p["N"]), {"nu": "x"}, T)


def gf_parts_lhs(p, T):
    total = TruncatedSeries.zero(T)
    for i in range(p["j"], p["N"] + 1):
        total += _mono_series(T, x=i, q=i).div_pochhammer(Q, i)
    return total


def gf_parts_oracle(p, T):
    return weighted_gf(ConstraintSet(min_parts=p["j"], max_parts=p["N"]), {"nu": "x"}, T)


def gf_dist_lhs(p, T):
    total = TruncatedSeries.zero(T)
    for i in range(p["j"], p["N"] + 1):
        total += _mono_series(T, x=i, q=i * (i + 1) // 2).div_pochhammer(Q, i)
    return total


def gf_dist_oracle(p, T):
    return weighted_gf(ConstraintSet(gap=1, min_parts=p["j"], max_parts=p["N"]), {"nu": "x"}, T)


# --- catalog -------------------------------------------------------------------

SERIES = "series-identity"
POLYNOMIAL = "polynomial-identity"
ENUMERATIVE = "enumerative-identity"


@dataclass(frozen=True)
class Param:
    name: str
    minimum: int = 0
    default: int | None = None


@dataclass(frozen=True)
class IdentityDescriptor:
    """One catalog entry.

    ``sides`` maps a side label to a builder ``(params, T) -> TruncatedSeries``
    (or ``params -> Polynomial`` for polynomial identities). ``oracle``, when
    present, is a brute-force enumeration the sides must also match.
    """

    name: str
    kind: str
    anchor: str
    sides: Mapping[str, Callable]
    params: tuple[Param, ...] = ()
    comparisons: tuple[tuple[str, str], ...] = (("L", "R"),)
    oracle: Callable | None = None
    cleared: Callable | None = None
    min_degree: str = ""
    check: Callable[[dict], str | None] | None = None

    def resolve(self, given: Mapping[str, int] | None) -> dict[str, int]:
        given = dict(given or {})
        known = {p.name for p in self.params}
        extra = set(given) - known
        if extra:
            raise CatalogError(f"{self.name} takes no parameter(s) {sorted(extra)}")
        out = {}
        for prm in self.params:
            value = given.get(prm.name, prm.default)
            if value is None:
                raise CatalogError(f"{self.name} needs parameter {prm.name}")
            if not isinstance(value, int) or value < prm.minimum:
                raise CatalogError(f"{self.name}: {prm.name} must be an integer >= {prm.minimum}, got {value}")
            out[prm.name] = value
        if self.check:
            problem = self.check(out)
            if problem:
                raise CatalogError(f"{self.name}: {problem}")
        return out

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "sides": list(self.sides),
            "params": [{"name": p.name, "min": p.minimum, "max": None, "default": p.default}
                       for p in self.params],
            "term_min_q_degree": self.min_degree,
            "has_oracle": self.oracle is not None,
            "anchor": self.anchor,
        }


def _j_le_N(p):
    return None if p["j"] <= p["N"] else "need j <= N"


CATALOG: dict[str, IdentityDescriptor] = {}


def _register(d: IdentityDescriptor) -> None:
    CATALOG[d.name] = d


_register(IdentityDescriptor(
    "ismail_raw", SERIES,
    "(atq;q)_inf/(q;q)_inf sum (-bt)^k q^(k(k+1)/2)/(q,atq;q)_k equals the three-product sum with q^(k(3k-1)/2)",
    {"L": ismail_raw_lhs, "R": ismail_raw_rhs}, min_degree="L: k(k+1)/2; R: k(3k+1)/2"))
_register(IdentityDescriptor(
    "ismail_simpl", SERIES,
    "simplified form after cancellation and b -> -b: distinct-part sum vs Durfee-square sum",
    {"L": distinct_pairs_lhs, "R": durfee_pairs_rhs}, oracle=pairs_largest_le_nu,
    min_degree="L: k(k+1)/2; R: m(m+1)/2 + m^2"))
_register(IdentityDescriptor(
    "ismail_lhs_interp", ENUMERATIVE,
    "distinct-part sum counts pairs (D x P) with largest part of the second <= number of parts of the first",
    {"L": distinct_pairs_lhs, "R": pairs_largest_le_nu}, oracle=pairs_largest_le_nu,
    min_degree="k(k+1)/2"))
_register(IdentityDescriptor(
    "ismail_rhs_interp", ENUMERATIVE,
    "Durfee-square sum counts pairs (D x P) with Durfee side of the second <= initial run 1..r of the first",
    {"L": durfee_pairs_rhs, "R": pairs_durfee_le_run}, oracle=pairs_durfee_le_run,
    min_degree="m(m+1)/2 + m^2"))
_register(IdentityDescriptor(
    "main_connection", SERIES,
    "Durfee-square sum rewritten as a double sum with a q-binomial [k, m]_q",
    {"L": durfee_pairs_rhs, "R": main_connection_rhs}, oracle=pairs_largest_le_nu,
    min_degree="k(k+1)/2 + m^2"))
_register(IdentityDescriptor(
    "thm5", ENUMERATIVE,
    "pairs with l(pi_2) <= nu(pi_1) and pairs with d(pi_2) <= r(pi_1) have the same (t, a, b, q) generating function",
    {"L": pairs_largest_le_nu, "R": pairs_durfee_le_run}, oracle=pairs_durfee_le_run,
    min_degree="enumeration"))
_register(IdentityDescriptor(
    "thmL", SERIES,
    "bounded refinement with [N, k]_q and (-btq^(m+1); q)_(N-m)",
    {"L": thmL_lhs, "R": thmL_rhs}, params=(Param("N"),),
    oracle=lambda p, T: pairs_largest_le_nu(p, T, max_part=p["N"]),
    min_degree="L: k(k+1)/2; R: m(m+1)/2 + m^2"))
_register(IdentityDescriptor(
    "thm7", ENUMERATIVE,
    "pair identity with all parts of both partitions at most N",
    {"L": lambda p, T: pairs_largest_le_nu(p, T, max_part=p["N"]),
     "R": lambda p, T: pairs_durfee_le_run(p, T, max_part=p["N"])},
    params=(Param("N"),), oracle=lambda p, T: pairs_durfee_le_run(p, T, max_part=p["N"]),
    min_degree="enumeration"))
_register(IdentityDescriptor(
    "ramanujan_raw", SERIES,
    "sum q^(n^2)(-x)^n/(q;q)_n equals (xq^2;q^2)_inf sum q^(n^2)(-x)^n/(q^2,xq^2;q^2)_n",
    {"L": ramanujan_raw_lhs, "R": ramanujan_raw_rhs},
    oracle=lambda p, T: rr_oracle(p, T).flip_sign("x"), min_degree="n^2"))
_register(IdentityDescriptor(
    "ramanujan", SERIES,
    "sum q^(n^2)x^n/(q;q)_n equals sum q^(n^2)x^n/(q^2;q^2)_n (-xq^(2n+2);q^2)_inf",
    {"L": ramanujan_lhs, "R": ramanujan_rhs}, oracle=rr_oracle, min_degree="n^2"))
_register(IdentityDescriptor(
    "ramanujan_lhs_interp", ENUMERATIVE,
    "sum q^(n^2)x^n/(q;q)_n generates gap-2 partitions by number of parts",
    {"L": ramanujan_lhs, "R": rr_oracle}, oracle=rr_oracle, min_degree="n^2"))
_register(IdentityDescriptor(
    "ramanujan_rhs_interp", ENUMERATIVE,
    "odd/even split sum generates distinct-part partitions whose smallest even part exceeds twice the odd count",
    {"L": ramanujan_rhs, "R": sparse_evens_oracle}, oracle=sparse_evens_oracle, min_degree="n^2"))
_register(IdentityDescriptor(
    "thm3", ENUMERATIVE,
    "gap-2 partitions and distinct partitions with s_e > 2 nu_o are equinumerous by size and number of parts",
    {"L": rr_oracle, "R": sparse_evens_oracle}, oracle=sparse_evens_oracle, min_degree="enumeration"))
_register(IdentityDescriptor(
    "dist_even", SERIES,
    "(-xq^(2n+2);q^2)_inf = sum_k x^k q^(2nk+k(k+1))/(q^2;q^2)_k",
    {"L": dist_even_lhs, "R": dist_even_rhs}, params=(Param("n", default=0),),
    oracle=lambda p, T: weighted_gf(ConstraintSet(gap=1, parity="even", min_part=2 * p["n"] + 2),
                                    {"nu": "x"}, T),
    min_degree="2nk + k(k+1)"))
_register(IdentityDescriptor(
    "nk_repr", SERIES,
    "double sum over odd count n and even count k, split denominators vs [n+k, k]_(q^2)/(q^2;q^2)_(n+k)",
    {"L": nk_separate, "R": nk_binomial}, oracle=rr_oracle, min_degree="n^2 + 2nk + k(k+1)"))
_register(IdentityDescriptor(
    "rr_last", ENUMERATIVE,
    "minimal gap-2 configurations times even column insertions give all gap-2 partitions",
    {"L": nk_binomial, "R": rr_oracle}, oracle=rr_oracle, min_degree="n^2 + 2nk + k(k+1)"))
_register(IdentityDescriptor(
    "thm4", POLYNOMIAL,
    "bounded polynomial refinement in L with the odd-L correction ((-1)^L-1)/2 q^(L^2) x^L",
    {"L": thm4_lhs, "R": thm4_rhs}, params=(Param("L"),), cleared=thm4_cleared,
    min_degree="finite sum, n, k <= floor(L/2)"))
_register(IdentityDescriptor(
    "thm4_amended", POLYNOMIAL,
    "bounded polynomial refinement with the odd-L correction taken at the omitted staircase: -q^(A^2) x^A, A=(L+1)/2",
    {"L": thm4_lhs, "R": lambda p: thm4_rhs(p, "amended")}, params=(Param("L"),),
    cleared=lambda p: thm4_cleared(p, "amended"), min_degree="finite sum, n, k <= floor(L/2)"))
_register(IdentityDescriptor(
    "corollary", POLYNOMIAL,
    "coefficient of x^m in the bounded refinement: sum_k q^k (...)(...)/(q^2;q^2)_m [m, k]_(q^2) = [L, m]_q",
    {"L": corollary_lhs, "R": corollary_rhs}, params=(Param("L"), Param("m")),
    cleared=corollary_cleared, min_degree="finite sum, k <= m"))
_register(IdentityDescriptor(
    "gf_bdd", SERIES,
    "partitions with parts in {j..N}: product, smallest-part dissection and Durfee dissection",
    {"L": gf_bdd_product, "M": gf_bdd_smallest, "R": gf_bdd_durfee},
    params=(Param("j", 1, 1), Param("N", 1, 6)),
    comparisons=(("L", "M"), ("M", "R"), ("L", "R")), oracle=gf_bdd_oracle, check=_j_le_N,
    min_degree="finite sums, i <= N"))
_register(IdentityDescriptor(
    "gf_parts", ENUMERATIVE,
    "sum_(i=j..N) x^i q^i/(q;q)_i generates partitions with between j and N parts",
    {"L": gf_parts_lhs, "R": gf_parts_oracle}, params=(Param("j", 1, 1), Param("N", 1, 6)),
    oracle=gf_parts_oracle, check=_j_le_N, min_degree="finite sum, i <= N"))
_register(IdentityDescriptor(
    "gf_dist", ENUMERATIVE,
    "sum_(i=j..N) x^i q^(i(i+1)/2)/(q;q)_i generates distinct-part partitions with between j and N parts",
    {"L": gf_dist_lhs, "R": gf_dist_oracle}, params=(Param("j", 1, 1), Param("N", 1, 6)),
    oracle=gf_dist_oracle, check=_j_le_N, min_degree="finite sum, i <= N"))


def _drop_correction(d: IdentityDescriptor) -> IdentityDescriptor:
    return replace(
        d,
        sides={"L": d.sides["L"], "R": lambda p: thm4_rhs(p, None)},
        cleared=lambda p: thm4_cleared(p, None),
    )


# Deliberately broken entries used to show that the checker notices errors.
MUTATIONS: dict[str, Callable[[IdentityDescriptor], IdentityDescriptor]] = {
    "thm4": _drop_correction,
    "thm4_amended": _drop_correction,
}


def mutated_catalog(names) -> dict[str, IdentityDescriptor]:
    out = dict(CATALOG)
    for name in names:
        if name not in MUTATIONS:
            raise CatalogError(f"no mutation defined for {name!r}")
        out[name] = MUTATIONS[name](out[name])
    return out


def get(name: str, catalog: Mapping[str, IdentityDescriptor] | None = None) -> IdentityDescriptor:
    catalog = CATALOG if catalog is None else catalog
    try:
        return catalog[name]
    except KeyError:
        raise CatalogError(f"unknown identity {name!r}") from None


def build(name: str, side: str, params: Mapping[str, int] | None = None, T: int = DEFAULT_T,
          catalog: Mapping[str, IdentityDescriptor] | None = None):
    d = get(name, catalog)
    if side not in d.sides:
        raise CatalogError(f"{name} has no side {side!r} (sides: {', '.join(d.sides)})")
    p = d.resolve(params)
    if d.kind == POLYNOMIAL:
        return d.sides[side](p)
    if T < 0:
        raise CatalogError("truncation order must be non-negative")
    return d.sides[side](p, T)


# --- reports -------------------------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    params: dict
    trunc: int | None
    passed: bool
    witness: Difference | None = None
    compared: str = "L=R"
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "trunc": self.trunc,
            "compared": self.compared,
            "pass": self.passed,
            "witness": None if self.witness is None else {
                "monomial": self.witness.monomial.as_dict(),
                "monomial_text": str(self.witness.monomial),
                "lhs": str(self.witness.lhs),
                "rhs": str(self.witness.rhs),
            },
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def summary(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        where = f"T={self.trunc}" if self.trunc is not None else "exact"
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}({args}) {where} [{self.compared}]"
        if self.witness is not None:
            w = self.witness
            head += f": coefficient of {w.monomial} is {w.lhs} vs {w.rhs}"
        return head


def _compare_series(pairs) -> tuple[bool, Difference | None, str]:
    for label, left, right in pairs:
        ok, witness = series_equal(left, right)
        if not ok:
            return False, witness, label
    return True, None, ",".join(label for label, _, _ in pairs)


def verify(name: str, params: Mapping[str, int] | None = None, T: int = DEFAULT_T,
           catalog: Mapping[str, IdentityDescriptor] | None = None) -> VerificationReport:
    """Compare the sides of a catalog identity."""
    d = get(name, catalog)
    p = d.resolve(params)
    start = time.perf_counter()
    if d.kind == POLYNOMIAL:
        lhs, rhs, _ = d.cleared(p)
        witness = first_difference(lhs, rhs)
        return VerificationReport(name, p, None, witness is None, witness, "L*D=R*D",
                                  time.perf_counter() - start)
    if T < 0:
        raise CatalogError("truncation order must be non-negative")
    built = {side: builder(p, T) for side, builder in d.sides.items()}
    ok, witness, label = _compare_series(
        [(f"{a}={b}", built[a], built[b]) for a, b in d.comparisons])
    return VerificationReport(name, p, T, ok, witness, label, time.perf_counter() - start)


def oracle_check(name: str, params: Mapping[str, int] | None = None, T: int = DEFAULT_T,
                 catalog: Mapping[str, IdentityDescriptor] | None = None) -> VerificationReport:
    """Compare every side of an identity with its brute-force enumeration."""
    d = get(name, catalog)
    if d.oracle is None:
        raise CatalogError(f"{name} has no enumeration oracle")
    p = d.resolve(params)
    if T < 0:
        raise CatalogError("truncation order must be non-negative")
    start = time.perf_counter()
    truth = d.oracle(p, T)
    pairs = []
    for side, builder in d.sides.items():
        built = builder(p, T)
        pairs.append((f"{side}=oracle", built, truth))
    ok, witness, label = _compare_series(pairs)
    return VerificationReport(name, p, T, ok, witness, label, time.perf_counter() - start)


def corollary_check(L: int, m: int) -> VerificationReport:
    return verify("corollary", {"L": L, "m": m})
