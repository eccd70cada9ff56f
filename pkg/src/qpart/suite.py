"""The acceptance checks as a runnable suite with deterministic JSON output."""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Mapping

from . import bijections as bj
from . import identities as ids
from .partitions import (
    DISTINCT_SPARSE_EVENS, RR, ConstraintSet, Partition, enumerate_partitions, iter_partitions,
    weighted_pair_gf,
)
from .series import Polynomial, TruncatedSeries, gaussian, monomial, series_equal, series_invert

FIFTEEN_GAP2 = ["(11,3,1)", "(10,4,1)", "(9,5,1)", "(9,4,2)", "(8,6,1)", "(8,5,2)", "(7,5,3)"]
FIFTEEN_SPARSE = ["(11,3,1)", "(10,4,1)", "(9,5,1)", "(8,6,1)", "(8,4,3)", "(7,5,3)", "(6,5,4)"]


class SuiteUsageError(ValueError):
    pass


@dataclass
class Outcome:
    ident: str
    title: str
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def add(self, label: str, ok: bool, **info) -> None:
        self.checks.append({"label": label, "pass": bool(ok), **info})

    def add_report(self, report: ids.VerificationReport, label: str | None = None) -> None:
        d = report.to_dict()
        if label is None:
            args = ", ".join(f"{k}={v}" for k, v in d["params"].items())
            label = f"{d['name']}({args}) " + (f"T={d['trunc']}" if d["trunc"] is not None else "exact")
        self.add(label, report.passed, compared=d["compared"], witness=d["witness"])

    def to_dict(self) -> dict:
        return {"id": self.ident, "title": self.title, "pass": self.passed, "checks": self.checks}


@dataclass(frozen=True)
class Context:
    full: bool
    seed: int
    catalog: Mapping[str, ids.IdentityDescriptor]

    def pick(self, quick, full):
        return full if self.full else quick


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def c00_ring_laws(ctx: Context, out: Outcome) -> None:
    rng = random.Random(ctx.seed)
    T = 8

    def rand_series():
        terms = {}
        for _ in range(12):
            qd = rng.randint(0, T)
            aux = [rng.randint(0, qd) for _ in range(4)]
            terms[(qd, *aux)] = rng.randint(-5, 5)
        return TruncatedSeries.from_terms(terms, T)

    for i in range(ctx.pick(5, 20)):
        r, s, u = rand_series(), rand_series(), rand_series()
        out.add(f"sample {i}: distributive, commutative, associative",
                r * (s + u) == r * s + r * u and r * s == s * r and (r * s) * u == r * (s * u))
        unit = TruncatedSeries.one(T) + s.times_monomial(monomial(q=1))
        out.add(f"sample {i}: s * s^-1 = 1", unit * series_invert(unit) == TruncatedSeries.one(T))


def c01_three_products(ctx: Context, out: Outcome) -> None:
    T = ctx.pick(14, 20)
    report, secs = _timed(lambda: ids.verify("ismail_raw", T=T, catalog=ctx.catalog))
    out.add_report(report)
    out.add("runtime under 10 s", secs < 10)


def c02_chain(ctx: Context, out: Outcome) -> None:
    T = 20
    out.add_report(ids.verify("ismail_simpl", T=T, catalog=ctx.catalog))
    lhs = ids.build("ismail_lhs_interp", "L", T=T, catalog=ctx.catalog)
    conn = ids.build("main_connection", "R", T=T, catalog=ctx.catalog)
    rhs = ids.build("ismail_rhs_interp", "L", T=T, catalog=ctx.catalog)
    out.add("ismail_lhs_interp = main_connection", series_equal(lhs, conn)[0])
    out.add("main_connection = ismail_rhs_interp", series_equal(conn, rhs)[0])
    out.add_report(ids.verify("main_connection", T=T, catalog=ctx.catalog))


def c03_gap_two_forms(ctx: Context, out: Outcome) -> None:
    T = ctx.pick(20, 30)
    for name in ("ramanujan_raw", "ramanujan"):
        report, secs = _timed(lambda: ids.verify(name, T=T, catalog=ctx.catalog))
        out.add_report(report)
        out.add(f"{name} runtime under 10 s", secs < 10)


def c04_gap_two_counts(ctx: Context, out: Outcome) -> None:
    top = ctx.pick(18, 25)
    bad = []
    for n in range(top + 1):
        left = [0] * (n + 1)
        right = [0] * (n + 1)
        for p in iter_partitions(n, RR):
            left[len(p)] += 1
        for p in iter_partitions(n, DISTINCT_SPARSE_EVENS):
            right[len(p)] += 1
        if left != right:
            bad.append(n)
    out.add(f"counts agree for n <= {top}, every number of parts", not bad, mismatched_sizes=bad)
    rr = [str(p) for p in enumerate_partitions(15, ConstraintSet(gap=2, parts=3))]
    dse = [str(p) for p in enumerate_partitions(15, ConstraintSet(gap=1, parts=3, evens_above_twice_odds=True))]
    out.add("n=15, 3 parts, gap-2 column", rr == FIFTEEN_GAP2, rows=rr)
    out.add("n=15, 3 parts, distinct with s_e > 2 nu_o column", dse == FIFTEEN_SPARSE, rows=dse)


def c05_bounded_polynomial(ctx: Context, out: Outcome) -> None:
    top = ctx.pick(8, 12)
    for L in range(top + 1):
        out.add_report(ids.verify("thm4", {"L": L}, catalog=ctx.catalog))
    # The printed correction q^(L^2) x^L fails from L=3 on; the amended one is
    # reported alongside so a red criterion still shows where the defect sits.
    for L in range(top + 1):
        out.add_report(ids.verify("thm4_amended", {"L": L}, catalog=ctx.catalog))
    mutant = ids.mutated_catalog(["thm4", "thm4_amended"])
    for name in ("thm4", "thm4_amended"):
        rep = ids.verify(name, {"L": 1}, catalog=mutant)
        w = rep.witness
        out.add(f"{name}: dropping the odd-L correction is detected at L=1 with witness q*x",
                not rep.passed and w is not None and w.monomial == monomial(q=1, x=1))


def c06_coefficients(ctx: Context, out: Outcome) -> None:
    top = ctx.pick(8, 12)
    failures = []
    for L in range(top + 1):
        for m in range(top + 1):
            rep = ids.verify("corollary", {"L": L, "m": m}, catalog=ctx.catalog)
            if not rep.passed:
                failures.append(rep.to_dict())
    out.add(f"all L, m <= {top}", not failures, failures=failures)


def c07_pairs(ctx: Context, out: Outcome) -> None:
    T = 12
    out.add_report(ids.verify("thm5", T=T, catalog=ctx.catalog))
    left_log: list = []
    right_log: list = []
    c1, c2 = ConstraintSet(gap=1), ConstraintSet()
    weighted_pair_gf(c1, c2, "largest_le_nu", *ids.PAIR_WEIGHTS, T, log=left_log)
    weighted_pair_gf(c1, c2, "durfee_le_run", *ids.PAIR_WEIGHTS, T, log=right_log)
    left, right = set(left_log), set(right_log)
    a = (Partition((3, 2)), Partition((2, 1)))
    b = (Partition((2, 1)), Partition((3, 2)))
    out.add("((3,2),(2,1)) counted on the left only", a in left and a not in right)
    out.add("((2,1),(3,2)) counted on the right only", b in right and b not in left)


def c08_thmL(ctx: Context, out: Outcome) -> None:
    T = ctx.pick(14, 20)
    for N in range(9):
        out.add_report(ids.verify("thmL", {"N": N}, T=T, catalog=ctx.catalog))


def c09_thm7(ctx: Context, out: Outcome) -> None:
    T = ctx.pick(10, 12)
    for N in range(7):
        out.add_report(ids.verify("thm7", {"N": N}, T=T, catalog=ctx.catalog))


def c10_machinery(ctx: Context, out: Outcome) -> None:
    top = ctx.pick(22, 30)
    bad = []
    for n in range(top + 1):
        for p in iter_partitions(n, RR):
            v, cols = bj.rr_decompose(p)
            if bj.rr_compose(v, cols) != p:
                bad.append(str(p))
    out.add(f"(a) rr_decompose/rr_compose round trip, size <= {top}", not bad, failures=bad)

    span = ctx.pick(6, 8)
    gf_bad, count_bad = [], []
    minimal = _minimal_partitions_by_profile(span)
    for (n, k), found in sorted(minimal.items()):
        if len(found) != comb(n + k, n):
            count_bad.append([n, k, len(found)])
        T = bj.base_size(n, k) + 2 * n * k
        got = TruncatedSeries.from_terms(_count_sizes(found), T)
        want = TruncatedSeries.from_polynomial(
            gaussian(n + k, k, step=2) * _qmono(bj.base_size(n, k)), T)
        if got != want:
            gf_bad.append([n, k])
    out.add(f"(b) minimal generating function q^(n^2+2nk+k(k+1)) [n+k, k]_(q^2), n+k <= {span}",
            not gf_bad, failures=gf_bad)
    out.add(f"(c) minimal count C(n+k, n), n+k <= {span}", not count_bad, failures=count_bad)
    out.add_report(ids.verify("rr_last", T=ctx.pick(20, 25), catalog=ctx.catalog), "(d) rr_last = gap-2 oracle")
    fwd = bj.column_insert(Partition((7, 5, 3, 1)), Partition((5, 2, 2)))
    back = bj.column_extract(fwd, 4, 2)
    out.add("(e) insert((7,5,3,1), (5,2,2)) = (12,7,5,1) and back",
            fwd == (12, 7, 5, 1) and back == ((7, 5, 3, 1), (5, 2, 2)))


def _qmono(e: int) -> Polynomial:
    return Polynomial.mono(monomial(q=e))


def _count_sizes(parts) -> dict:
    out: dict = {}
    for p in parts:
        key = (sum(p), 0, 0, 0, 0)
        out[key] = out.get(key, 0) + 1
    return out


def _minimal_partitions_by_profile(span: int) -> dict[tuple[int, int], list[Partition]]:
    """Brute force: gap-2 partitions with M <= span parts admitting no 2-column removal.

    A minimal partition has every gap <= 3 and smallest part <= 2, so its size
    is at most 2M + 3M(M-1)/2 and its largest part at most 3M - 1. Every gap-2
    partition within both bounds is scanned.
    """
    found: dict[tuple[int, int], list[Partition]] = {}
    for M in range(span + 1):
        cap = 2 * M + 3 * M * (M - 1) // 2
        c = ConstraintSet(gap=2, parts=M, max_part=max(1, 3 * M - 1))
        for size in range(M * M, cap + 1):
            for p in iter_partitions(size, c):
                if not bj.legal_extractions(p):
                    n = sum(x % 2 for x in p)
                    found.setdefault((n, M - n), []).append(p)
    return found


def c11_background(ctx: Context, out: Outcome) -> None:
    T = 20
    top = ctx.pick(4, 6)
    for N in range(1, top + 1):
        for j in range(1, N + 1):
            out.add_report(ids.verify("gf_bdd", {"j": j, "N": N}, T=T, catalog=ctx.catalog))
            out.add_report(ids.oracle_check("gf_bdd", {"j": j, "N": N}, T=T, catalog=ctx.catalog))
    for N in range(1, top + 1):
        for j in range(1, N + 1):
            out.add_report(ids.verify("gf_dist", {"j": j, "N": N}, T=T, catalog=ctx.catalog))


def c12_dist_even(ctx: Context, out: Outcome) -> None:
    T = 24
    for n in range(6):
        out.add_report(ids.verify("dist_even", {"n": n}, T=T, catalog=ctx.catalog))
    bad = []
    for n in range(6):
        c = ConstraintSet(gap=1, parity="even", min_part=2 * n + 2)
        for size in range(T + 1):
            for p in iter_partitions(size, c):
                pp = bj.even_extract(p, n)
                if bj.even_insert(pp, len(p), n) != p or pp.size + 2 * n * len(p) + len(p) * (len(p) + 1) != p.size:
                    bad.append([n, str(p)])
    out.add("even_extract / even_insert round trip, size <= 24, n <= 5", not bad, failures=bad)


CRITERIA: list[tuple[str, str, Callable[[Context, Outcome], None]]] = [
    ("0", "series ring laws on seeded random samples", c00_ring_laws),
    ("1", "three-product identity: both sides agree at T=20", c01_three_products),
    ("2", "simplified form and its proof chain agree at T=20", c02_chain),
    ("3", "gap-2 generating function, raw and split forms agree at T=30", c03_gap_two_forms),
    ("4", "gap-2 vs distinct with s_e > 2 nu_o, counts and the 15-into-3-parts listing", c04_gap_two_counts),
    ("5", "bounded polynomial identity with printed odd-L correction, L in 0..12, mutation detected", c05_bounded_polynomial),
    ("6", "coefficient-of-x^m identity exact for L, m <= 12", c06_coefficients),
    ("7", "pair identity (largest <= parts vs Durfee <= run) to total size 12", c07_pairs),
    ("8", "bounded refinement in N agrees at T=20, N in 0..8", c08_thmL),
    ("9", "pair identity with parts <= N, total size 12, N in 0..6", c09_thm7),
    ("10", "2-modular machinery: round trips, minimal partitions, column insertion", c10_machinery),
    ("11", "background generating functions, 1 <= j <= N <= 6, T=20", c11_background),
    ("12", "distinct even parts above 2n: product vs sum and extraction round trip", c12_dist_even),
]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QPART_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(profile: str = "quick", seed: int = 0, only=None,
              catalog: Mapping[str, ids.IdentityDescriptor] | None = None) -> dict:
    if profile not in ("quick", "full"):
        raise SuiteUsageError(f"unknown profile {profile!r}")
    selected = [c for c in CRITERIA if only is None or c[0] in only]
    if not selected:
        raise SuiteUsageError("no criteria selected")
    ctx = Context(profile == "full", seed, ids.CATALOG if catalog is None else catalog)

    def run_one(entry):
        ident, title, fn = entry
        outcome = Outcome(ident, title)
        try:
            fn(ctx, outcome)
        except Exception as exc:  # a crash is a failed criterion, not a crashed suite
            outcome.add("raised", False, error=f"{type(exc).__name__}: {exc}")
        return outcome

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        outcomes = list(pool.map(run_one, selected))
    return {
        "profile": profile,
        "seed": seed,
        "pass": all(o.passed for o in outcomes),
        "criteria": [o.to_dict() for o in outcomes],
    }
