from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from qpart.partitions import (
    ALL, DISTINCT, DISTINCT_SPARSE_EVENS, INFINITY, RR, ConstraintSet, Partition, conjugate, durfee,
    enumerate_partitions, iter_partitions, run_from_one, stats, weighted_gf, weighted_pair_gf,
)
from qpart.series import TruncatedSeries

FIFTEEN_GAP2 = [(11, 3, 1), (10, 4, 1), (9, 5, 1), (9, 4, 2), (8, 6, 1), (8, 5, 2), (7, 5, 3)]
FIFTEEN_SPARSE = [(11, 3, 1), (10, 4, 1), (9, 5, 1), (8, 6, 1), (8, 4, 3), (7, 5, 3), (6, 5, 4)]


def partition_numbers(limit):
    """p(0..limit) by Euler's pentagonal recurrence."""
    p = [1] + [0] * limit
    for n in range(1, limit + 1):
        k = 1
        while k * (3 * k - 1) // 2 <= n:
            sign = 1 if k % 2 else -1
            p[n] += sign * p[n - k * (3 * k - 1) // 2]
            if k * (3 * k + 1) // 2 <= n:
                p[n] += sign * p[n - k * (3 * k + 1) // 2]
            k += 1
    return p


def distinct_by_subsets(n):
    """Distinct-part partitions of n, found by scanning subsets of 1..n."""
    out = set()
    for r in range(n + 1):
        for c in combinations(range(1, n + 1), r):
            if sum(c) == n:
                out.add(tuple(sorted(c, reverse=True)))
    return out


def uni(coeffs, T):
    return TruncatedSeries.from_terms({(i, 0, 0, 0, 0): c for i, c in enumerate(coeffs)}, T)


def test_fifteen_gap_two():
    assert enumerate_partitions(15, ConstraintSet(gap=2, parts=3)) == FIFTEEN_GAP2


def test_fifteen_sparse_evens_by_post_filter():
    def sparse(p):
        s = p.stats
        return s.smallest_even > 2 * s.nu_odd
    assert enumerate_partitions(15, ConstraintSet(gap=1, parts=3), where=sparse) == FIFTEEN_SPARSE
    assert enumerate_partitions(15, ConstraintSet(gap=1, parts=3, evens_above_twice_odds=True)) == FIFTEEN_SPARSE


def test_empty_partition():
    for c in (ALL, DISTINCT, RR, DISTINCT_SPARSE_EVENS):
        assert enumerate_partitions(0, c) == [()]


def test_stats_examples():
    assert durfee((4, 3, 3, 2)) == 3
    s = stats((7, 5, 3, 1))
    assert (s.nu, s.nu_odd, s.smallest_even, s.run) == (4, 4, INFINITY, 1)
    e = stats(())
    assert (e.nu, e.largest, e.durfee, e.run, e.smallest_even) == (0, 0, 0, 0, INFINITY)
    assert run_from_one((6, 3, 2, 1)) == 3
    assert run_from_one((3, 2)) == 0


def test_infinity_orders_above_ints():
    assert INFINITY > 10 ** 100
    assert not INFINITY < 3
    assert INFINITY == INFINITY


def test_conjugate_examples():
    assert conjugate((5, 2, 2)) == (3, 3, 1, 1, 1)
    assert conjugate(()) == ()


def test_parse():
    assert Partition.parse("(11,3,1)") == (11, 3, 1)
    assert Partition.parse(" ( 2, 1 ) ") == (2, 1)
    assert Partition.parse("()") == ()
    assert str(Partition((11, 3, 1))) == "(11,3,1)"
    for bad in ("(1,3)", "11,3,1", "(1,,2)", "(0)", "(-1)", "(a)", ""):
        with pytest.raises(ValueError):
            Partition.parse(bad)


def test_constraint_validation():
    with pytest.raises(ValueError):
        ConstraintSet(gap=3)
    with pytest.raises(ValueError):
        ConstraintSet(parity="both")
    with pytest.raises(ValueError):
        ConstraintSet(min_part=0)


def test_weighted_gf_examples():
    rr = weighted_gf(RR, {"nu": "x"}, 5)
    assert rr.to_text() == "1 + q*x + q^2*x + q^3*x + q^4*x + q^4*x^2 + q^5*x + q^5*x^2"
    assert weighted_gf(DISTINCT_SPARSE_EVENS, {"nu": "x"}, 5) == rr
    assert weighted_gf(ALL, {}, 4) == uni([1, 1, 2, 3, 5], 4)


def test_pair_gf_at_zero_truncation():
    for rel in ("largest_le_nu", "durfee_le_run"):
        assert weighted_pair_gf(DISTINCT, ALL, rel, {}, {}, 0) == TruncatedSeries.one(0)


def test_partition_counts_match_pentagonal_recurrence():
    p = partition_numbers(30)
    assert [sum(1 for _ in iter_partitions(n)) for n in range(31)] == p


def test_distinct_partitions_match_subsets():
    for n in range(16):
        assert set(iter_partitions(n, DISTINCT)) == distinct_by_subsets(n)


def test_descending_lex_order():
    for n in range(12):
        got = enumerate_partitions(n)
        assert got == sorted(got, reverse=True)


def test_bounded_constraints():
    c = ConstraintSet(max_part=4, min_part=2, parity="even")
    assert enumerate_partitions(8, c) == [(4, 4), (4, 2, 2), (2, 2, 2, 2)]
    assert enumerate_partitions(9, ConstraintSet(parity="odd", parts=3)) == [(7, 1, 1), (5, 3, 1), (3, 3, 3)]
    assert enumerate_partitions(6, ConstraintSet(min_parts=3, max_parts=3, gap=1)) == [(3, 2, 1)]


def test_durfee_dissection():
    # p(n) = sum over d of partitions with Durfee square d, counted by the square
    # plus a partition in d columns below and one with at most d parts to the right
    for n in range(20):
        by_durfee = {}
        for p in iter_partitions(n):
            by_durfee[durfee(p)] = by_durfee.get(durfee(p), 0) + 1
        for d, count in by_durfee.items():
            rest = n - d * d
            pieces = 0
            for below in range(rest + 1):
                b = sum(1 for _ in iter_partitions(below, ConstraintSet(max_part=d)))
                r = sum(1 for _ in iter_partitions(rest - below, ConstraintSet(max_parts=d)))
                pieces += b * r
            assert pieces == count


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 12), max_size=10))
def test_conjugate_is_involution_and_preserves_size(parts):
    p = Partition.from_unsorted(parts)
    c = conjugate(p)
    assert conjugate(c) == p
    assert c.size == p.size
    assert durfee(c) == durfee(p)
    assert c.largest == len(p)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 12), max_size=10))
def test_parse_round_trip(parts):
    p = Partition.from_unsorted(parts)
    assert Partition.parse(str(p)) == p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 14), st.sampled_from([0, 1, 2]), st.one_of(st.none(), st.integers(1, 6)))
def test_enumeration_is_exactly_the_admitted_set(n, gap, max_part):
    c = ConstraintSet(gap=gap, max_part=max_part)
    assert set(iter_partitions(n, c)) == {p for p in iter_partitions(n) if c.admits(p)}
