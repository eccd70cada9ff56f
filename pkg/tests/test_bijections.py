from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qpart import bijections as bj
from qpart.partitions import (
    DISTINCT_SPARSE_EVENS, RR, ConstraintSet, Partition, conjugate, iter_partitions, stats,
)
from qpart.series import Polynomial, gaussian, monomial

# vector -> (minimal partition, intermediate columns, hooks, folded box)
TWO_TWO = {
    (1, 1, 2, 2): ((8, 6, 3, 1), (), (), ()),
    (1, 2, 1, 2): ((10, 7, 4, 1), (2,), ((1, 2),), (4,)),
    (1, 2, 2, 1): ((9, 6, 4, 1), (1,), ((1, 1),), (2,)),
    (2, 1, 1, 2): ((10, 7, 5, 2), (3,), ((2, 2),), (4, 2)),
    (2, 1, 2, 1): ((11, 8, 5, 2), (3, 1), ((1, 1), (2, 2)), (4, 4)),
    (2, 2, 1, 1): ((9, 7, 4, 2), (2,), ((2, 1),), (2, 2)),
}


def minimal_by_brute_force(M):
    """Gap-2 partitions with M parts from which no 2-column can be removed.

    Checked against the definition directly: try removing 2 from the first h
    parts for every h and see whether the result is still gap-2 and positive.
    """
    out = []
    cap = 2 * M + 3 * M * (M - 1) // 2
    for size in range(M * M, cap + 1):
        for p in iter_partitions(size, ConstraintSet(gap=2, parts=M)):
            removable = False
            for h in range(1, M + 1):
                q = [x - 2 if i < h else x for i, x in enumerate(p)]
                if q[-1] >= 1 and all(q[i] - q[i + 1] >= 2 for i in range(M - 1)):
                    removable = True
                    break
            if not removable:
                out.append(p)
    return out


def literal_column_insert(base, mu):
    """Insert the columns of ``mu`` one at a time, tallest first."""
    rows = list(base)
    for h in conjugate(mu):
        for i in range(h):
            rows[i] += 1
    return Partition(rows)


# --- examples -------------------------------------------------------------------


def test_staircases():
    assert bj.staircase(4, 2) == (7, 5, 3, 1)
    assert bj.staircase(0, 2) == bj.staircase(0, 1) == ()
    assert bj.staircase(3, 1) == (3, 2, 1)


def test_column_insertion_example():
    assert bj.column_insert((7, 5, 3, 1), (5, 2, 2)) == (12, 7, 5, 1)
    assert bj.column_extract((12, 7, 5, 1), 4, 2) == ((7, 5, 3, 1), (5, 2, 2))
    assert bj.column_insert(bj.staircase(3, 2), ()) == bj.staircase(3, 2)


def test_column_extract_rejects_gap_violation():
    with pytest.raises(bj.BijectionError):
        bj.column_extract((5, 4, 1), 3, 2)


def test_durfee_examples():
    assert bj.durfee_merge((2, 2, 1), (1,), 2) == (3, 2, 1)
    assert bj.durfee_split((4, 3, 3, 2)) == ((3, 3, 3, 2), (1,), 3)
    assert bj.durfee_merge((3, 3, 3, 2), (), 3) == (3, 3, 3, 2)


def test_durfee_merge_names_failed_precondition():
    with pytest.raises(bj.BijectionError, match="hat2"):
        bj.durfee_merge((1,), (), 2)


def test_even_examples():
    assert bj.even_extract((8, 6), 1) == (2, 2)
    assert bj.even_extract((6, 4, 2), 0) == ()
    assert bj.even_insert((), 3, 2) == (10, 8, 6)
    with pytest.raises(bj.BijectionError):
        bj.even_extract((8, 2), 1)


def test_parity_examples():
    assert bj.parity_join((5, 3, 1), (10, 8)) == (10, 8, 5, 3, 1)
    assert bj.parity_split((11, 3, 1)) == ((11, 3, 1), ())
    assert bj.parity_join((3, 1), ()) == (3, 1)
    with pytest.raises(bj.BijectionError):
        bj.parity_join((5, 3, 1), (6,))


def test_render():
    assert bj.render_two_modular((5, 2)) == "2 2 1\n2"
    assert bj.render_two_modular(()) == ""


def test_base_vector_gives_base_partition():
    for n in range(5):
        for k in range(5):
            p = bj.vector_to_minimal(bj.ParityVector.base(n, k))
            assert p.size == n * n + 2 * n * k + k * (k + 1)
            assert bj.intermediate_columns(bj.ParityVector.base(n, k)) == ()


@pytest.mark.parametrize("v", sorted(TWO_TWO))
def test_two_odd_two_even_minimal_partitions(v):
    minimal, cols, hooks, box = TWO_TWO[v]
    assert bj.vector_to_minimal(v) == minimal
    assert bj.minimal_to_vector(minimal) == v
    assert bj.intermediate_columns(v) == cols
    assert bj.hooks_from_vector(v).hooks == hooks
    assert bj.hooks_fold(v, cols) == box
    assert bj.hooks_unfold(box, 2, 2) == (v, cols)


def test_exactly_six_minimal_for_two_two():
    found = {p for p in minimal_by_brute_force(4) if sum(x % 2 for x in p) == 2}
    assert found == {TWO_TWO[v][0] for v in TWO_TWO}


def test_one_one_fold():
    assert bj.hooks_fold((2, 1), (1,)) == (2,)
    assert bj.vector_to_minimal((2, 1)) == (5, 2)
    assert bj.vector_to_minimal((1, 2)) == (4, 1)


def test_minimality_examples():
    assert bj.is_minimal((8, 6, 3, 1))
    assert not bj.is_minimal((10, 6, 3, 1))
    assert all(bj.is_minimal(bj.staircase(n, 2)) for n in range(7))
    with pytest.raises(bj.BijectionError):
        bj.is_minimal((3, 2))
    with pytest.raises(bj.BijectionError):
        bj.minimal_to_vector((10, 6, 3, 1))


def test_fold_rejects_wrong_columns():
    with pytest.raises(bj.BijectionError):
        bj.hooks_fold((1, 2, 1, 2), (1,))
    with pytest.raises(bj.BijectionError):
        bj.hooks_unfold((6,), 2, 2)


def test_rr_examples():
    v, cols = bj.rr_decompose((12, 7, 5, 1))
    assert bj.rr_compose(v, cols) == (12, 7, 5, 1)
    assert bj.vector_to_minimal(v).size + 2 * sum(cols) == 25
    assert bj.rr_decompose((8, 6, 3, 1)) == ((1, 1, 2, 2), ())
    assert bj.rr_decompose(()) == ((), ())
    with pytest.raises(bj.BijectionError):
        bj.rr_decompose((4, 3))


def test_parity_vector_parse():
    assert bj.ParityVector.parse("(1,2,2)") == (1, 2, 2)
    assert bj.ParityVector.parse("()") == ()
    with pytest.raises(ValueError):
        bj.ParityVector.parse("(1,3)")


# --- exhaustive checks ------------------------------------------------------------


@pytest.mark.parametrize("M", range(7))
def test_minimal_counts_and_generating_function(M):
    found = minimal_by_brute_force(M)
    for n in range(M + 1):
        k = M - n
        mine = [p for p in found if sum(x % 2 for x in p) == n]
        assert len(mine) == comb(n + k, n)
        gf = Polynomial()
        for p in mine:
            gf = gf + Polynomial.mono(monomial(q=p.size))
        assert gf == Polynomial.mono(monomial(q=bj.base_size(n, k))) * gaussian(n + k, k, step=2)
        # the vector construction hits exactly the same set
        vectors = set(permutations((1,) * n + (2,) * k))
        assert {bj.vector_to_minimal(v) for v in vectors} == set(mine)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(5) for k in range(5)])
def test_fold_unfold_is_a_bijection_onto_the_box(n, k):
    boxes = set()
    for v in set(permutations((1,) * n + (2,) * k)):
        cols = bj.intermediate_columns(v)
        box = bj.hooks_fold(v, cols)
        assert len(box) <= n and (not box or box[0] <= 2 * k)
        assert box.size == 2 * sum(cols)
        assert bj.hooks_unfold(box, n, k) == (v, cols)
        boxes.add(box)
    in_box = {Partition(2 * x for x in p) for s in range(n * k + 1)
              for p in iter_partitions(s, ConstraintSet(max_part=k, max_parts=n))}
    assert boxes == in_box


def test_rr_round_trip_and_confluence():
    for size in range(25):
        for p in iter_partitions(size, RR):
            v, cols = bj.rr_decompose(p)
            assert bj.rr_compose(v, cols) == p
            assert bj.rr_decompose(p, order="shortest") == (v, cols)
            assert all(h <= len(p) for h in cols)
            assert bj.vector_to_minimal(v).size + 2 * sum(cols) == p.size


def test_parity_round_trip():
    for size in range(25):
        for p in iter_partitions(size, DISTINCT_SPARSE_EVENS):
            odd, even = bj.parity_split(p)
            assert len(odd) + len(even) == len(p)
            assert bj.parity_join(odd, even) == p


def test_column_round_trip_on_gap_two():
    for size in range(25):
        for p in iter_partitions(size, RR):
            base, mu = bj.column_extract(p, len(p), 2)
            assert base == bj.staircase(len(p), 2)
            assert bj.column_insert(base, mu) == p
            assert len(mu) <= len(p)


# --- properties -------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 8), st.sampled_from([1, 2]), st.data())
def test_row_addition_equals_literal_column_insertion(n, gap, data):
    parts = data.draw(st.lists(st.integers(1, 9), max_size=n))
    mu = Partition.from_unsorted(parts)
    base = bj.staircase(n, gap)
    assert bj.column_insert(base, mu) == literal_column_insert(base, mu)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 15), max_size=8))
def test_durfee_round_trip(parts):
    p = Partition.from_unsorted(parts)
    hat2, hat3, m = bj.durfee_split(p)
    assert m == stats(p).durfee
    assert len(hat2) == len(p)
    assert len(hat3) <= m
    assert bj.durfee_merge(hat2, hat3, m) == p
    assert hat2.size + hat3.size == p.size


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.sets(st.integers(1, 10), max_size=6))
def test_even_round_trip(n, halves):
    p = Partition.from_unsorted([2 * n + 2 * h for h in halves])
    k = len(p)
    pp = bj.even_extract(p, n)
    assert len(pp) <= k and all(x % 2 == 0 for x in pp)
    assert bj.even_insert(pp, k, n) == p
    assert pp.size + 2 * n * k + k * (k + 1) == p.size


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([1, 2]), max_size=10))
def test_vector_round_trip_and_hook_growth(v):
    v = bj.ParityVector(v)
    p = bj.vector_to_minimal(v)
    assert bj.is_minimal(p)
    assert bj.minimal_to_vector(p) == v
    hooks = bj.hooks_from_vector(v).hooks
    for (l0, a0), (l1, a1) in zip(hooks, hooks[1:]):
        assert l1 > l0 and a1 > a0
    cols = bj.intermediate_columns(v)
    assert all(a - b >= 2 for a, b in zip(cols, cols[1:]))
    assert p.size == bj.base_size(v.n, v.k) + 2 * sum(cols)
    odd = sum(x % 2 for x in p)
    assert (odd, len(p) - odd) == (v.n, v.k)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=5))
def test_hook_decomposition_round_trip(parts):
    p = Partition.from_unsorted(parts)
    assert bj.HookDecomposition.from_partition(p).to_partition() == p
