"""Invertible, size-preserving maps between families of partitions.

The 2-modular machinery works with gap-2 partitions split by parity. A gap-2
partition is *minimal* when no 2-thick column (subtracting 2 from each of its
``h`` largest parts) can be removed without breaking the gap condition or
positivity. Minimal partitions are encoded by parity vectors read from the
smallest part upward, and the extra columns they carry fold into hooks that
fill an ``n x k`` box.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .partitions import INFINITY, Partition, conjugate, durfee, gaps_at_least, stats


class BijectionError(ValueError):
    """Input outside the domain of a bijection."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise BijectionError(message)


def staircase(n: int, gap: int) -> Partition:
    """``(n, n-1, ..., 1)`` for gap 1, ``(2n-1, ..., 3, 1)`` for gap 2."""
    _require(n >= 0, "staircase length must be non-negative")
    if gap == 1:
        return Partition(range(n, 0, -1))
    if gap == 2:
        return Partition(range(2 * n - 1, 0, -2))
    raise BijectionError(f"unsupported gap {gap}")


def column_insert(base: Sequence[int], mu: Sequence[int]) -> Partition:
    """Add ``mu`` row by row onto a staircase (equivalently insert the columns of ``mu``)."""
    _require(len(mu) <= len(base), f"{tuple(mu)} has more parts than the staircase {tuple(base)}")
    padded = list(mu) + [0] * (len(base) - len(mu))
    return Partition(b + m for b, m in zip(base, padded))


def column_extract(p: Sequence[int], n: int, gap: int) -> tuple[Partition, Partition]:
    """Split a partition with ``n`` parts and the given gap into (staircase, remainder)."""
    _require(len(p) == n, f"expected exactly {n} parts, got {len(p)}")
    _require(gaps_at_least(p, gap) and (not p or p[-1] >= 1), f"{tuple(p)} violates the gap-{gap} condition")
    base = staircase(n, gap)
    return base, Partition.from_unsorted([x - b for x, b in zip(p, base)])


def durfee_merge(hat2: Sequence[int], hat3: Sequence[int], m: int, k: int | None = None) -> Partition:
    """Attach ``hat3`` to the right of the ``m`` leading parts of ``hat2``.

    ``hat2`` must have largest part exactly ``m`` occurring at least ``m`` times;
    ``hat3`` must have at most ``m`` parts (and parts at most ``k - m`` if ``k`` is given).
    """
    _require(m >= 0, "Durfee side must be non-negative")
    if m == 0:
        _require(not hat2, "hat2 must be empty when m = 0")
    else:
        _require(len(hat2) >= m and hat2[0] == m and hat2[m - 1] == m,
                 f"hat2 {tuple(hat2)} must have largest part {m} repeated at least {m} times")
    _require(len(hat3) <= m, f"hat3 {tuple(hat3)} has more than {m} parts")
    if k is not None:
        _require(not hat3 or hat3[0] <= k - m, f"hat3 {tuple(hat3)} does not fit in a {m} x {k - m} box")
    merged = list(hat2)
    for i, extra in enumerate(hat3):
        merged[i] += extra
    return Partition(merged)


def durfee_split(p: Sequence[int]) -> tuple[Partition, Partition, int]:
    """Inverse of :func:`durfee_merge`: strip what lies right of the Durfee square."""
    m = durfee(p)
    hat3 = Partition.from_unsorted([p[i] - m for i in range(m)])
    hat2 = Partition([m] * m + list(p[m:]))
    return hat2, hat3, m


def even_extract(p: Sequence[int], n: int) -> Partition:
    """Distinct even parts all >= 2n+2 -> partition into at most ``len(p)`` even parts.

    Removes ``2n`` from every part, then 2, 4, ..., 2k from the smallest up.
    """
    k = len(p)
    _require(all(x % 2 == 0 for x in p), f"{tuple(p)} has an odd part")
    _require(gaps_at_least(p, 1), f"{tuple(p)} has repeated parts")
    _require(not p or p[-1] >= 2 * n + 2, f"{tuple(p)} has a part below {2 * n + 2}")
    return Partition.from_unsorted([x - 2 * n - 2 * (k - i) for i, x in enumerate(p)])


def even_insert(pp: Sequence[int], k: int, n: int) -> Partition:
    """Inverse of :func:`even_extract` for a result with exactly ``k`` parts."""
    _require(all(x % 2 == 0 for x in pp), f"{tuple(pp)} has an odd part")
    _require(len(pp) <= k, f"{tuple(pp)} has more than {k} parts")
    padded = list(pp) + [0] * (k - len(pp))
    return Partition(x + 2 * n + 2 * (k - i) for i, x in enumerate(padded))


def parity_join(odd_part: Sequence[int], even_part: Sequence[int]) -> Partition:
    """Merge distinct odd parts with distinct even parts that all exceed twice the odd count."""
    _require(all(x % 2 for x in odd_part) and gaps_at_least(odd_part, 1),
             f"{tuple(odd_part)} is not a partition into distinct odd parts")
    _require(all(x % 2 == 0 for x in even_part) and gaps_at_least(even_part, 1),
             f"{tuple(even_part)} is not a partition into distinct even parts")
    _require(not even_part or even_part[-1] >= 2 * len(odd_part) + 2,
             f"even parts must be at least {2 * len(odd_part) + 2}")
    return Partition.from_unsorted(list(odd_part) + list(even_part))


def parity_split(p: Sequence[int]) -> tuple[Partition, Partition]:
    s = stats(p)
    _require(gaps_at_least(p, 1), f"{tuple(p)} has repeated parts")
    _require(s.smallest_even is INFINITY or s.smallest_even > 2 * s.nu_odd,
             f"{tuple(p)}: smallest even part does not exceed twice the number of odd parts")
    return (Partition(x for x in p if x % 2), Partition(x for x in p if x % 2 == 0))


# --- 2-modular diagrams and parity vectors ---------------------------------


@dataclass(frozen=True)
class TwoModularRow:
    twos: int
    trailing_one: bool

    @property
    def value(self) -> int:
        return 2 * self.twos + self.trailing_one

    @classmethod
    def of(cls, part: int) -> "TwoModularRow":
        return cls(part // 2, bool(part % 2))


def two_modular_rows(p: Sequence[int]) -> list[TwoModularRow]:
    return [TwoModularRow.of(x) for x in p]


def render_two_modular(p: Sequence[int]) -> str:
    """ASCII 2-modular diagram, largest part on top."""
    lines = []
    for row in two_modular_rows(p):
        cells = ["2"] * row.twos + (["1"] if row.trailing_one else [])
        lines.append(" ".join(cells))
    return "\n".join(lines)


class ParityVector(tuple):
    """End-of-row values (1 or 2) of a 2-modular diagram, read from the bottom row up."""

    def __new__(cls, entries: Sequence[int] = ()):
        entries = tuple(entries)
        if any(e not in (1, 2) for e in entries):
            raise BijectionError(f"parity vector entries must be 1 or 2: {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "ParityVector":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(int(e) for e in text.split(","))

    @classmethod
    def base(cls, n: int, k: int) -> "ParityVector":
        return cls((1,) * n + (2,) * k)

    @property
    def n(self) -> int:
        return self.count(1)

    @property
    def k(self) -> int:
        return self.count(2)

    @property
    def M(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def base_size(n: int, k: int) -> int:
    return n * n + 2 * n * k + k * (k + 1)


def intermediate_columns(v: Sequence[int]) -> Partition:
    """Heights of the extra 2-columns a vector needs: ``M - i + 1`` for each 1 at
    (1-based) position ``i`` that directly follows a 2."""
    M = len(v)
    return Partition.from_unsorted([M - i for i in range(1, M) if v[i - 1] == 2 and v[i] == 1])


def vector_to_minimal(v: Sequence[int]) -> Partition:
    """Build the minimal gap-2 partition whose parities, bottom-up, are ``v``.

    Starts from the 2-modular staircase with end values ``v`` and widens it by
    the intermediate columns.
    """
    v = ParityVector(v)
    rows = [2 * i + e for i, e in enumerate(v)]  # bottom-up staircase
    for h in intermediate_columns(v):
        for i in range(len(v) - h, len(v)):
            rows[i] += 2
    return Partition(reversed(rows))


def minimal_to_vector(p: Sequence[int]) -> ParityVector:
    _require(is_minimal(p), f"{tuple(p)} is not a minimal gap-2 partition")
    return ParityVector(2 - x % 2 for x in reversed(p))


def _legal_extraction(p: Sequence[int], h: int) -> bool:
    # removing 2 from the h largest parts of a gap-2 partition
    if h == len(p):
        return p[-1] > 2
    return p[h - 1] - p[h] >= 4


def legal_extractions(p: Sequence[int]) -> list[int]:
    return [h for h in range(1, len(p) + 1) if _legal_extraction(p, h)]


def extract_column(p: Sequence[int], h: int) -> Partition:
    _require(1 <= h <= len(p) and _legal_extraction(p, h), f"cannot remove a 2-column of height {h} from {tuple(p)}")
    return Partition([x - 2 for x in p[:h]] + list(p[h:]))


def insert_column(p: Sequence[int], h: int) -> Partition:
    _require(1 <= h <= len(p), f"column height {h} out of range for {len(p)} parts")
    return Partition([x + 2 for x in p[:h]] + list(p[h:]))


def _require_gap2(p: Sequence[int]) -> None:
    _require(gaps_at_least(p, 2), f"{tuple(p)} violates the gap-2 condition")


def is_minimal(p: Sequence[int]) -> bool:
    _require_gap2(p)
    return not legal_extractions(p)


@dataclass(frozen=True)
class HookDecomposition:
    """Hooks ``(leg, arm)``, innermost first; leg and arm both count the corner cell."""

    hooks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for (l0, a0), (l1, a1) in zip(self.hooks, self.hooks[1:]):
            if not (l1 > l0 and a1 > a0):
                raise BijectionError(f"hooks must grow strictly in leg and arm: {self.hooks}")
        if any(leg < 1 or arm < 1 for leg, arm in self.hooks):
            raise BijectionError("hook legs and arms must be positive")

    def to_partition(self) -> Partition:
        """Stack the hooks along the diagonal, outermost in the top-left corner."""
        r = len(self.hooks)
        outer_first = self.hooks[::-1]
        rows = [i + arm for i, (_, arm) in enumerate(outer_first)]
        cols = [i + leg for i, (leg, _) in enumerate(outer_first)]
        # rows below the diagonal block come from the legs
        below = [sum(1 for c in cols if c > j) for j in range(r, cols[0])] if r else []
        return Partition(rows + below)

    @classmethod
    def from_partition(cls, box: Sequence[int]) -> "HookDecomposition":
        d = durfee(box)
        conj = conjugate(box)
        outer_first = [(conj[i] - i, box[i] - i) for i in range(d)]
        return cls(tuple(outer_first[::-1]))


def hooks_from_vector(v: Sequence[int]) -> HookDecomposition:
    """One hook per intermediate column, shortest column (innermost hook) first."""
    v = ParityVector(v)
    M = len(v)
    hooks = []
    for h in sorted(intermediate_columns(v)):
        tail = v[M - h:]
        hooks.append((tail.count(1), tail.count(2) + 1))
    return HookDecomposition(tuple(hooks))


def hooks_fold(v: Sequence[int], cols: Sequence[int]) -> Partition:
    """Fold the intermediate columns of ``v`` into a 2-modular partition inside an n x k box.

    Returned parts are even (each cell holds a 2); ``sum = 2 * sum(cols)``.
    """
    v = ParityVector(v)
    _require(Partition.from_unsorted(cols) == intermediate_columns(v),
             f"columns {tuple(cols)} do not match the vector {v}")
    box = hooks_from_vector(v).to_partition()
    return Partition(2 * x for x in box)


def hooks_unfold(box: Sequence[int], n: int, k: int) -> tuple[ParityVector, Partition]:
    """Inverse of :func:`hooks_fold` for a given (n, k)."""
    _require(all(x % 2 == 0 for x in box), f"{tuple(box)} is not a 2-modular box partition")
    _require(len(box) <= n and (not box or box[0] <= 2 * k), f"{tuple(box)} does not fit in a {n} x {k} box")
    plain = Partition(x // 2 for x in box)
    hooks = HookDecomposition.from_partition(plain).hooks
    tail: list[int] = []
    prev_leg, prev_arm = 0, 1
    for leg, arm in hooks:
        tail = [1] * (leg - prev_leg) + [2] * (arm - prev_arm) + tail
        prev_leg, prev_arm = leg, arm
    m1, m2 = tail.count(1), tail.count(2)
    v = ParityVector([1] * (n - m1) + [2] * (k - m2) + tail)
    return v, intermediate_columns(v)


def rr_decompose(p: Sequence[int], order: str = "tallest") -> tuple[ParityVector, Partition]:
    """Strip legal 2-columns until minimal; return (parity vector, extracted column heights).

    ``order`` picks which legal column goes first: ``"tallest"`` or ``"shortest"``.
    """
    _require_gap2(p)
    p = Partition(p)
    heights = []
    while True:
        legal = legal_extractions(p)
        if not legal:
            break
        h = max(legal) if order == "tallest" else min(legal)
        p = extract_column(p, h)
        heights.append(h)
    return minimal_to_vector(p), Partition.from_unsorted(heights)


def rr_compose(v: Sequence[int], evencols: Sequence[int]) -> Partition:
    """Insert 2-columns of the given heights into the minimal partition of ``v``."""
    p = vector_to_minimal(v)
    _require(all(1 <= h <= len(p) for h in evencols),
             f"column heights {tuple(evencols)} exceed the {len(p)} parts")
    for h in evencols:
        p = insert_column(p, h)
    return p
