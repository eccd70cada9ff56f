"""Partitions, their statistics, constrained enumeration and brute-force generating functions."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Callable, Iterator, Mapping, Sequence

from .series import AUX_VARS, TruncatedSeries


@total_ordering
class _Infinity:
    """Value of the smallest even part when there is none. Compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITY")

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


class Partition(tuple):
    """Non-increasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"(11,3,1)"`` or ``"()"``; rejects parts out of order."""
        text = text.strip()
        m = re.fullmatch(r"\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)", text)
        if not m:
            raise ValueError(f"malformed partition literal {text!r}")
        if m.group(1) is None:
            return cls(())
        return cls(int(p) for p in m.group(1).split(","))

    @classmethod
    def from_unsorted(cls, parts: Sequence[int]) -> "Partition":
        return cls(sorted((p for p in parts if p), reverse=True))

    @cached_property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def largest(self) -> int:
        return self[0] if self else 0

    @cached_property
    def stats(self) -> "PartitionStats":
        return stats(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Partition({str(self)})"


@dataclass(frozen=True)
class PartitionStats:
    nu: int
    nu_odd: int
    largest: int
    smallest_even: object  # int or INFINITY
    durfee: int
    run: int

    @property
    def nu_even(self) -> int:
        return self.nu - self.nu_odd


def durfee(p: Sequence[int]) -> int:
    d = 0
    while d < len(p) and p[d] >= d + 1:
        d += 1
    return d


def run_from_one(p: Sequence[int]) -> int:
    """Largest r with 1, 2, ..., r all parts (0 if 1 is not a part)."""
    present = set(p)
    r = 0
    while r + 1 in present:
        r += 1
    return r


def stats(p: Sequence[int]) -> PartitionStats:
    evens = [x for x in p if x % 2 == 0]
    return PartitionStats(
        nu=len(p),
        nu_odd=len(p) - len(evens),
        largest=p[0] if p else 0,
        smallest_even=min(evens) if evens else INFINITY,
        durfee=durfee(p),
        run=run_from_one(p),
    )


def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return Partition(())
    return Partition(sum(1 for x in p if x > j) for j in range(p[0]))


def gaps_at_least(p: Sequence[int], gap: int) -> bool:
    return all(p[i] - p[i + 1] >= gap for i in range(len(p) - 1))


@dataclass(frozen=True)
class ConstraintSet:
    """Restrictions on a partition.

    ``gap`` is the minimum difference between consecutive parts: 0 for all
    partitions, 1 for distinct parts, 2 for the Rogers-Ramanujan gap condition.
    ``evens_above_twice_odds`` keeps partitions whose smallest even part exceeds
    twice their number of odd parts.
    """

    gap: int = 0
    max_part: int | None = None
    min_part: int = 1
    parts: int | None = None
    min_parts: int = 0
    max_parts: int | None = None
    parity: str | None = None
    evens_above_twice_odds: bool = False

    def __post_init__(self):
        if self.gap not in (0, 1, 2):
            raise ValueError("gap must be 0, 1 or 2")
        if self.parity not in (None, "odd", "even"):
            raise ValueError("parity must be 'odd', 'even' or None")
        if self.min_part < 1:
            raise ValueError("min_part must be at least 1")

    def part_count_range(self) -> tuple[int, int | None]:
        if self.parts is not None:
            return max(self.parts, self.min_parts), (
                self.parts if self.max_parts is None else min(self.parts, self.max_parts))
        return self.min_parts, self.max_parts

    def admits(self, p: Sequence[int]) -> bool:
        lo, hi = self.part_count_range()
        if len(p) < lo or (hi is not None and len(p) > hi):
            return False
        if p and (p[-1] < self.min_part or (self.max_part is not None and p[0] > self.max_part)):
            return False
        if self.gap and not gaps_at_least(p, self.gap):
            return False
        if self.parity and any((x % 2 == 1) != (self.parity == "odd") for x in p):
            return False
        if self.evens_above_twice_odds:
            s = stats(p)
            if not s.smallest_even > 2 * s.nu_odd:
                return False
        return True


ALL = ConstraintSet()
DISTINCT = ConstraintSet(gap=1)
RR = ConstraintSet(gap=2)
DISTINCT_SPARSE_EVENS = ConstraintSet(gap=1, evens_above_twice_odds=True)


def iter_partitions(n: int, c: ConstraintSet = ALL) -> Iterator[Partition]:
    """Partitions of ``n`` admitted by ``c``, in descending lexicographic order."""
    if n < 0:
        return
    lo, hi = c.part_count_range()
    top = n if c.max_part is None else min(n, c.max_part)
    step = 2 if c.parity else 1

    def fits(x: int) -> bool:
        return c.parity is None or (x % 2 == 1) == (c.parity == "odd")

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            if len(prefix) >= lo:
                yield tuple(prefix)
            return
        if hi is not None and len(prefix) >= hi:
            return
        first = min(cap, remaining)
        while first >= c.min_part and not fits(first):
            first -= 1
        for x in range(first, c.min_part - 1, -step):
            prefix.append(x)
            yield from rec(remaining - x, x - c.gap, prefix)
            prefix.pop()

    for parts in rec(n, top, []):
        p = Partition(parts)
        if not c.evens_above_twice_odds or c.admits(p):
            yield p


def enumerate_partitions(n: int, c: ConstraintSet = ALL,
                         where: Callable[[Partition], bool] | None = None) -> list[Partition]:
    return [p for p in iter_partitions(n, c) if where is None or where(p)]


_STATS = ("nu", "nu_odd", "nu_even", "durfee", "largest", "run")


def _stat(p: Partition, name: str) -> int:
    s = p.stats
    return getattr(s, name)


def _weight_exponents(p: Partition, weights: Mapping[str, str | Sequence[str]]) -> list[int]:
    exps = [0, 0, 0, 0]
    for stat_name, variables in weights.items():
        if stat_name not in _STATS:
            raise ValueError(f"unknown statistic {stat_name!r}")
        if isinstance(variables, str):
            variables = (variables,)
        value = _stat(p, stat_name)
        for v in variables:
            if v not in AUX_VARS:
                raise ValueError(f"weight variable must be one of {AUX_VARS}, got {v!r}")
            exps[AUX_VARS.index(v)] += value
    return exps


def weighted_gf(c: ConstraintSet, weights: Mapping[str, str | Sequence[str]],
                trunc: int) -> TruncatedSeries:
    """Brute-force sum of ``q^|p| * weight(p)`` over admitted partitions of size <= trunc.

    ``weights`` maps statistics (``nu``, ``nu_odd``, ``nu_even``, ``durfee``,
    ``largest``, ``run``) to one or several of the variables x, a, b, t.
    """
    levels: list[dict] = []
    for n in range(trunc + 1):
        lv: dict = {}
        for p in iter_partitions(n, c):
            key = tuple(_weight_exponents(p, weights))
            lv[key] = lv.get(key, 0) + 1
        levels.append(lv)
    return TruncatedSeries(levels, trunc)


def _largest_le_nu(p1: Partition, p2: Partition) -> bool:
    return p2.largest <= len(p1)


def _durfee_le_run(p1: Partition, p2: Partition) -> bool:
    return p2.stats.durfee <= p1.stats.run


PAIR_RELATIONS: dict[str, Callable[[Partition, Partition], bool]] = {
    "largest_le_nu": _largest_le_nu,
    "durfee_le_run": _durfee_le_run,
    "none": lambda p1, p2: True,
}


def weighted_pair_gf(c1: ConstraintSet, c2: ConstraintSet, relation: str,
                     weights1: Mapping[str, str | Sequence[str]],
                     weights2: Mapping[str, str | Sequence[str]],
                     trunc: int, log: list | None = None) -> TruncatedSeries:
    """Brute-force sum over pairs ``(p1, p2)`` with ``|p1| + |p2| <= trunc``.

    If ``log`` is a list, every counted pair is appended to it.
    """
    try:
        related = PAIR_RELATIONS[relation]
    except KeyError:
        raise ValueError(f"unknown pair relation {relation!r}") from None
    firsts = [(p, _weight_exponents(p, weights1)) for n in range(trunc + 1) for p in iter_partitions(n, c1)]
    by_size: list[list] = [[] for _ in range(trunc + 1)]
    for n in range(trunc + 1):
        by_size[n] = [(p, _weight_exponents(p, weights2)) for p in iter_partitions(n, c2)]
    levels: list[dict] = [{} for _ in range(trunc + 1)]
    for p1, w1 in firsts:
        for n2 in range(trunc + 1 - p1.size):
            lv = levels[p1.size + n2]
            for p2, w2 in by_size[n2]:
                if related(p1, p2):
                    key = (w1[0] + w2[0], w1[1] + w2[1], w1[2] + w2[2], w1[3] + w2[3])
                    lv[key] = lv.get(key, 0) + 1
                    if log is not None:
                        log.append((p1, p2))
    return TruncatedSeries(levels, trunc)

