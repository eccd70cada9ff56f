"""Exact polynomials and q-truncated power series in the variables q, x, a, b, t.

Coefficients are Python ints throughout. A :class:`TruncatedSeries` is stored
as one dictionary per power of q, keyed by the exponents of the auxiliary
variables ``(x, a, b, t)``; truncation is by q-degree only.
"""
from __future__ import annotations

import json
import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple

VARS = ("q", "x", "a", "b", "t")
AUX_VARS = VARS[1:]
_AUX_ZERO = (0, 0, 0, 0)


class Monomial(NamedTuple):
    """Exponent vector over ``(q, x, a, b, t)``."""

    q: int = 0
    x: int = 0
    a: int = 0
    b: int = 0
    t: int = 0

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(*(i + j for i, j in zip(self, other)))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("negative power of a monomial")
        return Monomial(*(k * e for e in self))

    @property
    def aux(self) -> tuple[int, int, int, int]:
        return tuple(self[1:])  # type: ignore[return-value]

    @property
    def degree(self) -> int:
        return sum(self)

    def as_dict(self) -> dict[str, int]:
        """Nonzero exponents only."""
        return {v: e for v, e in zip(VARS, self) if e}

    def __str__(self) -> str:
        return _mono_text(self) or "1"


ONE = Monomial()
Q = Monomial(q=1)


def monomial(**exps: int) -> Monomial:
    """``monomial(a=1, t=1, q=1)`` is ``a*t*q``. Rejects unknown names and negative exponents."""
    for v, e in exps.items():
        if v not in VARS:
            raise ValueError(f"unknown variable {v!r}")
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
    return Monomial(**exps)


_FACTOR = re.compile(r"^([qxabt])(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"a*t*q^2"`` (or ``"1"``)."""
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ONE
    exps = dict.fromkeys(VARS, 0)
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"bad monomial factor {factor!r}")
        exps[m.group(1)] += int(m.group(2) or 1)
    return Monomial(**exps)


def grlex_key(exps: tuple[int, ...]) -> tuple:
    """Ascending graded-lex key, variable order q > x > a > b > t."""
    return (sum(exps), tuple(exps))


def _mono_text(exps: Iterable[int]) -> str:
    out = []
    for v, e in zip(VARS, exps):
        if e == 1:
            out.append(v)
        elif e:
            out.append(f"{v}^{e}")
    return "*".join(out)


def _terms_text(items: Iterable[tuple[tuple[int, ...], int]]) -> str:
    pieces = []
    for exps, c in sorted(items, key=lambda kv: grlex_key(kv[0])):
        mono = _mono_text(exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces) if pieces else "0"


def _terms_json(items: Iterable[tuple[tuple[int, ...], int]]) -> list[dict]:
    return [
        {"coeff": str(c), "exps": dict(zip(VARS, exps))}
        for exps, c in sorted(items, key=lambda kv: grlex_key(kv[0]))
    ]


class Polynomial:
    """Sparse polynomial in ``(q, x, a, b, t)`` with integer coefficients.

    Treated as immutable: every operation returns a new object.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean: dict[Monomial, int] = {}
        for exps, c in (terms or {}).items():
            if c:
                key = exps if isinstance(exps, Monomial) else Monomial(*exps)
                if min(key) < 0:
                    raise ValueError(f"negative exponent in {key}")
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def mono(cls, m: Monomial, c: int = 1) -> "Polynomial":
        return cls({m: c})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({monomial(**{name: 1}): 1})

    @classmethod
    def from_univariate(cls, coeffs: Iterable[int], step: int = 1) -> "Polynomial":
        """``sum(c_i * q^(step*i))``."""
        return cls({Monomial(q=step * i): c for i, c in enumerate(coeffs) if c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({k: c * other for k, c in self.terms.items()})
        out: dict[tuple, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(i + j for i, j in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def degree(self, var: str = "q") -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        i = VARS.index(var)
        return max((k[i] for k in self.terms), default=-1)

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def q_coefficients(self) -> list[int]:
        """Coefficient list of a polynomial in q alone."""
        if any(any(k[1:]) for k in self.terms):
            raise ValueError("not univariate in q")
        out = [0] * (self.degree("q") + 1)
        for k, c in self.terms.items():
            out[k[0]] = c
        return out

    def scale_q(self, step: int) -> "Polynomial":
        """Substitute q -> q^step."""
        return Polynomial({k._replace(q=k.q * step): c for k, c in self.terms.items()})

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0])))

    def to_text(self) -> str:
        return _terms_text(self.terms.items())

    def to_json(self) -> list[dict]:
        return _terms_json(self.terms.items())

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def _shift(level: dict, aux: tuple, c: int) -> dict:
    if aux == _AUX_ZERO:
        return {k: v * c for k, v in level.items()}
    x, a, b, t = aux
    return {(k[0] + x, k[1] + a, k[2] + b, k[3] + t): v * c for k, v in level.items()}


def _accumulate(into: dict, level: dict, sign: int = 1) -> None:
    for k, v in level.items():
        nv = into.get(k, 0) + sign * v
        if nv:
            into[k] = nv
        else:
            into.pop(k, None)


def _convolve(left: dict, right: dict, into: dict) -> None:
    for k1, c1 in left.items():
        x1, a1, b1, t1 = k1
        for (x2, a2, b2, t2), c2 in right.items():
            k = (x1 + x2, a1 + a2, b1 + b2, t1 + t2)
            nv = into.get(k, 0) + c1 * c2
            if nv:
                into[k] = nv
            else:
                into.pop(k, None)


class TruncatedSeries:
    """Power series in q modulo ``q^(trunc+1)`` with polynomial coefficients in x, a, b, t."""

    __slots__ = ("_levels", "trunc")

    def __init__(self, levels: Iterable[dict], trunc: int):
        levels = [dict(lv) for lv in levels]
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        if len(levels) > trunc + 1:
            levels = levels[: trunc + 1]
        levels += [{} for _ in range(trunc + 1 - len(levels))]
        self._levels = tuple({k: v for k, v in lv.items() if v} for lv in levels)
        self.trunc = trunc

    @classmethod
    def _raw(cls, levels: list[dict], trunc: int) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj._levels = tuple(levels)
        obj.trunc = trunc
        return obj

    # constructors

    @classmethod
    def zero(cls, trunc: int) -> "TruncatedSeries":
        return cls([], trunc)

    @classmethod
    def one(cls, trunc: int) -> "TruncatedSeries":
        return cls.monomial(ONE, trunc)

    @classmethod
    def monomial(cls, m: Monomial, trunc: int, c: int = 1) -> "TruncatedSeries":
        levels: list[dict] = [{} for _ in range(trunc + 1)]
        if m[0] <= trunc and c:
            levels[m[0]] = {tuple(m[1:]): c}
        return cls(levels, trunc)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], int], trunc: int) -> "TruncatedSeries":
        levels: list[dict] = [{} for _ in range(trunc + 1)]
        for exps, c in terms.items():
            if exps[0] <= trunc and c:
                lv = levels[exps[0]]
                key = tuple(exps[1:])
                lv[key] = lv.get(key, 0) + c
        return cls(levels, trunc)

    @classmethod
    def from_polynomial(cls, p: Polynomial, trunc: int) -> "TruncatedSeries":
        return cls.from_terms(p.terms, trunc)

    # inspection

    def level(self, n: int) -> dict:
        return dict(self._levels[n])

    def items(self) -> Iterator[tuple[Monomial, int]]:
        for n, lv in enumerate(self._levels):
            for aux, c in lv.items():
                yield Monomial(n, *aux), c

    @property
    def body(self) -> Polynomial:
        return Polynomial(dict(self.items()))

    def __len__(self) -> int:
        return sum(len(lv) for lv in self._levels)

    def is_zero(self) -> bool:
        return not any(self._levels)

    def coeff(self, q_exp: int) -> Polynomial:
        """Coefficient of ``q^q_exp`` as a polynomial in x, a, b, t."""
        if not 0 <= q_exp <= self.trunc:
            raise IndexError(f"q^{q_exp} outside truncation order {self.trunc}")
        return Polynomial({(0, *aux): c for aux, c in self._levels[q_exp].items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._levels == other._levels

    __hash__ = None  # type: ignore[assignment]

    def to_text(self) -> str:
        return _terms_text(self.items())

    def to_json(self) -> list[dict]:
        return _terms_json(self.items())

    __str__ = to_text

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.to_text()!r}, trunc={self.trunc})"

    # arithmetic

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.trunc != self.trunc:
            raise ValueError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __neg__(self) -> "TruncatedSeries":
        return self._raw([{k: -v for k, v in lv.items()} for lv in self._levels], self.trunc)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        levels = []
        for mine, theirs in zip(self._levels, other._levels):
            lv = dict(mine)
            _accumulate(lv, theirs)
            levels.append(lv)
        return self._raw(levels, self.trunc)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        levels = []
        for mine, theirs in zip(self._levels, other._levels):
            lv = dict(mine)
            _accumulate(lv, theirs, -1)
            levels.append(lv)
        return self._raw(levels, self.trunc)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, int):
            if other == 0:
                return TruncatedSeries.zero(self.trunc)
            return self._raw([_shift(lv, _AUX_ZERO, other) for lv in self._levels], self.trunc)
        return series_mul(self, other)

    __rmul__ = __mul__

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc > self.trunc:
            raise ValueError("cannot raise the truncation order")
        return self._raw(list(self._levels[: trunc + 1]), trunc)

    def times_monomial(self, m: Monomial, c: int = 1) -> "TruncatedSeries":
        d, aux = m[0], tuple(m[1:])
        levels: list[dict] = [{} for _ in range(self.trunc + 1)]
        for n in range(self.trunc + 1 - d):
            if self._levels[n]:
                levels[n + d] = _shift(self._levels[n], aux, c)
        return self._raw(levels, self.trunc)

    def times_factor(self, m: Monomial, c: int) -> "TruncatedSeries":
        """Multiply by ``(1 + c*m)``."""
        d, aux = m[0], tuple(m[1:])
        if d > self.trunc or c == 0:
            return self
        levels = [dict(lv) for lv in self._levels]
        for n in range(self.trunc + 1 - d):
            if self._levels[n]:
                _accumulate(levels[n + d], _shift(self._levels[n], aux, c))
        return self._raw(levels, self.trunc)

    def div_factor(self, m: Monomial, c: int) -> "TruncatedSeries":
        """Divide by ``(1 + c*m)``; ``m`` must carry a positive power of q."""
        d, aux = m[0], tuple(m[1:])
        if d == 0:
            raise ValueError(f"1 + ({c})*{m} is not a unit modulo q^{self.trunc + 1}")
        if d > self.trunc or c == 0:
            return self
        levels = [dict(lv) for lv in self._levels]
        for n in range(d, self.trunc + 1):
            if levels[n - d]:
                _accumulate(levels[n], _shift(levels[n - d], aux, -c))
        return self._raw(levels, self.trunc)

    def times_pochhammer(self, base: Monomial, n: int | None, step: Monomial = Q,
                         scale: int = 1) -> "TruncatedSeries":
        """Multiply by ``prod_{i<n} (1 - scale*base*step^i)``; ``n=None`` is the infinite product."""
        out = self
        for m in _poch_factors(base, n, step, self.trunc):
            out = out.times_factor(m, -scale)
        return out

    def div_pochhammer(self, base: Monomial, n: int | None, step: Monomial = Q,
                       scale: int = 1) -> "TruncatedSeries":
        out = self
        for m in _poch_factors(base, n, step, self.trunc):
            out = out.div_factor(m, -scale)
        return out

    def flip_sign(self, var: str) -> "TruncatedSeries":
        """Substitute ``var -> -var`` for an auxiliary variable."""
        i = AUX_VARS.index(var)
        return self._raw(
            [{k: (-v if k[i] % 2 else v) for k, v in lv.items()} for lv in self._levels],
            self.trunc,
        )


def _poch_factors(base: Monomial, n: int | None, step: Monomial, trunc: int) -> Iterator[Monomial]:
    if n is None:
        if base.q < 1 or step.q < 1:
            raise ValueError("infinite q-Pochhammer product needs positive q-degree in base and step")
    elif n < 0:
        raise ValueError("negative Pochhammer length")
    m = base
    i = 0
    while n is None or i < n:
        if m.q > trunc and step.q >= 1:
            return
        yield m
        m = m * step
        i += 1


def series_mul(lhs: TruncatedSeries, rhs: TruncatedSeries) -> TruncatedSeries:
    lhs._check(rhs)
    T = lhs.trunc
    levels: list[dict] = [{} for _ in range(T + 1)]
    for i, left in enumerate(lhs._levels):
        if not left:
            continue
        for j in range(T + 1 - i):
            right = rhs._levels[j]
            if right:
                _convolve(left, right, levels[i + j])
    return TruncatedSeries._raw(levels, T)


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term exactly 1."""
    if s._levels[0] != {_AUX_ZERO: 1}:
        raise ValueError("series is not invertible: constant term must be exactly 1")
    T = s.trunc
    levels: list[dict] = [{_AUX_ZERO: 1}] + [{} for _ in range(T)]
    for n in range(1, T + 1):
        acc: dict = {}
        for j in range(1, n + 1):
            if s._levels[j] and levels[n - j]:
                _convolve(s._levels[j], levels[n - j], acc)
        levels[n] = {k: -v for k, v in acc.items()}
    return TruncatedSeries._raw(levels, T)


def pochhammer_finite(base: Monomial, n: int, trunc: int, step: Monomial = Q,
                      scale: int = 1) -> TruncatedSeries:
    """``prod_{i=0}^{n-1} (1 - scale*base*step^i)`` truncated at ``q^trunc``."""
    if n < 0:
        raise ValueError("negative Pochhammer length")
    return TruncatedSeries.one(trunc).times_pochhammer(base, n, step, scale)


def pochhammer_infinite(base: Monomial, trunc: int, step: Monomial = Q,
                        scale: int = 1) -> TruncatedSeries:
    """The infinite product; factors with q-degree above ``trunc`` are 1."""
    return TruncatedSeries.one(trunc).times_pochhammer(base, None, step, scale)


def coeff(s: TruncatedSeries, q_exp: int) -> Polynomial:
    return s.coeff(q_exp)


class Difference(NamedTuple):
    monomial: Monomial
    lhs: int
    rhs: int


def series_equal(lhs: TruncatedSeries, rhs: TruncatedSeries) -> tuple[bool, Difference | None]:
    """Compare two series; on mismatch return the grlex-least differing monomial."""
    lhs._check(rhs)
    if lhs._levels == rhs._levels:
        return True, None
    return False, first_difference(lhs.body, rhs.body)


def first_difference(lhs: Polynomial, rhs: Polynomial) -> Difference | None:
    keys = set(lhs.terms) | set(rhs.terms)
    diff = [k for k in keys if lhs.terms.get(k, 0) != rhs.terms.get(k, 0)]
    if not diff:
        return None
    k = min(diff, key=grlex_key)
    return Difference(Monomial(*k), lhs.terms.get(k, 0), rhs.terms.get(k, 0))


@lru_cache(maxsize=None)
def _box_coeffs(a: int, b: int) -> tuple[int, ...]:
    # partitions with largest part <= a and at most b parts
    if a == 0 or b == 0:
        return (1,)
    smaller = _box_coeffs(a - 1, b)
    top = _box_coeffs(a, b - 1)
    out = [0] * (a * b + 1)
    for i, c in enumerate(smaller):
        out[i] += c
    for i, c in enumerate(top):
        out[i + a] += c
    return tuple(out)


def q_binomial(a: int, b: int) -> Polynomial:
    """The Gaussian coefficient ``[a+b, b]_q``: partitions fitting in an a-by-b box.

    Zero when either argument is negative.
    """
    if a < 0 or b < 0:
        return Polynomial()
    return Polynomial.from_univariate(_box_coeffs(min(a, b), max(a, b)))


def gaussian(n: int, k: int, step: int = 1) -> Polynomial:
    """``[n, k]`` in base ``q^step``; zero unless ``0 <= k <= n``."""
    return q_binomial(n - k, k).scale_q(step)


def divide_exact(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact quotient ``num / den`` where ``den`` has constant term 1.

    Raises ``ValueError`` if the division leaves a remainder.
    """
    if not num:
        return Polynomial()
    T = max(num.degree("q"), 0)
    quot = series_mul(
        TruncatedSeries.from_polynomial(num, T),
        series_invert(TruncatedSeries.from_polynomial(den, T)),
    ).body
    if quot * den != num:
        raise ValueError("polynomial division is not exact")
    return quot


def dumps(obj: Polynomial | TruncatedSeries) -> str:
    return json.dumps(obj.to_json())
