"""Directed-rounded interval arithmetic.

Every operation returns an interval that is guaranteed to contain all real
results of the pointwise operation over the operand intervals (enclosure).
Outward rounding is realized by widening each bound with ``math.nextafter``:
1 ulp for the correctly-rounded operations (+, -, *, /, sqrt) and 4 ulp for
asin/acos, which covers the documented worst-case error of common libm
implementations (<= 2 ulp) with a safety factor of two.

Because no FPU rounding mode is ever switched, all operations are plain value
computations: they are deterministic and safe to use concurrently from any
number of threads or processes without coordination.
"""

from __future__ import annotations

import math
from math import acos as _acos
from math import asin as _asin
from math import nextafter as _nextafter
from math import sqrt as _sqrt

__all__ = [
    "Interval",
    "UndefinedIntervalError",
    "iv_add",
    "iv_sub",
    "iv_mul",
    "iv_div",
    "iv_sqrt",
    "iv_asin",
    "iv_acos",
    "iv_pi",
    "iv_point",
    "iv_hull",
    "iv_min",
    "iv_max",
]

_INF = math.inf

# Widening budget for libm-evaluated functions (asin/acos), in ulps.
_LIBM_ULPS = 4


class UndefinedIntervalError(ArithmeticError):
    """An operation left its real domain (or produced NaN) for some operand values."""


class Interval:
    """Closed interval [lo, hi] of reals, lo <= hi, both finite."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        # The chained comparison is False for NaN and rejects infinities.
        if not (-_INF < lo <= hi < _INF):
            raise UndefinedIntervalError(f"invalid interval bounds: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # Operator sugar; the iv_* functions are the primitive implementations.
    def __add__(self, other):
        return iv_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return iv_sub(self, _coerce(other))

    def __rsub__(self, other):
        return iv_sub(_coerce(other), self)

    def __mul__(self, other):
        return iv_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return iv_div(self, _coerce(other))

    def __rtruediv__(self, other):
        return iv_div(_coerce(other), self)

    def __neg__(self):
        return _mk(-self.hi, -self.lo)


_new = Interval.__new__


def _mk(lo: float, hi: float) -> Interval:
    """Internal constructor: same validation as __init__, minus dispatch."""
    if not (-_INF < lo <= hi < _INF):
        raise UndefinedIntervalError(f"invalid interval bounds: [{lo}, {hi}]")
    iv = _new(Interval)
    iv.lo = lo
    iv.hi = hi
    return iv


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return iv_point(float(x))


def _widen(x: float, ulps: int, direction: float) -> float:
    for _ in range(ulps):
        x = _nextafter(x, direction)
    return x


def iv_point(x: float) -> Interval:
    """Degenerate interval [x, x]."""
    return _mk(x, x)


def iv_pi() -> Interval:
    """Tight enclosure of pi (width 2 ulp)."""
    return _mk(_nextafter(math.pi, -_INF), _nextafter(math.pi, _INF))


def iv_hull(a: Interval, b: Interval) -> Interval:
    """Smallest interval containing both operands."""
    return _mk(min(a.lo, b.lo), max(a.hi, b.hi))


def iv_min(a: Interval, b: Interval) -> Interval:
    """Enclosure of pointwise min(x, y)."""
    return _mk(min(a.lo, b.lo), min(a.hi, b.hi))


def iv_max(a: Interval, b: Interval) -> Interval:
    """Enclosure of pointwise max(x, y)."""
    return _mk(max(a.lo, b.lo), max(a.hi, b.hi))


def iv_add(a: Interval, b: Interval) -> Interval:
    return _mk(_nextafter(a.lo + b.lo, -_INF), _nextafter(a.hi + b.hi, _INF))


def iv_sub(a: Interval, b: Interval) -> Interval:
    return _mk(_nextafter(a.lo - b.hi, -_INF), _nextafter(a.hi - b.lo, _INF))


def iv_mul(a: Interval, b: Interval) -> Interval:
    alo = a.lo
    ahi = a.hi
    blo = b.lo
    bhi = b.hi
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    return _mk(
        _nextafter(min(p1, p2, p3, p4), -_INF),
        _nextafter(max(p1, p2, p3, p4), _INF),
    )


def iv_div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise UndefinedIntervalError(f"division by interval containing zero: {b}")
    alo = a.lo
    ahi = a.hi
    blo = b.lo
    bhi = b.hi
    q1 = alo / blo
    q2 = alo / bhi
    q3 = ahi / blo
    q4 = ahi / bhi
    return _mk(
        _nextafter(min(q1, q2, q3, q4), -_INF),
        _nextafter(max(q1, q2, q3, q4), _INF),
    )


def iv_sqrt(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise UndefinedIntervalError(f"sqrt of interval with negative part: {a}")
    # sqrt is correctly rounded, so 1 ulp suffices; never widen below zero.
    return _mk(max(0.0, _nextafter(_sqrt(a.lo), -_INF)), _nextafter(_sqrt(a.hi), _INF))


def iv_asin(a: Interval) -> Interval:
    if a.lo < -1.0 or a.hi > 1.0:
        raise UndefinedIntervalError(f"asin of interval outside [-1, 1]: {a}")
    lo = _widen(_asin(a.lo), _LIBM_ULPS, -_INF)
    hi = _widen(_asin(a.hi), _LIBM_ULPS, _INF)
    if a.hi > 0.9 or a.lo < -0.9:
        # Near +-1 the acos-complement pi/2 - acos(x) is better conditioned;
        # both paths are sound enclosures, so intersect them.
        half_pi_lo = _nextafter(0.5 * math.pi, -_INF)
        half_pi_hi = _nextafter(0.5 * math.pi, _INF)
        lo_c = _nextafter(half_pi_lo - _widen(_acos(a.lo), _LIBM_ULPS, _INF), -_INF)
        hi_c = _nextafter(half_pi_hi - _widen(_acos(a.hi), _LIBM_ULPS, -_INF), _INF)
        if lo_c <= hi_c:
            new_lo = max(lo, lo_c)
            new_hi = min(hi, hi_c)
            if new_lo <= new_hi:
                lo, hi = new_lo, new_hi
    return _mk(lo, hi)


def iv_acos(a: Interval) -> Interval:
    if a.lo < -1.0 or a.hi > 1.0:
        raise UndefinedIntervalError(f"acos of interval outside [-1, 1]: {a}")
    return _mk(
        max(0.0, _widen(_acos(a.hi), _LIBM_ULPS, -_INF)),
        _widen(_acos(a.lo), _LIBM_ULPS, _INF),
    )
