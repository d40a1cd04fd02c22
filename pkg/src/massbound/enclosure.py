"""Directed-rounded interval arithmetic on MPFR floats.

A :class:`RealEnclosure` is a pair ``lo <= hi`` of MPFR numbers at a fixed
working precision.  Every operation rounds the lower endpoint toward minus
infinity and the upper endpoint toward plus infinity, so the interval of the
result always contains the exact real result.  Exact inputs (ints, Fractions)
are converted through ``gmpy2.mpq`` with a single directed rounding.

Nothing in this module ever produces a bare point float for an inexact
quantity; callers that need a decimal rendering get one endpoint rounded down
and one rounded up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import DomainError

ScalarLike = Union[int, Fraction, "RealEnclosure"]

# context objects hold their own restore state, so they must not be shared
# between threads; cache them per thread
_CTX_LOCAL = __import__("threading").local()


def _ctx(prec: int, rnd):
    cache = getattr(_CTX_LOCAL, "cache", None)
    if cache is None:
        cache = _CTX_LOCAL.cache = {}
    key = (prec, rnd)
    ctx = cache.get(key)
    if ctx is None:
        ctx = gmpy2.context(precision=prec, round=rnd)
        cache[key] = ctx
    return ctx


def _down(prec: int):
    return _ctx(prec, gmpy2.RoundDown)


def _up(prec: int):
    return _ctx(prec, gmpy2.RoundUp)


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, mpz)):
        return mpq(x)
    if isinstance(x, mpq):
        return x
    raise TypeError(f"cannot treat {type(x)!r} as an exact rational")


def _neg(x: mpfr) -> mpfr:
    # gmpy2 unary minus rounds to the *current* context; force the operand's
    # own precision, where negation is exact.
    with gmpy2.context(precision=x.precision):
        return -x


def _absval(x: mpfr) -> mpfr:
    with gmpy2.context(precision=x.precision):
        return abs(x)


class RealEnclosure:
    """Closed interval [lo, hi] guaranteed to contain one exact real value."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: mpfr, hi: mpfr, prec: int):
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise DomainError("NaN endpoint in enclosure")
        if lo > hi:
            raise DomainError(f"inverted enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, x, prec: int) -> "RealEnclosure":
        """Tightest enclosure of an exact rational at the given precision."""
        q = _to_mpq(x)
        with _down(prec):
            lo = mpfr(q)
        with _up(prec):
            hi = mpfr(q)
        return cls(lo, hi, prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int) -> "RealEnclosure":
        """Enclosure from exact rational endpoints (rounded outward)."""
        ql, qh = _to_mpq(lo), _to_mpq(hi)
        with _down(prec):
            l = mpfr(ql)
        with _up(prec):
            h = mpfr(qh)
        return cls(l, h, prec)

    @classmethod
    def pi(cls, prec: int) -> "RealEnclosure":
        with _down(prec):
            lo = gmpy2.const_pi()
        with _up(prec):
            hi = gmpy2.const_pi()
        return cls(lo, hi, prec)

    @classmethod
    def log2(cls, prec: int) -> "RealEnclosure":
        with _down(prec):
            lo = gmpy2.const_log2()
        with _up(prec):
            hi = gmpy2.const_log2()
        return cls(lo, hi, prec)

    @classmethod
    def euler_gamma(cls, prec: int) -> "RealEnclosure":
        # MPFR's const_euler is correctly rounded, so directed rounding of it
        # is a rigorous 1-ulp enclosure of the Euler-Mascheroni constant.
        with _down(prec):
            lo = gmpy2.const_euler()
        with _up(prec):
            hi = gmpy2.const_euler()
        return cls(lo, hi, prec)

    # -- coercion -----------------------------------------------------

    def _lift(self, other) -> "RealEnclosure":
        if isinstance(other, RealEnclosure):
            return other
        return RealEnclosure.exact(other, self.prec)

    # -- basic queries --------------------------------------------------

    def width(self) -> mpfr:
        with _up(self.prec):
            return self.hi - self.lo

    def mid(self) -> mpfr:
        with gmpy2.context(precision=self.prec):
            return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RealEnclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (int, Fraction, mpz)):
            q = _to_mpq(x)
            return self.lo <= q <= self.hi
        return self.lo <= x <= self.hi

    def intersects(self, other: "RealEnclosure") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def certainly_lt(self, other) -> bool:
        other = self._lift(other)
        return self.hi < other.lo

    def certainly_gt(self, other) -> bool:
        other = self._lift(other)
        return self.lo > other.hi

    def certainly_le(self, other) -> bool:
        other = self._lift(other)
        return self.hi <= other.lo

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def __repr__(self) -> str:
        return f"RealEnclosure[{self.lo!r}, {self.hi!r}]@{self.prec}"

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "RealEnclosure":
        return RealEnclosure(_neg(self.hi), _neg(self.lo), self.prec)

    def __add__(self, other) -> "RealEnclosure":
        other = self._lift(other)
        p = max(self.prec, other.prec)
        with _down(p):
            lo = self.lo + other.lo
        with _up(p):
            hi = self.hi + other.hi
        return RealEnclosure(lo, hi, p)

    __radd__ = __add__

    def __sub__(self, other) -> "RealEnclosure":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RealEnclosure":
        return (-self) + self._lift(other)

    def __mul__(self, other) -> "RealEnclosure":
        other = self._lift(other)
        p = max(self.prec, other.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        with _down(p):
            lo = min(a * c, a * d, b * c, b * d)
        with _up(p):
            hi = max(a * c, a * d, b * c, b * d)
        return RealEnclosure(lo, hi, p)

    __rmul__ = __mul__

    def recip(self) -> "RealEnclosure":
        if self.lo <= 0 <= self.hi:
            raise DomainError("division by an interval containing zero")
        p = self.prec
        with _down(p):
            lo = 1 / self.hi
        with _up(p):
            hi = 1 / self.lo
        return RealEnclosure(lo, hi, p)

    def __truediv__(self, other) -> "RealEnclosure":
        return self * self._lift(other).recip()

    def __rtruediv__(self, other) -> "RealEnclosure":
        return self._lift(other) * self.recip()

    def __pow__(self, k: int) -> "RealEnclosure":
        return self.pow_int(k)

    def pow_int(self, k: int) -> "RealEnclosure":
        if k < 0:
            return self.pow_int(-k).recip()
        if k == 0:
            return RealEnclosure.exact(1, self.prec)
        p = self.prec
        if k % 2 == 1 or self.lo >= 0:
            with _down(p):
                lo = self.lo ** k
            with _up(p):
                hi = self.hi ** k
            if self.lo >= 0 or k % 2 == 1:
                return RealEnclosure(lo, hi, p)
        # even power of a sign-straddling or negative interval
        with _up(p):
            h = max(abs(self.lo) ** k, abs(self.hi) ** k)
        if self.lo <= 0 <= self.hi:
            return RealEnclosure(mpfr(0), h, p)
        with _down(p):
            l = min(abs(self.lo) ** k, abs(self.hi) ** k)
        return RealEnclosure(l, h, p)

    def pow_fraction(self, q: Fraction) -> "RealEnclosure":
        """x^q for a positive interval and rational exponent, via rootn."""
        q = Fraction(q)
        if q.denominator == 1:
            return self.pow_int(q.numerator)
        if self.lo <= 0:
            raise DomainError("rational power needs a strictly positive base")
        if q < 0:
            return self.pow_fraction(-q).recip()
        p = self.prec
        num, den = q.numerator, q.denominator
        base = self.pow_int(num)
        with _down(p):
            lo = gmpy2.rootn(base.lo, den)
        with _up(p):
            hi = gmpy2.rootn(base.hi, den)
        return RealEnclosure(lo, hi, p)

    def sqrt(self) -> "RealEnclosure":
        if self.lo < 0:
            raise DomainError("sqrt of an interval with negative part")
        p = self.prec
        with _down(p):
            lo = gmpy2.sqrt(self.lo)
        with _up(p):
            hi = gmpy2.sqrt(self.hi)
        return RealEnclosure(lo, hi, p)

    def rootn(self, n: int) -> "RealEnclosure":
        if self.lo < 0:
            raise DomainError("rootn of an interval with negative part")
        p = self.prec
        with _down(p):
            lo = gmpy2.rootn(self.lo, n)
        with _up(p):
            hi = gmpy2.rootn(self.hi, n)
        return RealEnclosure(lo, hi, p)

    def log(self) -> "RealEnclosure":
        if self.lo <= 0:
            raise DomainError("log of an interval touching zero")
        p = self.prec
        with _down(p):
            lo = gmpy2.log(self.lo)
        with _up(p):
            hi = gmpy2.log(self.hi)
        return RealEnclosure(lo, hi, p)

    def exp(self) -> "RealEnclosure":
        p = self.prec
        with _down(p):
            lo = gmpy2.exp(self.lo)
        with _up(p):
            hi = gmpy2.exp(self.hi)
        return RealEnclosure(lo, hi, p)

    def abs(self) -> "RealEnclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealEnclosure(mpfr(0), max(_neg(self.lo), self.hi), self.prec)

    @classmethod
    def symmetric(cls, bound: mpfr, prec: int) -> "RealEnclosure":
        """[-b, b] for a nonnegative mpfr bound b."""
        if bound < 0:
            raise DomainError("symmetric enclosure needs a nonnegative bound")
        return cls(_neg(bound), bound, prec)

    # -- lattice operations ----------------------------------------------

    def min_with(self, other: "RealEnclosure") -> "RealEnclosure":
        """Enclosure of min(x, y); always valid, no refinement needed."""
        p = max(self.prec, other.prec)
        return RealEnclosure(min(self.lo, other.lo), min(self.hi, other.hi), p)

    def max_with(self, other: "RealEnclosure") -> "RealEnclosure":
        p = max(self.prec, other.prec)
        return RealEnclosure(max(self.lo, other.lo), max(self.hi, other.hi), p)

    def hull(self, other: "RealEnclosure") -> "RealEnclosure":
        p = max(self.prec, other.prec)
        return RealEnclosure(min(self.lo, other.lo), max(self.hi, other.hi), p)

    def widen_ulp(self, ulps: int = 1) -> "RealEnclosure":
        lo, hi = self.lo, self.hi
        for _ in range(ulps):
            lo = gmpy2.next_below(lo)
            hi = gmpy2.next_above(hi)
        return RealEnclosure(lo, hi, self.prec)

    def refine(self, prec: int) -> "RealEnclosure":
        """Re-round the endpoints at a (usually higher) precision.

        The result contains the original value; width never shrinks here,
        genuine refinement happens by recomputing the producing function.
        """
        with _down(prec):
            lo = mpfr(self.lo)
        with _up(prec):
            hi = mpfr(self.hi)
        return RealEnclosure(lo, hi, prec)

    # -- exact views -------------------------------------------------------

    def endpoints_fractions(self) -> tuple[Fraction, Fraction]:
        ql, qh = mpq(self.lo), mpq(self.hi)
        return (Fraction(int(ql.numerator), int(ql.denominator)),
                Fraction(int(qh.numerator), int(qh.denominator)))

    def decimal_bounds(self, digits: int = 36) -> tuple[str, str]:
        """Decimal strings (lo rounded down, hi rounded up): still an enclosure."""
        lo = format(self.lo, f".{digits}Dg")
        hi = format(self.hi, f".{digits}Ug")
        return lo, hi

    def __str__(self) -> str:
        lo, hi = self.decimal_bounds(20)
        return f"[{lo}, {hi}]"


def enclosure_sum(terms, prec: int) -> RealEnclosure:
    """Sum of an iterable of enclosures/exacts with directed accumulation."""
    total = RealEnclosure.exact(0, prec)
    for t in terms:
        total = total + t
    return total


def enclosure_prod(terms, prec: int) -> RealEnclosure:
    total = RealEnclosure.exact(1, prec)
    for t in terms:
        total = total * t
    return total
