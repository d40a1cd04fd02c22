"""Exact and enclosure arithmetic: Bernoulli numbers, zeta and L values,
half-integer Gamma products, and the convergent constants used by the
automorphism and mass bounds.

Exact values are carried as :class:`ExactFactored`: a rational coefficient
times an integer power of sqrt(pi) times the square root of a positive
rational.  That shape is closed under every product this package forms, and
all square roots cancel whenever a quantity is provably rational.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt
from typing import Union

import gmpy2

from .characters import QuadraticCharacter, character
from .config import DEFAULT_PRIME_BOUND
from .enclosure import RealEnclosure, _down, _up
from .errors import DomainError, ParityError

# ---------------------------------------------------------------------------
# exact factored values


def _extract_square(n: int) -> tuple[int, int]:
    """n = s^2 * r with r squarefree-ish (full square and small primes only)."""
    s = isqrt(n)
    if s * s == n:
        return s, 1
    out = 1
    for p in (2, 3, 5, 7, 11, 13):
        pp = p * p
        while n % pp == 0:
            n //= pp
            out *= p
    s = isqrt(n)
    if s * s == n:
        return out * s, 1
    return out, n


@dataclass(frozen=True)
class ExactFactored:
    """coeff * pi^(pi_half/2) * sqrt(sqrt_arg), all parts exact."""

    coeff: Fraction
    pi_half: int = 0
    sqrt_arg: Fraction = Fraction(1)

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        arg = Fraction(self.sqrt_arg)
        if arg <= 0:
            raise DomainError("sqrt argument must be positive")
        sn, rn = _extract_square(arg.numerator)
        sd, rd = _extract_square(arg.denominator)
        coeff = coeff * Fraction(sn, sd)
        arg = Fraction(rn, rd)
        if coeff == 0:
            object.__setattr__(self, "pi_half", 0)
            arg = Fraction(1)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "sqrt_arg", arg)

    @classmethod
    def from_rational(cls, q) -> "ExactFactored":
        return cls(Fraction(q))

    def __mul__(self, other) -> "ExactFactored":
        if isinstance(other, ExactFactored):
            return ExactFactored(self.coeff * other.coeff,
                                 self.pi_half + other.pi_half,
                                 self.sqrt_arg * other.sqrt_arg)
        return ExactFactored(self.coeff * Fraction(other), self.pi_half,
                             self.sqrt_arg)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactFactored":
        if isinstance(other, ExactFactored):
            return ExactFactored(self.coeff / other.coeff,
                                 self.pi_half - other.pi_half,
                                 self.sqrt_arg / other.sqrt_arg)
        return ExactFactored(self.coeff / Fraction(other), self.pi_half,
                             self.sqrt_arg)

    def pow_int(self, k: int) -> "ExactFactored":
        if k == 0:
            return ExactFactored(Fraction(1))
        return ExactFactored(self.coeff ** k, self.pi_half * k,
                             self.sqrt_arg ** k)

    def is_rational(self) -> bool:
        return self.pi_half == 0 and self.sqrt_arg == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(
                f"value has unresolved pi^{self.pi_half}/2 or sqrt({self.sqrt_arg})")
        return self.coeff

    def to_enclosure(self, prec: int) -> RealEnclosure:
        wp = prec + 32  # guard bits keep the result within ~1 ulp of exact
        out = RealEnclosure.exact(self.coeff, wp)
        if self.pi_half:
            q, r = divmod(self.pi_half, 2)
            pi = RealEnclosure.pi(wp)
            if q:
                out = out * pi.pow_int(q)
            if r:
                out = out * pi.sqrt()
        if self.sqrt_arg != 1:
            out = out * RealEnclosure.exact(self.sqrt_arg, wp).sqrt()
        return out.refine(prec)


# ---------------------------------------------------------------------------
# Bernoulli numbers (B_1 = -1/2 convention) and harmonic numbers

_BERN: list[Fraction] = [Fraction(1)]
_BERN_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n >= len(_BERN):
        with _BERN_LOCK:
            while len(_BERN) <= n:
                m = len(_BERN)
                s = sum(comb(m + 1, k) * _BERN[k] for k in range(m))
                _BERN.append(-s / (m + 1))
    return _BERN[n]


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    if n == 0:
        return Fraction(0)
    return harmonic(n - 1) + Fraction(1, n)


# ---------------------------------------------------------------------------
# generalized Bernoulli numbers via power sums and series division


@lru_cache(maxsize=4096)
def gen_bernoulli(n: int, conductor: int) -> Fraction:
    """B_{n, chi} for the quadratic character of the given conductor.

    Generating function sum_{a=1}^{m} chi(a) t e^{at} / (e^{mt} - 1); for the
    trivial character (conductor 1) this gives B_1 = +1/2 and B_n otherwise.
    """
    if n < 0:
        raise DomainError("index must be nonnegative")
    chi = character(conductor)
    m = chi.modulus
    S = [0] * (n + 1)
    for a in range(1, m + 1):
        c = chi(a)
        if c == 0:
            continue
        S[0] += c
        pw = 1
        for j in range(1, n + 1):
            pw *= a
            S[j] += c * pw
    # E(t) = sum S_j t^j / j!,  D(t) = (e^{mt}-1)/t = sum m^{j+1} t^j/(j+1)!
    E = [Fraction(S[j], factorial(j)) for j in range(n + 1)]
    Dser = [Fraction(m ** (j + 1), factorial(j + 1)) for j in range(n + 1)]
    C = [Fraction(0)] * (n + 1)
    d0 = Dser[0]
    for k in range(n + 1):
        acc = E[k]
        for i in range(k):
            acc -= C[i] * Dser[k - i]
        C[k] = acc / d0
    return C[n] * factorial(n)


# ---------------------------------------------------------------------------
# exact zeta and L values


def zeta_even_exact(k: int) -> ExactFactored:
    """zeta(k) = rational * pi^k for even k >= 2."""
    if k < 2 or k % 2 != 0:
        raise ParityError(f"zeta is exact here only at even k >= 2, got {k}")
    coeff = Fraction((-1) ** (k // 2 + 1) * 2 ** (k - 1), factorial(k)) * bernoulli(k)
    return ExactFactored(coeff, pi_half=2 * k)


def l_value_exact(k: int, chi: QuadraticCharacter) -> ExactFactored:
    """L(k, chi) by the functional equation, for parity-matching (k, chi).

    The Gauss sum of a quadratic character of fundamental discriminant m is
    sqrt(m) for m > 0 and i*sqrt(|m|) for m < 0, which makes the epsilon
    factor 1 in both parities and leaves

        L(k, chi) = sign * 2^(k-1) * pi^k * B_{k,chi} / (k! * f^(k-1/2)).
    """
    if k < 1:
        raise DomainError("need k >= 1")
    if chi.is_trivial():
        if k < 2 or k % 2 != 0:
            raise ParityError("trivial character needs even k >= 2")
        return zeta_even_exact(k)
    if not chi.parity_matches(k):
        raise ParityError(
            f"chi(-1) = {-1 if chi.is_odd() else 1} does not match (-1)^{k}")
    f = abs(chi.conductor)
    B = gen_bernoulli(k, chi.conductor)
    if chi.is_odd():
        sign = (-1) ** ((k + 1) // 2)
    else:
        sign = (-1) ** (1 + k // 2)
    coeff = Fraction(sign * 2 ** (k - 1), factorial(k) * f ** k) * B
    return ExactFactored(coeff, pi_half=2 * k, sqrt_arg=Fraction(f))


def gamma_half_product(n: int) -> ExactFactored:
    """prod_{i=1}^{n} Gamma(i/2), exact: rational times a power of sqrt(pi)."""
    if n < 1:
        raise DomainError("need n >= 1")
    coeff = Fraction(1)
    half_powers = 0
    for i in range(1, n + 1):
        if i % 2 == 0:
            coeff *= factorial(i // 2 - 1)
        else:
            k = (i - 1) // 2
            coeff *= Fraction(factorial(2 * k), 4 ** k * factorial(k))
            half_powers += 1
    return ExactFactored(coeff, pi_half=half_powers)


# ---------------------------------------------------------------------------
# prime sieve


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = b"\x00" * len(range(p * p, n + 1, p))
    return tuple(i for i, v in enumerate(sieve) if v)


# ---------------------------------------------------------------------------
# rigorous zeta enclosures (Euler-Maclaurin with Backlund's remainder)

Rational = Union[int, Fraction]


def zeta_enclosure(s: Rational, prec: int) -> RealEnclosure:
    """Enclosure of zeta(s) for rational s > 1.

    Euler-Maclaurin: partial sum to N-1, integral and half terms, then
    Bernoulli corrections.  For real s the truncation error is bounded in
    absolute value by the first omitted correction term (Backlund), which is
    added as a symmetric interval.
    """
    s = Fraction(s)
    if s <= 1:
        raise DomainError(f"zeta enclosure needs s > 1, got {s}")
    wp = prec + 24
    N = max(16, (prec // 3) + 8)
    for _ in range(12):
        result = _zeta_em(s, N, wp)
        if result is not None:
            return result.refine(prec).widen_ulp(2)
        N *= 2
    raise DomainError("Euler-Maclaurin failed to converge (internal)")


def _zeta_em(s: Fraction, N: int, wp: int):
    partial = RealEnclosure.exact(0, wp)
    for k in range(1, N):
        partial = partial + RealEnclosure.exact(k, wp).pow_fraction(-s)
    encN = RealEnclosure.exact(N, wp)
    total = partial + encN.pow_fraction(1 - s) / RealEnclosure.exact(s - 1, wp)
    total = total + encN.pow_fraction(-s) * Fraction(1, 2)
    # correction terms B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(1-s-2j)
    rising = Fraction(1)  # prod_{i=0}^{2j-2} (s+i), maintained incrementally
    target = Fraction(1, 2 ** (wp - 8))
    j = 0
    while True:
        j += 1
        if j == 1:
            rising = s
        else:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        coeff = bernoulli(2 * j) / factorial(2 * j) * rising
        term = RealEnclosure.exact(coeff, wp) * encN.pow_fraction(1 - s - 2 * j)
        total = total + term
        # Backlund bound: next term magnitude
        nxt = abs(bernoulli(2 * j + 2) / factorial(2 * j + 2)
                  * rising * (s + 2 * j - 1) * (s + 2 * j))
        bound = RealEnclosure.exact(nxt, wp) * encN.pow_fraction(-s - 2 * j - 1)
        b = bound.hi
        if b <= target:
            return total + RealEnclosure.symmetric(b, wp)
        if j > 4 and 2 * j > 3 * N:
            return None  # divergent regime, retry with larger N


def zeta_prime_2_enclosure(prec: int) -> RealEnclosure:
    """Enclosure of zeta'(2) = -sum log(n)/n^2, Euler-Maclaurin tail.

    For g(x) = log(x)/x^2 the derivatives are
    g^(k)(x) = (-1)^k (k+1)! x^(-k-2) (log x - H_{k+1} + 1), of constant sign
    once log N > H_{k+1} - 1, so the remainder after m correction terms is at
    most 2 zeta(2m)/(2 pi)^{2m} |g^(2m-1)(N)| with zeta(2m) < 2.
    """
    wp = prec + 24
    N = max(64, prec)
    while True:
        out = _zeta_prime_2_em(N, wp)
        if out is not None:
            return out.refine(prec).widen_ulp(2)
        N *= 2


def _zeta_prime_2_em(N: int, wp: int):
    logN = RealEnclosure.exact(N, wp).log()

    def g_deriv(k: int) -> RealEnclosure:
        fac = Fraction((-1) ** k * factorial(k + 1), N ** (k + 2))
        return RealEnclosure.exact(fac, wp) * (logN - (harmonic(k + 1) - 1))

    partial = RealEnclosure.exact(0, wp)
    for n in range(2, N):
        partial = partial + RealEnclosure.exact(n, wp).log() / (n * n)
    tail = (logN + 1) / N + g_deriv(0) * Fraction(1, 2)
    target = Fraction(1, 2 ** (wp - 8))
    two_pi_sq = (RealEnclosure.pi(wp) * 2).pow_int(2)
    m = 0
    while True:
        m += 1
        # constant-sign requirement for the remainder integral
        if not logN.certainly_gt(harmonic(2 * m + 1) - 1):
            return None
        tail = tail - RealEnclosure.exact(
            bernoulli(2 * m) / factorial(2 * m), wp) * g_deriv(2 * m - 1)
        bound = g_deriv(2 * m - 1).abs() * 4 / two_pi_sq.pow_int(m)
        b = bound.hi
        if b <= target:
            return -(partial + tail + RealEnclosure.symmetric(b, wp))
        if m > 300:
            return None


def l_value_enclosure(s: int, chi: QuadraticCharacter, prec: int,
                      direct_cap: int = 1 << 16) -> RealEnclosure:
    """Enclosure of L(s, chi) for integer s >= 2.

    Sums the Dirichlet series directly with an integral tail bound when that
    needs at most `direct_cap` terms; otherwise falls back to the exact
    Bernoulli closed form (always applicable here since parities match in
    every quantity this package forms).
    """
    if s < 2:
        raise DomainError("need s >= 2 for the enclosure path")
    if chi.is_trivial():
        return zeta_enclosure(s, prec)
    wp = prec + 16
    need = (prec + 6) / (s - 1)        # terms for a 2^-(prec+6) absolute tail
    N = 2 ** min(64, max(4, math.ceil(need)))
    if N > direct_cap:
        if chi.parity_matches(s):
            return l_value_exact(s, chi).to_enclosure(prec)
        raise DomainError(
            f"L({s}, chi_{chi.conductor}) needs {N} terms and has no closed form")
    lo = gmpy2.mpfr(0)
    hi = gmpy2.mpfr(0)
    for k in range(1, N + 1):
        c = chi(k)
        if c == 0:
            continue
        with _down(wp):
            tl = gmpy2.mpfr(k) ** (-s)
        with _up(wp):
            tu = gmpy2.mpfr(k) ** (-s)
        if c > 0:
            with _down(wp):
                lo = lo + tl
            with _up(wp):
                hi = hi + tu
        else:
            with _down(wp):
                lo = lo - tu
            with _up(wp):
                hi = hi - tl
    # |sum_{k>N}| <= N^-s + integral = N^-s + N^(1-s)/(s-1)
    tail = (RealEnclosure.exact(N, wp).pow_int(-s)
            + RealEnclosure.exact(N, wp).pow_int(1 - s) / (s - 1)).hi
    out = RealEnclosure(lo, hi, wp) + RealEnclosure.symmetric(tail, wp)
    return out.refine(prec).widen_ulp(2)


# ---------------------------------------------------------------------------
# convergent constants


@lru_cache(maxsize=32)
def prime_sum_constant(prec: int, bound: int = DEFAULT_PRIME_BOUND) -> RealEnclosure:
    """Enclosure of sum over all primes of log(l)/(l-1)^2.

    Truncated at `bound`, with the tail enclosed by the integral bound
    log(X)/(X-1) + 1/(X-1) over all integers above X (the summand is
    decreasing there, so the prime tail is smaller still).
    """
    wp = prec + 16
    lo = gmpy2.mpfr(0)
    hi = gmpy2.mpfr(0)
    near = gmpy2.context(precision=wp)
    for p in primes_up_to(bound):
        with near:
            lg = gmpy2.log(p)
        den = (p - 1) * (p - 1)
        with _down(wp):
            lo = lo + gmpy2.next_below(lg) / den
        with _up(wp):
            hi = hi + gmpy2.next_above(lg) / den
    X = bound
    tail_hi = ((RealEnclosure.exact(X, wp).log() + 1)
               / RealEnclosure.exact(X - 1, wp)).hi
    with _up(wp):
        hi = hi + tail_hi
    return RealEnclosure(lo, hi, wp).refine(prec)


def odd_prime_sum_constant(prec: int, bound: int = DEFAULT_PRIME_BOUND) -> RealEnclosure:
    """Same sum restricted to odd primes (the commonly quoted ~0.533822)."""
    return prime_sum_constant(prec, bound) - RealEnclosure.log2(prec + 16)


@lru_cache(maxsize=32)
def constant_A(prec: int, bound: int = DEFAULT_PRIME_BOUND) -> RealEnclosure:
    """A = log(2)/2 - 1 + sum over all primes of log(l)/(l-1)^2 (~0.573542)."""
    return (RealEnclosure.log2(prec + 16) * Fraction(1, 2) - 1
            + prime_sum_constant(prec, bound)).refine(prec)


def zeta_prime_minus1(prec: int) -> RealEnclosure:
    """zeta'(-1) from the differentiated functional equation:
    zeta'(-1) = (1 - gamma - log(2 pi))/12 + zeta'(2)/(2 pi^2).
    """
    wp = prec + 16
    gamma = RealEnclosure.euler_gamma(wp)
    log2pi = (RealEnclosure.pi(wp) * 2).log()
    zp2 = zeta_prime_2_enclosure(wp)
    out = (1 - gamma - log2pi) / 12 + zp2 / (RealEnclosure.pi(wp).pow_int(2) * 2)
    return out.refine(prec)


def glaisher_enclosure(prec: int) -> RealEnclosure:
    """Glaisher-Kinkelin constant exp(1/12 - zeta'(-1))."""
    wp = prec + 16
    return (RealEnclosure.exact(Fraction(1, 12), wp) - zeta_prime_minus1(wp)) \
        .exp().refine(prec)


@lru_cache(maxsize=32)
def kellner_C(prec: int) -> RealEnclosure:
    """C = 2^(-1/4) e^(1/24) exp(1/12 - zeta'(-1))^(-1/2)  (~0.774144)."""
    wp = prec + 16
    half = RealEnclosure.exact(Fraction(1, 2), wp)
    out = (half.pow_fraction(Fraction(1, 4))
           * RealEnclosure.exact(Fraction(1, 24), wp).exp()
           * glaisher_enclosure(wp).pow_fraction(Fraction(-1, 2)))
    return out.refine(prec)
