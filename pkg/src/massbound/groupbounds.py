"""Bounds on orders of finite automorphism groups of unimodular lattices.

Two routes: the abelian-normal-subgroup bound 6^{dn/2} (n+1)! (valid as a
theorem for n > 71, advisory below), and prime-by-prime bounds on the l-part
of any finite subgroup of GL_n over the ring of integers, from the classical
cyclotomic-degree data (t_l, m_l).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from .arith import constant_A, primes_up_to
from .enclosure import RealEnclosure
from .errors import DomainError, UnsupportedField
from .fields import FieldDescriptor, RealQuadraticField
from .mass import FieldInput, resolve_field


@dataclass(frozen=True)
class SchurData:
    """Per-prime cyclotomic data: t = [K(zeta_l) : K], m = max a with
    zeta_{l^a} in K(zeta_l)."""

    ell: int
    t: int
    m: int

    def __post_init__(self):
        if self.t < 1 or self.m < 1:
            raise DomainError("need t >= 1 and m >= 1")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def schur_data(K: FieldInput, ell: int) -> SchurData:
    """Cyclotomic data over Q or a real quadratic field.

    For odd l: t = (l-1)/2 exactly when K is Q(sqrt(l)) with l = 1 mod 4
    (the real quadratic subfield of Q(zeta_l)), else l-1; always m = 1.
    For l = 2: t = 2, and m = 3 for Q(sqrt(2)) (zeta_8 appears), else 2.
    """
    if not _is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    desc, D = resolve_field(K)
    if not desc.is_rationals and D is None:
        raise UnsupportedField(
            "degree >= 3 needs explicit SchurData from the caller")
    if ell == 2:
        m2 = 3 if D == 2 else 2
        return SchurData(2, 2, m2)
    if desc.is_rationals:
        return SchurData(ell, ell - 1, 1)
    t = (ell - 1) // 2 if (ell % 4 == 1 and D == ell) else ell - 1
    return SchurData(ell, t, 1)


def schur_M(K: FieldInput, n: int, ell: int,
            data: Optional[SchurData] = None) -> int:
    """Bound on the l-adic valuation of any finite subgroup of GL_n(O_K)."""
    if n < 1:
        raise DomainError("need n >= 1")
    sd = data if data is not None else schur_data(K, ell)
    t, m = sd.t, sd.m
    if ell == 2:
        total = n + m * (n // t)
    else:
        total = m * (n // t)
    q = ell * t
    while q <= n:
        total += n // q
        q *= ell
    return total


def schur_order_bound(K: FieldInput, n: int) -> int:
    """prod over primes l of l^{M_K(n, l)}; terms vanish once (l-1)/d > n."""
    desc, _ = resolve_field(K)
    out = 1
    for ell in primes_up_to(desc.degree * n + 1):
        M = schur_M(K, n, ell)
        if M:
            out *= ell ** M
    return out


@dataclass(frozen=True)
class CollinsFriedlandBound:
    value: Union[int, RealEnclosure]   # 6^{dn/2} (n+1)!; enclosure if dn odd
    advisory: bool                     # True below the proven range n > 71


def collins_friedland_bound(d: int, n: int, prec: int = 128) -> CollinsFriedlandBound:
    if d < 1 or n < 1:
        raise DomainError("need d >= 1 and n >= 1")
    advisory = n <= 71
    if (d * n) % 2 == 0:
        return CollinsFriedlandBound(6 ** (d * n // 2) * factorial(n + 1), advisory)
    val = RealEnclosure.exact(6, prec).pow_fraction(Fraction(d * n, 2)) \
        * factorial(n + 1)
    return CollinsFriedlandBound(val, advisory)


@dataclass(frozen=True)
class AutBoundCoeff:
    """Linear coefficient A_K in log M_n <= n log n + A_K n + o(n)."""

    A_K: RealEnclosure
    source: str   # collins_friedland | schur_generic | schur_sqrt2 | schur_sqrtp


LOG6_MINUS_1_SOURCE = "collins_friedland"


def _log6_minus_1(prec: int) -> RealEnclosure:
    return (RealEnclosure.exact(6, prec).log() - 1)


def coeff_A_K(K: Union[RealQuadraticField, FieldDescriptor],
              prec: int = 128, prec_ceiling: int = 512) -> AutBoundCoeff:
    """min(log 6 - 1, Schur branch value) with the min certified by interval
    disjointness, refining up to the ceiling; if still overlapping, the
    pointwise-min envelope is returned (a valid upper coefficient either way).
    """
    desc, D = resolve_field(K)
    if desc.degree != 2 or D is None:
        raise UnsupportedField("A_K coefficients are defined for real quadratic K")
    p = prec
    while True:
        cf = _log6_minus_1(p)
        A = constant_A(p)
        if D == 2:
            schur = A + RealEnclosure.log2(p) * Fraction(1, 2)
            schur_src = "schur_sqrt2"
        elif D % 4 == 1 and _is_prime(D):
            plp = RealEnclosure.exact(D, p).log() * Fraction(D, (D - 1) ** 2)
            schur = A + plp
            schur_src = "schur_sqrtp"
        else:
            schur = A
            schur_src = "schur_generic"
        if schur.certainly_lt(cf):
            return AutBoundCoeff(schur, schur_src)
        if cf.certainly_lt(schur):
            return AutBoundCoeff(cf, LOG6_MINUS_1_SOURCE)
        if p >= prec_ceiling:
            env = schur.min_with(cf)
            src = schur_src if schur.hi <= cf.hi else LOG6_MINUS_1_SOURCE
            return AutBoundCoeff(env, src)
        p = min(2 * p, prec_ceiling)
