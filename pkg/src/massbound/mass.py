"""Siegel mass of the standard lattice over totally real fields.

Exact evaluation (rational output) is available for the rationals and real
quadratic fields at rank n >= 3; everything else is produced as a rigorous
enclosure.  The building blocks are the parity factor sigma_n, the dyadic
correction factors xi(n, p), the half-integer Gamma product, and Dedekind
zeta values factored through quadratic L-functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith import (ExactFactored, gamma_half_product, glaisher_enclosure,
                    l_value_enclosure, l_value_exact, zeta_enclosure,
                    zeta_even_exact)
from .characters import character
from .enclosure import RealEnclosure, enclosure_prod
from .errors import (DomainError, ParityInternal, ResidueRequired,
                     UnsupportedField)
from .fields import (DyadicPrime, FieldDescriptor, RealQuadraticField,
                     classify_dyadic)

FieldInput = Union[FieldDescriptor, RealQuadraticField]


def resolve_field(K: FieldInput) -> tuple[FieldDescriptor, Optional[int]]:
    """(descriptor, squarefree D or None).  D is None for Q and for generic
    descriptors of degree >= 3."""
    if isinstance(K, RealQuadraticField):
        return K.descriptor, K.D
    if isinstance(K, FieldDescriptor):
        return K, None
    raise TypeError(f"not a field input: {K!r}")


# ---------------------------------------------------------------------------
# the dyadic character psi


@dataclass(frozen=True)
class DyadicPsi:
    value: int

    def __post_init__(self):
        if self.value not in (-1, 0, 1):
            raise DomainError("psi takes values in {-1, 0, +1}")


def _v2(n: int) -> int:
    if n == 0:
        return 1 << 30
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def _psi_rationals() -> int:
    # squares mod 8 are {0, 1, 4}, squares mod 4 are {0, 1}; -1 is in neither
    if any((x * x + 1) % 8 == 0 for x in range(8)):
        return 1
    if any((x * x + 1) % 4 == 0 for x in range(4)):
        return -1
    return 0


def _psi_inert(D: int) -> int:
    # O = Z[w], w = (1+sqrt(D))/2, w^2 = w + c; the dyadic prime is (2),
    # so p^3 = (8) and p^2 = (4) and plain modular arithmetic suffices.
    c = (D - 1) // 4

    def solvable(mod: int) -> bool:
        for a in range(mod):
            for b in range(mod):
                za = (a * a + b * b * c + 1) % mod
                zb = (2 * a * b + b * b) % mod
                if za == 0 and zb == 0:
                    return True
        return False

    if solvable(8):
        return 1
    if solvable(4):
        return -1
    return 0


def _psi_split(D: int) -> int:
    # completion at either split prime is Z_2; send w to a Hensel root of
    # x^2 - x - c mod 8 and the congruence collapses to the rational case
    c = (D - 1) // 4
    roots = [w for w in range(8) if (w * w - w - c) % 8 == 0]
    if not roots:
        raise ParityInternal(f"no dyadic Hensel root for D={D}")
    if any((x * x + 1) % 8 == 0 for x in range(8)):
        return 1
    if any((x * x + 1) % 4 == 0 for x in range(4)):
        return -1
    return 0


def _psi_ramified(D: int) -> int:
    # O = Z[sqrt(D)], p^2 = (2); need x^2 = -1 mod p^5 (resp. p^4).
    # Enumerate x mod (8) = p^6 and use exact lifts: for z = a + b sqrt(D)
    # the valuation is v_p(z) = v_2(a^2 - D b^2).
    def solvable(vreq: int) -> bool:
        for a in range(8):
            for b in range(8):
                za = a * a + D * b * b + 1
                zb = 2 * a * b
                if _v2(za * za - D * zb * zb) >= vreq:
                    return True
        return False

    if solvable(5):
        return 1
    if solvable(4):
        return -1
    return 0


def psi_dyadic(K: FieldInput, prime: DyadicPrime) -> DyadicPsi:
    """psi(p) for a dyadic prime: +1, -1 or 0 according to whether -1 is a
    square mod p^(2e+1), only mod p^(2e), or neither; by direct enumeration
    in the finite quotient."""
    desc, D = resolve_field(K)
    if prime not in desc.dyadic:
        raise DomainError(f"{prime} is not a dyadic prime of this field")
    if desc.is_rationals:
        return DyadicPsi(_psi_rationals())
    if D is None:
        raise UnsupportedField(
            "psi for degree >= 3 descriptors must be supplied by the caller")
    kind = classify_dyadic(D)
    if kind == "inert":
        return DyadicPsi(_psi_inert(D))
    if kind == "split":
        return DyadicPsi(_psi_split(D))
    return DyadicPsi(_psi_ramified(D))


def _psi_values(K: FieldInput, psi: Optional[Sequence[int]]) -> list[int]:
    desc, D = resolve_field(K)
    if psi is not None:
        vals = [DyadicPsi(v).value for v in psi]
        if len(vals) != len(desc.dyadic):
            raise DomainError("one psi value per dyadic prime is required")
        return vals
    if desc.is_rationals or D is not None:
        return [psi_dyadic(K, p).value for p in desc.dyadic]
    raise UnsupportedField(
        "descriptors of degree >= 3 need explicit psi values")


# ---------------------------------------------------------------------------
# xi factors


def xi_factor(n: int, prime: DyadicPrime) -> Fraction:
    """Exact dyadic correction factor xi(n, p) from (e, f)."""
    if n < 2:
        raise DomainError("need n >= 2")
    e, f = prime.e, prime.f
    N = prime.norm
    expo = (1 - n) * (e // 2) - e
    base = Fraction(N) ** expo
    if e % 2 == 0:
        branch = Fraction(1)
    elif n % 4 == 2:
        branch = Fraction(1, 2)
    else:
        sign = (-1) ** (f * ((n + 1) // 4))
        branch = Fraction(1, 2) * (1 + Fraction(sign, N ** ((n - 1) // 2)))
    return base * branch


# ---------------------------------------------------------------------------
# Dedekind zeta of Q and real quadratic fields at even integers


def zeta_K_exact(K: FieldInput, s: int) -> ExactFactored:
    desc, D = resolve_field(K)
    if desc.is_rationals:
        return zeta_even_exact(s)
    if D is None:
        raise UnsupportedField("no exact Dedekind zeta beyond degree 2")
    chi = character(desc.discriminant)
    return zeta_even_exact(s) * l_value_exact(s, chi)


def zeta_K_enclosure(K: FieldInput, s: int, prec: int) -> RealEnclosure:
    """Enclosure of zeta_K(s) at even s >= 2; for degree >= 3 descriptors
    only the bracket [1, zeta(s)^d] is derivable from the descriptor."""
    desc, D = resolve_field(K)
    if desc.is_rationals:
        return zeta_enclosure(s, prec)
    if D is not None:
        chi = character(desc.discriminant)
        return zeta_enclosure(s, prec) * l_value_enclosure(s, chi, prec)
    upper = zeta_enclosure(s, prec).pow_int(desc.degree)
    return RealEnclosure(RealEnclosure.exact(1, prec).lo, upper.hi, prec)


def zeta_product_finite(K: FieldInput, upto: int, prec: int) -> RealEnclosure:
    """prod_{i=1}^{upto} zeta_K(2i)."""
    return enclosure_prod(
        (zeta_K_enclosure(K, 2 * i, prec) for i in range(1, upto + 1)), prec)


def _product_tail_factor(degree: int, M: int, prec: int) -> RealEnclosure:
    # prod_{i>M} zeta_K(2i) lies in [1, exp(d * (1+1/M) * 4^-M / 3)] since
    # log zeta_K(2i) <= d (zeta(2i)-1) <= d 2^-2i (1 + 2/(2i-1)).
    b = Fraction(degree) * (1 + Fraction(1, M)) * Fraction(1, 3 * 4 ** M)
    hi = RealEnclosure.exact(b, prec).exp().hi
    return RealEnclosure(RealEnclosure.exact(1, prec).lo, hi, prec)


def zeta_product_infinite(K: FieldInput, prec: int) -> RealEnclosure:
    """prod_{i=1}^{infinity} zeta_K(2i), rigorous geometric tail."""
    desc, _ = resolve_field(K)
    M = max(8, prec // 2 + 4)
    return zeta_product_finite(K, M, prec) * _product_tail_factor(desc.degree, M, prec)


def rational_zeta_product_infinite(prec: int) -> RealEnclosure:
    """prod_{i=1}^{infinity} zeta(2i)  (~1.82101745)."""
    from .fields import rational_field
    return zeta_product_infinite(rational_field(), prec)


# ---------------------------------------------------------------------------
# sigma_n


def _odd_conductors(D: int) -> tuple[int, int]:
    """Conductors of the two odd characters splitting the biquadratic zeta."""
    mD = -D
    d3 = mD if mD % 4 == 1 else 4 * mD
    return -4, d3


def sigma_exact(K: FieldInput, n: int) -> ExactFactored:
    desc, D = resolve_field(K)
    if n == 2:
        raise ResidueRequired("sigma_2 needs zeta residues; only bounds exist")
    if n < 3:
        raise DomainError("need n >= 3")
    if n % 2 == 1:
        return ExactFactored(Fraction(1))
    s = n // 2
    if n % 4 == 0:
        out = zeta_K_exact(K, s)
        for p in desc.dyadic:
            out = out * (1 - Fraction(1, p.norm ** s))
        return out
    # n = 2 mod 4, n > 2: L(s, psi, K) with odd s
    if desc.is_rationals:
        out = l_value_exact(s, character(-4))
    elif D is not None:
        c1, c2 = _odd_conductors(D)
        chi1, chi2 = character(c1), character(c2)
        if not (chi1.parity_matches(s) and chi2.parity_matches(s)):
            raise ParityInternal(
                f"odd-character factorisation parity failed at s={s}")
        out = l_value_exact(s, chi1) * l_value_exact(s, chi2)
    else:
        raise UnsupportedField("no exact sigma beyond degree 2")
    psis = _psi_values(K, None)
    for p, psv in zip(desc.dyadic, psis):
        out = out * (1 - Fraction(psv, p.norm ** s))
    return out


def sigma_enclosure(K: FieldInput, n: int, prec: int,
                    psi: Optional[Sequence[int]] = None) -> RealEnclosure:
    desc, D = resolve_field(K)
    if n == 2:
        raise ResidueRequired("sigma_2 needs zeta residues; only bounds exist")
    if n % 2 == 1:
        return RealEnclosure.exact(1, prec)
    s = n // 2
    d = desc.degree
    if desc.is_rationals or D is not None:
        if n % 4 == 0:
            out = zeta_K_enclosure(K, s, prec)
            for p in desc.dyadic:
                out = out * (1 - Fraction(1, p.norm ** s))
            return out
        if desc.is_rationals:
            out = l_value_enclosure(s, character(-4), prec)
        else:
            c1, c2 = _odd_conductors(D)
            out = (l_value_enclosure(s, character(c1), prec)
                   * l_value_enclosure(s, character(c2), prec))
        for p, psv in zip(desc.dyadic, _psi_values(K, psi)):
            out = out * (1 - Fraction(psv, p.norm ** s))
        return out
    # degree >= 3: bracket from 1/zeta^d <= L(s,psi,K), zeta_K <= zeta^d
    z = zeta_enclosure(s, prec)
    if n % 4 == 0:
        body = RealEnclosure(RealEnclosure.exact(1, prec).lo,
                             z.pow_int(d).hi, prec)
        for p in desc.dyadic:
            body = body * (1 - Fraction(1, p.norm ** s))
        return body
    body = RealEnclosure(z.pow_int(-d).lo, z.pow_int(2 * d).hi, prec)
    for p, psv in zip(desc.dyadic, _psi_values(K, psi)):
        body = body * (1 - Fraction(psv, p.norm ** s))
    return body


# ---------------------------------------------------------------------------
# the mass formula


@dataclass(frozen=True)
class MassBreakdown:
    """Itemised mass evaluation; `total` is a Fraction on the exact path and
    a RealEnclosure on the enclosure path."""

    field: FieldDescriptor
    n: int
    mode: str
    sigma: object
    gamma_factor: ExactFactored
    disc_power: Fraction
    xi: tuple[Fraction, ...]
    psi: tuple[int, ...]
    zeta_product: object
    total: object

    def total_enclosure(self, prec: int) -> RealEnclosure:
        if isinstance(self.total, RealEnclosure):
            return self.total.refine(prec)
        return RealEnclosure.exact(self.total, prec)


def _gamma_part(n: int) -> ExactFactored:
    """F_n = 2 * prod Gamma(i/2) / pi^{n(n+1)/4} as an exact value."""
    g = gamma_half_product(n)
    return ExactFactored(2 * g.coeff, g.pi_half - n * (n + 1) // 2, g.sqrt_arg)


def _disc_power_exact(disc: int, n: int) -> ExactFactored:
    m = n * (n - 1) // 2  # exponent of sqrt(disc)
    return ExactFactored(Fraction(disc) ** (m // 2),
                         sqrt_arg=Fraction(disc ** (m % 2)))


def korner_mass(K: FieldInput, n: int, mode: str = "exact",
                prec: int = 128,
                psi: Optional[Sequence[int]] = None) -> MassBreakdown:
    """Mass of the genus of the standard rank-n lattice over K.

    Exact mode needs degree <= 2 and n >= 3 and returns a positive rational
    (every pi and sqrt factor provably cancels).  Enclosure mode works for
    quadratic inputs at any n >= 3 and for degree >= 3 descriptors when psi
    values are supplied; there the zeta factors are only bracketed, so the
    interval is wide but still rigorous.
    """
    desc, D = resolve_field(K)
    if n == 2:
        raise ResidueRequired("rank 2 mass needs residues; see the n=2 bounds")
    if n < 3:
        raise DomainError("need n >= 3")
    if mode not in ("exact", "enclosure"):
        raise DomainError(f"unknown mode {mode!r}")

    xi = tuple(xi_factor(n, p) for p in desc.dyadic)
    gamma_factor = _gamma_part(n)
    disc_power = Fraction(n * (n - 1), 4)
    d = desc.degree
    upto = (n - 1) // 2

    if mode == "exact":
        if not (desc.is_rationals or D is not None):
            raise UnsupportedField("exact mass needs degree <= 2")
        sigma = sigma_exact(K, n)
        psis = tuple(_psi_values(K, None))
        zp = ExactFactored(Fraction(1))
        for i in range(1, upto + 1):
            zp = zp * zeta_K_exact(K, 2 * i)
        total = sigma * gamma_factor.pow_int(d) * _disc_power_exact(
            desc.discriminant, n)
        for x in xi:
            total = total * x
        total = total * zp
        if not total.is_rational():
            raise ParityInternal(
                f"mass did not collapse to a rational: {total!r}")
        value = total.as_fraction()
        if value <= 0:
            raise ParityInternal("mass must be positive")
        return MassBreakdown(desc, n, mode, sigma, gamma_factor, disc_power,
                             xi, psis, zp, value)

    need_psi = n % 4 == 2 and not desc.is_rationals and D is None
    if need_psi and psi is None:
        raise UnsupportedField(
            "enclosure mass at n = 2 mod 4 for degree >= 3 needs psi values")
    sigma = sigma_enclosure(K, n, prec, psi)
    if desc.is_rationals or D is not None:
        psis = tuple(_psi_values(K, psi))
    else:
        psis = tuple(psi) if psi is not None else ()
    zp = zeta_product_finite(K, upto, prec)
    total = sigma * gamma_factor.pow_int(d).to_enclosure(prec)
    total = total * RealEnclosure.exact(desc.discriminant, prec).pow_fraction(disc_power)
    for x in xi:
        total = total * x
    total = total * zp
    return MassBreakdown(desc, n, mode, sigma, gamma_factor, disc_power,
                         xi, psis, zp, total)


def log_korner_mass(K: FieldInput, n: int, prec: int = 128,
                    psi: Optional[Sequence[int]] = None) -> RealEnclosure:
    return korner_mass(K, n, "enclosure", prec, psi).total.log()


# ---------------------------------------------------------------------------
# rank-n mass bounds


def _check_n(n: int):
    if n < 3:
        raise DomainError("bounds need n >= 3")


def mass_lower_In(K: FieldInput, n: int, prec: int = 128) -> RealEnclosure:
    """Lower bound Delta^{n(n-1)/4} (F_n / (2^{(n+5)/2} (2 zeta(n/2))^{delta}))^d."""
    _check_n(n)
    desc, _ = resolve_field(K)
    den = RealEnclosure.exact(2, prec).pow_fraction(Fraction(n + 5, 2))
    if n % 2 == 0:
        den = den * (zeta_enclosure(Fraction(n, 2), prec) * 2)
    body = _gamma_part(n).to_enclosure(prec) / den
    return _disc_pow(desc, n, prec) * body.pow_int(desc.degree)


def mass_upper_In(K: FieldInput, n: int, prec: int = 128) -> RealEnclosure:
    """Upper bound Delta^{n(n-1)/4} (3 F_n zeta(n/2)^2 / 2 * prod zeta(2i))^d."""
    _check_n(n)
    desc, _ = resolve_field(K)
    z = zeta_enclosure(Fraction(n, 2), prec)
    body = (_gamma_part(n).to_enclosure(prec) * 3 * z.pow_int(2)
            * Fraction(1, 2) * rational_zeta_product_infinite(prec))
    return _disc_pow(desc, n, prec) * body.pow_int(desc.degree)


def _disc_pow(desc: FieldDescriptor, n: int, prec: int) -> RealEnclosure:
    return RealEnclosure.exact(desc.discriminant, prec).pow_fraction(
        Fraction(n * (n - 1), 4))


def mass_upper_unimodular(K: FieldInput, n: int, prec: int = 128,
                          psi: Optional[Sequence[int]] = None) -> RealEnclosure:
    """Upper bound for the mass of any unimodular rank-n lattice over K:
    sigma_n (2^30 prod Gamma(i/2) / pi^{n(n+1)/4})^d Delta^{n(n-1)/4}
    prod zeta_K(2i)."""
    _check_n(n)
    desc, D = resolve_field(K)
    d = desc.degree
    if n % 2 == 1:
        sig = RealEnclosure.exact(1, prec)
    elif desc.is_rationals or D is not None:
        sig = sigma_enclosure(K, n, prec, psi)
    else:
        # generic upper branch (3 zeta(n/2)^2 / 2)^d
        z = zeta_enclosure(Fraction(n, 2), prec)
        upper = (z.pow_int(2) * Fraction(3, 2)).pow_int(d)
        sig = RealEnclosure(RealEnclosure.exact(0, prec).lo, upper.hi, prec)
    g = gamma_half_product(n)
    body = ExactFactored(g.coeff * 2 ** 30,
                         g.pi_half - n * (n + 1) // 2, g.sqrt_arg)
    zp = zeta_product_finite(K, (n - 1) // 2, prec)
    return (sig * body.pow_int(d).to_enclosure(prec)
            * _disc_pow(desc, n, prec) * zp)


# ---------------------------------------------------------------------------
# asymptotics


def mass_asymptotic_CK(K: FieldInput, prec: int = 128) -> RealEnclosure:
    """The constant C_K in the large-n mass asymptotic:
    2^{-5d/4} e^{d/24} A_GK^{-d/2} * prod_p N^{floor(e/2)-e} / 2^{[e odd]}
    * prod_{i>=1} zeta_K(2i), with A_GK the Glaisher-Kinkelin constant."""
    desc, _ = resolve_field(K)
    d = desc.degree
    out = RealEnclosure.exact(2, prec).pow_fraction(Fraction(-5 * d, 4))
    out = out * RealEnclosure.exact(Fraction(d, 24), prec).exp()
    out = out * glaisher_enclosure(prec).pow_fraction(Fraction(-d, 2))
    dyadic = Fraction(1)
    for p in desc.dyadic:
        dyadic *= Fraction(p.norm) ** (p.e // 2 - p.e)
        if p.e % 2 == 1:
            dyadic /= 2
    return out * dyadic * zeta_product_infinite(K, prec)


def log_mass_expansion(K: FieldInput, n: int, prec: int = 128) -> RealEnclosure:
    """First four main terms of log mass(I_n):
    (d/4) n^2 log n + P_K n^2 - (d/4) n log n + (R_K - S_2) n, where
    P_K = (2 log Delta - 2d log(2 pi) - 3d)/8,
    R_K = (d log(8 pi) + d - log Delta)/4 and
    S_2 = sum over dyadic primes of floor(e/2) log N(p)."""
    _check_n(n)
    desc, _ = resolve_field(K)
    d = desc.degree
    logD = RealEnclosure.exact(desc.discriminant, prec).log()
    log2pi = (RealEnclosure.pi(prec) * 2).log()
    log8pi = (RealEnclosure.pi(prec) * 8).log()
    P = (logD * 2 - log2pi * (2 * d) - 3 * d) * Fraction(1, 8)
    R = (log8pi * d + d - logD) * Fraction(1, 4)
    S2 = RealEnclosure.log2(prec) * sum((p.e // 2) * p.f for p in desc.dyadic)
    logn = RealEnclosure.exact(n, prec).log()
    return (logn * Fraction(d * n * n, 4) + P * (n * n)
            - logn * Fraction(d * n, 4) + (R - S2) * n)


def expansion_coefficients(K: FieldInput, prec: int = 128
                           ) -> dict[str, RealEnclosure]:
    """The P_K and R_K coefficients of the expansion, for diagnostics."""
    desc, _ = resolve_field(K)
    d = desc.degree
    logD = RealEnclosure.exact(desc.discriminant, prec).log()
    log2pi = (RealEnclosure.pi(prec) * 2).log()
    log8pi = (RealEnclosure.pi(prec) * 8).log()
    return {
        "P_K": (logD * 2 - log2pi * (2 * d) - 3 * d) * Fraction(1, 8),
        "R_K": (log8pi * d + d - logD) * Fraction(1, 4),
    }
