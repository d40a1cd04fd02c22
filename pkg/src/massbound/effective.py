"""Effective degree and discriminant bounds.

Each function evaluates one closed-form bound: the Odlyzko discriminant
floor, the per-degree mass base M_n, the degree/discriminant bounds implied
by a small minimal rank or criterion set, the rank-2 residue machinery, and
the short-gap bounds.  Degree bounds floor the upper endpoint of their
enclosure; discriminant bounds report the raw upper endpoint, which is the
sound direction for each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Union

from .arith import zeta_enclosure
from .enclosure import RealEnclosure
from .errors import DenominatorNonpositive, DomainError, ResidueRequired
from .fields import FieldDescriptor
from .genera import genera_bound
from .groupbounds import collins_friedland_bound, schur_order_bound
from .mass import (FieldInput, _gamma_part, korner_mass, mass_upper_unimodular,
                   resolve_field)
from .transforms import rank_bounds_AB

STARK_LOWER = Fraction(14480, 10 ** 7)      # 0.0014480
SIGMA2_LOWER = Fraction(181, 10 ** 6)       # 0.000181
ODLYZKO_BASE = Fraction(601, 10)            # 60.1

FORMULA_IDS = ("maindbound", "maindiscbound", "maindiscbound2",
               "dboundmass", "discboundmass", "discbound2")


def odlyzko_floor(d: int, prec: int = 128) -> RealEnclosure:
    """60.1^d e^{-254}, the totally real discriminant floor."""
    if d < 1:
        raise DomainError("need d >= 1")
    base = RealEnclosure.exact(ODLYZKO_BASE, prec).pow_int(d)
    return base * RealEnclosure.exact(-254, prec).exp()


def M_n(n: int, prec: int = 128) -> RealEnclosure:
    """Per-degree mass base F_n 60.1^{n(n-1)/4} / (2^{(n+5)/2} (2 zeta(n/2))^delta).

    Finiteness of the degree bounds rests on M_n > 1 for n >= 3.
    """
    if n < 3:
        raise DomainError("need n >= 3")
    num = (_gamma_part(n).to_enclosure(prec)
           * RealEnclosure.exact(ODLYZKO_BASE, prec).pow_fraction(
               Fraction(n * (n - 1), 4)))
    den = RealEnclosure.exact(2, prec).pow_fraction(Fraction(n + 5, 2))
    if n % 2 == 0:
        den = den * (zeta_enclosure(Fraction(n, 2), prec) * 2)
    return num / den


@dataclass(frozen=True)
class EffectiveBoundReport:
    n: int
    C: Fraction
    degree_bound: int                       # 0 means "no field satisfies it"
    disc_bound: Optional[RealEnclosure]     # at the largest admissible degree
    disc_bounds_by_degree: tuple[tuple[int, RealEnclosure], ...]
    formula_id: str


def _degree_bound_from(num: RealEnclosure, den: RealEnclosure) -> int:
    if not den.is_positive():
        raise DenominatorNonpositive(
            "mass base not certified > 1; cannot bound the degree")
    raw = num / den
    import gmpy2
    with gmpy2.context(precision=raw.prec, round=gmpy2.RoundUp):
        hi = gmpy2.floor(raw.hi)
    d = int(hi)
    return max(d, 0)


def finite_bounds(n: int, C, prec: int = 128,
                  max_degrees: int = 16) -> EffectiveBoundReport:
    """Degree and discriminant bounds for fields with minimal n-universal
    rank (or criterion set size) below C, n >= 3.

    degree:  d <= (4n log C + 8 log n! + 254 n(n-1) - 4 log 2) / log M_n
    disc:    Delta <= (C^n (n!)^2 pi^{dn(n+1)/4} 2^{d(n+5)/2}
                       (2 zeta(n/2))^{d delta} / (2 (2 prod Gamma(i/2))^d)
                      )^{4/(n(n-1))}, reported per admissible degree d.
    """
    C = Fraction(C)
    if n < 3 or C <= 0:
        raise DomainError("need n >= 3 and C > 0")
    logC = RealEnclosure.exact(C, prec).log()
    num = (logC * (4 * n)
           + RealEnclosure.exact(factorial(n), prec).log() * 8
           + 254 * n * (n - 1)
           - RealEnclosure.log2(prec) * 4)
    den = M_n(n, prec).log()
    dbound = _degree_bound_from(num, den)

    fn_inv_base = _fn_over_denominator(n, prec)   # F_n / (2^{(n+5)/2} (2 zeta)^d)
    head = RealEnclosure.exact(C ** n * factorial(n) ** 2, prec) * Fraction(1, 2)
    per_degree = []
    for d in range(1, max(1, min(dbound, max_degrees)) + 1):
        body = head / fn_inv_base.pow_int(d)
        per_degree.append((d, body.pow_fraction(Fraction(4, n * (n - 1)))))
    return EffectiveBoundReport(
        n=n, C=C, degree_bound=dbound,
        disc_bound=per_degree[-1][1] if dbound >= 1 else None,
        disc_bounds_by_degree=tuple(per_degree),
        formula_id="maindbound",
    )


def _fn_over_denominator(n: int, prec: int) -> RealEnclosure:
    den = RealEnclosure.exact(2, prec).pow_fraction(Fraction(n + 5, 2))
    if n % 2 == 0:
        den = den * (zeta_enclosure(Fraction(n, 2), prec) * 2)
    return _gamma_part(n).to_enclosure(prec) / den


def mass_bounds_to_field_bounds(C, n: int, prec: int = 128,
                                max_degrees: int = 16) -> EffectiveBoundReport:
    """Bounds on (d, Delta) for fields whose standard-lattice mass is < C:
    d <= log(C e^{127 n(n-1)/2}) / log M_n and
    Delta <= (C / (F_n/(2^{(n+5)/2} (2 zeta)^delta))^d)^{4/(n(n-1))}.
    """
    C = Fraction(C)
    if n < 3 or C <= 0:
        raise DomainError("need n >= 3 and C > 0")
    num = RealEnclosure.exact(C, prec).log() + Fraction(127 * n * (n - 1), 2)
    den = M_n(n, prec).log()
    dbound = _degree_bound_from(num, den)
    base = _fn_over_denominator(n, prec)
    per_degree = []
    for d in range(1, max(1, min(dbound, max_degrees)) + 1):
        body = RealEnclosure.exact(C, prec) / base.pow_int(d)
        per_degree.append((d, body.pow_fraction(Fraction(4, n * (n - 1)))))
    return EffectiveBoundReport(
        n=n, C=C, degree_bound=dbound,
        disc_bound=per_degree[min(dbound, max_degrees) - 1][1] if dbound >= 1 else None,
        disc_bounds_by_degree=tuple(per_degree),
        formula_id="dboundmass",
    )


def stark_louboutin(d: int, disc: int, prec: int = 128
                    ) -> tuple[RealEnclosure, RealEnclosure]:
    """Residue bounds 0.0014480/(d d! Delta^{1/d}) < Res < (e log Delta / (2(d-1)))^{d-1}."""
    if d < 2:
        raise DomainError("need degree >= 2")
    if disc < 3:
        raise DomainError("need discriminant >= 3")
    root = RealEnclosure.exact(disc, prec).pow_fraction(Fraction(1, d))
    lower = RealEnclosure.exact(STARK_LOWER, prec) / (d * factorial(d) * root)
    e = RealEnclosure.exact(1, prec).exp()
    upper = (e * RealEnclosure.exact(disc, prec).log()
             / (2 * (d - 1))).pow_int(d - 1)
    return lower, upper


def mass2_lower(K: FieldInput, prec: int = 128) -> RealEnclosure:
    """Lower bound for the rank-2 mass:
    Delta^{1/2} (2 Gamma(1/2) Gamma(1) / (pi^{3/2} 2^{7/2}))^d
    ((d-1)/(e log Delta))^{d-1} * 0.000181/(d (2d)! Delta^{1/d}).
    """
    desc, _ = resolve_field(K)
    d, disc = desc.degree, desc.discriminant
    if d < 2:
        raise DomainError("the rank-2 lower bound needs degree >= 2")
    pi = RealEnclosure.pi(prec)
    # 2 Gamma(1/2) Gamma(1) / (pi^{3/2} 2^{7/2}) = 2^{-5/2} / pi
    body = (RealEnclosure.exact(2, prec).pow_fraction(Fraction(-5, 2)) / pi) \
        .pow_int(d)
    logD = RealEnclosure.exact(disc, prec).log()
    e = RealEnclosure.exact(1, prec).exp()
    powfac = ((d - 1) / (e * logD)).pow_int(d - 1) if d > 1 else \
        RealEnclosure.exact(1, prec)
    tailfac = (RealEnclosure.exact(SIGMA2_LOWER, prec)
               / (d * factorial(2 * d)
                  * RealEnclosure.exact(disc, prec).pow_fraction(Fraction(1, d))))
    return (RealEnclosure.exact(disc, prec).sqrt() * body * powfac * tailfac)


def disc_bound_n2(C, d: int, prec: int = 128) -> RealEnclosure:
    """Discriminant bound for degree d >= 3 fields with rank-2 mass < C:
    max(exp((12(d-1))^2),
        (2C^2 (pi 2^{5/2})^d d (2d)! / (0.000181 ((d-1)/e)^{d-1}))^{12d/(5d-12)}).
    """
    C = Fraction(C)
    if d < 3:
        raise DomainError("the exponent 12d/(5d-12) needs d >= 3")
    if C <= 0:
        raise DomainError("need C > 0")
    first = RealEnclosure.exact((12 * (d - 1)) ** 2, prec).exp()
    pi = RealEnclosure.pi(prec)
    e = RealEnclosure.exact(1, prec).exp()
    num = (RealEnclosure.exact(2 * C ** 2, prec)
           * (pi * RealEnclosure.exact(2, prec).pow_fraction(Fraction(5, 2))).pow_int(d)
           * d * factorial(2 * d))
    den = RealEnclosure.exact(SIGMA2_LOWER, prec) * ((d - 1) / e).pow_int(d - 1)
    second = (num / den).pow_fraction(Fraction(12 * d, 5 * d - 12))
    return first.max_with(second)


def pfeuffer_general_lower(d: int, disc: int, n: int,
                           norm_dL: int = 1, norm_sL: int = 1,
                           prec: int = 128) -> RealEnclosure:
    """Pfeuffer's mass lower bound for an arbitrary rank-n lattice with
    user-supplied discriminant/scale ideal norms:
    (prod Gamma(i/2)/pi^{n(n+1)/4})^d Delta^{n(n-1)/4}
    (N(dL)/N(sL)^n)^{1/26} / f(n)^d, where f(3) = 4*8^(1/26),
    f(4) = 9*2^(1/13) and f(n) = 2^{n-1} for n >= 5.
    """
    if n < 3:
        raise DomainError("need n >= 3")
    if d < 1 or disc < 1 or norm_dL < 1 or norm_sL < 1:
        raise DomainError("degrees and ideal norms must be positive")
    gp = _gamma_part(n)                       # 2 prod Gamma / pi^{...}
    body = (gp * Fraction(1, 2)).pow_int(d).to_enclosure(prec)
    disc_part = RealEnclosure.exact(disc, prec).pow_fraction(
        Fraction(n * (n - 1), 4))
    ideal_part = RealEnclosure.exact(
        Fraction(norm_dL, norm_sL ** n), prec).pow_fraction(Fraction(1, 26))
    if n == 3:
        f = RealEnclosure.exact(8, prec).pow_fraction(Fraction(1, 26)) * 4
    elif n == 4:
        f = RealEnclosure.exact(2, prec).pow_fraction(Fraction(1, 13)) * 9
    else:
        f = RealEnclosure.exact(2 ** (n - 1), prec)
    return body * disc_part * ideal_part / f.pow_int(d)


def shortgap_lower(K: FieldInput, which: str, prec: int = 128) -> RealEnclosure:
    """Lower bounds for minimal-rank gaps over four consecutive ranks:
    (mass_2 lower / 2)^(1/2) for even rank, (mass_3 / 18)^(1/3) on the
    2 mod 6 branch (exact mass when the degree allows it)."""
    desc, D = resolve_field(K)
    if which == "n_even":
        if desc.degree < 2:
            raise ResidueRequired(
                "the even branch uses the rank-2 lower bound, needing degree >= 2")
        return (mass2_lower(K, prec) * Fraction(1, 2)).pow_fraction(Fraction(1, 2))
    if which == "n_2mod6":
        if desc.is_rationals or D is not None:
            m3 = RealEnclosure.exact(korner_mass(K, 3).total, prec)
        else:
            m3 = korner_mass(K, 3, "enclosure", prec).total
        return (m3 * Fraction(1, 18)).pow_fraction(Fraction(1, 3))
    raise DomainError(f"unknown branch {which!r}; use n_even or n_2mod6")


@dataclass(frozen=True)
class ClassCountReport:
    field: FieldDescriptor
    n: int
    class_number_lower: RealEnclosure       # 2 * mass(I_n)
    u_lower: RealEnclosure
    u_upper: RealEnclosure
    U_upper: RealEnclosure
    aut_bound_source: str                   # schur | collins_friedland
    U_upper_source: str                     # proxy_n_plus_3 | rank_bound_B


def _aut_bound_min(K: FieldInput, n: int, prec: int
                   ) -> tuple[RealEnclosure, str]:
    desc, _ = resolve_field(K)
    schur = RealEnclosure.exact(schur_order_bound(K, n), prec)
    if n > 71:
        cf = collins_friedland_bound(desc.degree, n, prec).value
        cf_enc = cf if isinstance(cf, RealEnclosure) else \
            RealEnclosure.exact(cf, prec)
        if cf_enc.hi < schur.lo:
            return cf_enc, "collins_friedland"
    return schur, "schur"


def class_and_U_report(K: FieldInput, n: int, prec: int = 128,
                       i_counts: Optional[Sequence[int]] = None
                       ) -> ClassCountReport:
    """Class-number and unimodular-count bounds at rank n.

    cl(I_n) >= 2 mass(I_n); u(n) is sandwiched between that and
    (genera bound) * (mass upper bound) * (automorphism order bound); the
    minimal-rank upper bound is (n+3)^2 u_upper(n+3), or the exact relaxed
    rank bound B(n) when true indecomposable counts are supplied.
    """
    if n < 3:
        raise DomainError("need n >= 3")
    desc, D = resolve_field(K)
    if desc.is_rationals or D is not None:
        mass_n = RealEnclosure.exact(korner_mass(K, n).total, prec)
    else:
        mass_n = korner_mass(K, n, "enclosure", prec).total
    cl_lower = mass_n * 2
    gb = genera_bound(K).product

    def u_upper_at(m: int) -> tuple[RealEnclosure, str]:
        aut, src = _aut_bound_min(K, m, prec)
        return (mass_upper_unimodular(K, m, prec) * gb * aut), src

    u_up, aut_src = u_upper_at(n)
    if i_counts is not None:
        _, B = rank_bounds_AB(i_counts, n)
        U_up = RealEnclosure.exact(B, prec)
        u_src = "rank_bound_B"
    else:
        up3, _ = u_upper_at(n + 3)
        U_up = up3 * (n + 3) ** 2
        u_src = "proxy_n_plus_3"
    return ClassCountReport(
        field=desc, n=n,
        class_number_lower=cl_lower,
        u_lower=cl_lower,
        u_upper=u_up,
        U_upper=U_up,
        aut_bound_source=aut_src,
        U_upper_source=u_src,
    )
