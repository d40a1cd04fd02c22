"""Rigorous checker for the degree-2 growth condition

    (log Delta - 2 log(2 pi) - 2) / 2  >  A_K + [2 ramified] log 2

and the scan that classifies every real quadratic field below a bound.
Strict inequalities are decided only by disjoint enclosures, refining the
working precision until a verdict is reached or the ceiling is hit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .config import DEFAULT_CEILING, DEFAULT_PREC
from .enclosure import RealEnclosure
from .errors import OutOfRange
from .fields import RealQuadraticField, classify_dyadic, make_quadratic, squarefree_range
from .groupbounds import coeff_A_K

HOLDS = "holds"
FAILS = "fails"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class WrightVerdict:
    D: int
    disc: int
    dyadic_class: str
    lhs: Optional[RealEnclosure]
    rhs: Optional[RealEnclosure]
    holds: str
    resolved_at_bits: int
    A_K_source: str
    by_threshold: bool = False


def growth_threshold(prec: int = DEFAULT_PREC) -> RealEnclosure:
    """576 pi^2, the discriminant above which the condition holds outright."""
    return RealEnclosure.pi(prec).pow_int(2) * 576


def _lhs(disc: int, prec: int) -> RealEnclosure:
    from fractions import Fraction
    logD = RealEnclosure.exact(disc, prec).log()
    log2pi = (RealEnclosure.pi(prec) * 2).log()
    return (logD - log2pi * 2 - 2) * Fraction(1, 2)


def wright_condition(K: RealQuadraticField, prec: int = DEFAULT_PREC,
                     prec_ceiling: int = DEFAULT_CEILING) -> WrightVerdict:
    D = K.D
    disc = K.discriminant
    kind = classify_dyadic(D)
    p = prec
    while True:
        coeff = coeff_A_K(K, p, prec_ceiling)
        lhs = _lhs(disc, p)
        rhs = coeff.A_K
        if kind == "ramified":
            rhs = rhs + RealEnclosure.log2(p)
        if lhs.certainly_gt(rhs):
            return WrightVerdict(D, disc, kind, lhs, rhs, HOLDS, p, coeff.source)
        if lhs.certainly_lt(rhs):
            return WrightVerdict(D, disc, kind, lhs, rhs, FAILS, p, coeff.source)
        if p >= prec_ceiling:
            return WrightVerdict(D, disc, kind, lhs, rhs, UNRESOLVED, p,
                                 coeff.source)
        p = min(2 * p, prec_ceiling)


@dataclass(frozen=True)
class ScanReport:
    dmax: int
    verdicts: tuple[WrightVerdict, ...]
    exceptional: tuple[int, ...]          # failing D, ascending
    holding: tuple[int, ...]
    unresolved: tuple[int, ...]
    threshold_count: int
    audit_mismatches: tuple[int, ...] = field(default=())

    @property
    def exceptional_count(self) -> int:
        return len(self.exceptional)


def _verdict_for(D: int, prec: int, prec_ceiling: int,
                 threshold: RealEnclosure, audit: bool) -> WrightVerdict:
    K = make_quadratic(D)
    disc = K.discriminant
    if not audit and RealEnclosure.exact(disc, prec).certainly_gt(threshold):
        return WrightVerdict(D, disc, classify_dyadic(D), None, None, HOLDS,
                             prec, "threshold", by_threshold=True)
    return wright_condition(K, prec, prec_ceiling)


def wright_scan(dmax: int, prec: int = DEFAULT_PREC,
                prec_ceiling: int = DEFAULT_CEILING, jobs: int = 1,
                audit: int = 0) -> ScanReport:
    """Verdicts for every squarefree D in [2, dmax].

    Discriminants certified above 576 pi^2 are recorded as holds-by-threshold
    without evaluating the inequality.  With audit > 0, that many of the
    thresholded fields (evenly spaced) are also evaluated directly and any
    disagreement is reported rather than silently accepted.
    """
    if dmax < 2:
        raise OutOfRange("need dmax >= 2")
    threshold = growth_threshold(prec)
    ds = list(squarefree_range(2, dmax))

    def work(D: int) -> WrightVerdict:
        return _verdict_for(D, prec, prec_ceiling, threshold, audit=False)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(work, ds))
    else:
        verdicts = [work(D) for D in ds]
    verdicts.sort(key=lambda v: v.D)

    mismatches = []
    thresholded = [v.D for v in verdicts if v.by_threshold]
    if audit > 0 and thresholded:
        step = max(1, len(thresholded) // audit)
        for D in thresholded[::step][:audit]:
            direct = wright_condition(make_quadratic(D), prec, prec_ceiling)
            if direct.holds != HOLDS:
                mismatches.append(D)

    return ScanReport(
        dmax=dmax,
        verdicts=tuple(verdicts),
        exceptional=tuple(v.D for v in verdicts if v.holds == FAILS),
        holding=tuple(v.D for v in verdicts if v.holds == HOLDS),
        unresolved=tuple(v.D for v in verdicts if v.holds == UNRESOLVED),
        threshold_count=len(thresholded),
        audit_mismatches=tuple(mismatches),
    )
