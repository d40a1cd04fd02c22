"""JSON/CSV rendering.  Every numeric field is a decimal string, a rational
string "num/den", or an enclosure object {"lo", "hi", "bits"}; binary floats
are never serialized, so identical configurations produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .enclosure import RealEnclosure
from .fields import DyadicPrime, FieldDescriptor
from .mass import MassBreakdown
from .wright import ScanReport, WrightVerdict

SCHEMA = 1
DIGITS = 36


def enc_json(e: RealEnclosure, digits: int = DIGITS) -> dict:
    lo, hi = e.decimal_bounds(digits)
    return {"lo": lo, "hi": hi, "bits": e.prec}


def frac_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def num_json(x, digits: int = DIGITS):
    if isinstance(x, RealEnclosure):
        return enc_json(x, digits)
    if isinstance(x, (int, Fraction)):
        return frac_str(x)
    raise TypeError(f"cannot serialize {type(x)!r}")


def field_json(desc: FieldDescriptor) -> dict:
    return {
        "d": desc.degree,
        "disc": str(desc.discriminant),
        "dyadic": [[p.e, p.f] for p in desc.dyadic],
    }


def parse_field_json(data: dict) -> tuple[FieldDescriptor, list[int] | None]:
    from .fields import make_descriptor
    desc = make_descriptor(int(data["d"]), int(data["disc"]),
                           [tuple(p) for p in data["dyadic"]])
    psi = [int(v) for v in data["psi"]] if "psi" in data else None
    return desc, psi


def mass_json(b: MassBreakdown, breakdown: bool = False) -> dict:
    out = {
        "schema": SCHEMA,
        "field": field_json(b.field),
        "rank": b.n,
        "mode": b.mode,
        "total": num_json(b.total),
    }
    if breakdown:
        sigma = b.sigma if isinstance(b.sigma, RealEnclosure) else None
        out["breakdown"] = {
            "sigma": num_json(b.sigma) if sigma is not None
            else exact_factored_json(b.sigma),
            "gamma_factor": exact_factored_json(b.gamma_factor),
            "disc_power": frac_str(b.disc_power),
            "xi": [frac_str(x) for x in b.xi],
            "psi": list(b.psi),
            "zeta_product": num_json(b.zeta_product)
            if isinstance(b.zeta_product, RealEnclosure)
            else exact_factored_json(b.zeta_product),
        }
    return out


def exact_factored_json(v) -> dict:
    return {
        "coeff": frac_str(v.coeff),
        "pi_half_exp": v.pi_half,
        "sqrt_arg": frac_str(v.sqrt_arg),
    }


def verdict_json(v: WrightVerdict) -> dict:
    return {
        "D": v.D,
        "disc": v.disc,
        "class": v.dyadic_class,
        "lhs": enc_json(v.lhs) if v.lhs is not None else None,
        "rhs": enc_json(v.rhs) if v.rhs is not None else None,
        "verdict": v.holds,
        "bits": v.resolved_at_bits,
        "A_K_source": v.A_K_source,
        "by_threshold": v.by_threshold,
    }


def scan_json(rep: ScanReport) -> dict:
    return {
        "schema": SCHEMA,
        "dmax": rep.dmax,
        "exceptional_count": rep.exceptional_count,
        "exceptional": list(rep.exceptional),
        "holding": list(rep.holding),
        "unresolved": list(rep.unresolved),
        "threshold_count": rep.threshold_count,
        "audit_mismatches": list(rep.audit_mismatches),
        "verdicts": [verdict_json(v) for v in rep.verdicts],
    }


SCAN_CSV_HEADER = "D,disc,class,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict,bits"


def scan_csv(rep: ScanReport) -> str:
    lines = [SCAN_CSV_HEADER]
    for v in rep.verdicts:
        if v.lhs is not None:
            llo, lhi = v.lhs.decimal_bounds(24)
            rlo, rhi = v.rhs.decimal_bounds(24)
        else:
            llo = lhi = rlo = rhi = ""
        lines.append(f"{v.D},{v.disc},{v.dyadic_class},{llo},{lhi},{rlo},{rhi},"
                     f"{v.holds},{v.resolved_at_bits}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
