"""Golden reproduction targets.

Semantics per target kind:
  * exact rationals compare bit for bit;
  * reference intervals (independent high-precision computations) must
    intersect the freshly computed enclosure, both being enclosures of the
    same constant;
  * quoted table decimals are matched to their printed precision: the fresh
    enclosure must lie within one unit in the last printed digit, and be
    narrower than that unit.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from importlib import resources

from .enclosure import RealEnclosure
from .errors import MassboundError

GOLDEN_NAMES = ("table1", "scan559", "massQ", "constants")


def _load(name: str) -> dict:
    ref = resources.files("massbound").joinpath(f"golden/{name}.json")
    with ref.open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema") != 1:
        raise MassboundError(f"golden file {name} has unsupported schema")
    return data


def _dec_fraction(text: str) -> Fraction:
    return Fraction(Decimal(text))


def _quoted_unit(text: str) -> Fraction:
    expo = Decimal(text).as_tuple().exponent
    return Fraction(10) ** expo


def _check_quoted(enc: RealEnclosure, quoted: str) -> tuple[bool, str]:
    q = _dec_fraction(quoted)
    u = _quoted_unit(quoted)
    window = RealEnclosure.from_endpoints(q - u, q + u, enc.prec)
    ok = window.contains(enc) and Fraction(*enc.width().as_integer_ratio()) <= u
    return ok, f"value in [{enc.decimal_bounds(10)[0]}, {enc.decimal_bounds(10)[1]}] vs quoted {quoted}"


def _check_interval(enc: RealEnclosure, lo: str, hi: str) -> tuple[bool, str]:
    ref = RealEnclosure.from_endpoints(_dec_fraction(lo), _dec_fraction(hi),
                                       enc.prec)
    return enc.intersects(ref), \
        f"[{enc.decimal_bounds(20)[0]}, {enc.decimal_bounds(20)[1]}] vs ref [{lo}, {hi}]"


def golden_check(name: str, prec: int = 128) -> tuple[bool, list[str]]:
    if name not in GOLDEN_NAMES:
        raise MassboundError(f"unknown golden target {name!r}")
    data = _load(name)
    lines: list[str] = []
    ok_all = True

    def record(label: str, ok: bool, detail: str):
        nonlocal ok_all
        ok_all = ok_all and ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}:{label} {detail}")

    if name == "massQ":
        from .fields import rational_field
        from .mass import korner_mass
        Q = rational_field()
        for n_str, frac in data["values"].items():
            n = int(n_str)
            got = korner_mass(Q, n).total
            want = Fraction(frac)
            record(f"n={n}", got == want, f"got {got}, want {want}")

    elif name == "table1":
        from .effective import M_n
        for n_str, quoted in data["points"].items():
            enc = M_n(int(n_str), prec)
            ok, detail = _check_quoted(enc, quoted)
            record(f"M_{n_str}", ok, detail)

    elif name == "constants":
        from .arith import (constant_A, kellner_C, odd_prime_sum_constant,
                            prime_sum_constant)
        from .wright import growth_threshold
        producers = {
            "A": constant_A,
            "prime_sum": prime_sum_constant,
            "prime_sum_odd": odd_prime_sum_constant,
            "kellner_C": kellner_C,
            "threshold_576_pi2": growth_threshold,
        }
        for key, iv in data["intervals"].items():
            enc = producers[key](prec)
            ok, detail = _check_interval(enc, iv["lo"], iv["hi"])
            record(key, ok, detail)

    elif name == "scan559":
        from .wright import wright_scan
        rep = wright_scan(data["dmax"], prec)
        record("count", rep.exceptional_count == data["exceptional_count"],
               f"got {rep.exceptional_count}, want {data['exceptional_count']}")
        record("holding", list(rep.holding) == data["holding"],
               f"got {list(rep.holding)}, want {data['holding']}")
        record("unresolved", not rep.unresolved, f"{list(rep.unresolved)}")

    return ok_all, lines
