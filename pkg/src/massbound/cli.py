"""Command-line front end.

Subcommands: mass, autbound, euler, genera, wright-scan, effective,
table-mn, report, golden.  Structured output goes to stdout, diagnostics to
stderr.  Exit codes: 0 success, 2 usage error, 3 unresolved enclosure in a
strict scan, 4 input validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import golden as golden_mod
from .arith import constant_A, kellner_C, odd_prime_sum_constant, prime_sum_constant
from .config import DEFAULT_CEILING, DEFAULT_PREC, RunConfig, default_prec
from .effective import (M_n, class_and_U_report, disc_bound_n2, finite_bounds,
                        mass_bounds_to_field_bounds)
from .enclosure import RealEnclosure
from .errors import MassboundError
from .fields import make_quadratic, rational_field
from .genera import genera_bound, partition_max_check
from .groupbounds import coeff_A_K, collins_friedland_bound, schur_order_bound
from .mass import korner_mass
from .serialize import (dumps, enc_json, field_json, frac_str, mass_json,
                        num_json, parse_field_json, scan_csv, scan_json)
from .transforms import euler_transform, inverse_euler_transform
from .wright import growth_threshold, wright_scan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNRESOLVED = 3
EXIT_INVALID = 4


def parse_field(spec: str):
    """`quad:<D>` (D = 1 meaning the rationals) or `file:<path>` with the
    descriptor JSON schema {"d": int, "disc": str, "dyadic": [[e, f], ...]}.
    Returns (field, psi-or-None)."""
    if spec.startswith("quad:"):
        D = int(spec.split(":", 1)[1])
        if D == 1:
            return rational_field(), None
        return make_quadratic(D), None
    if spec.startswith("file:"):
        with open(spec.split(":", 1)[1], "r", encoding="utf-8") as fh:
            return parse_field_json(json.load(fh))
    raise MassboundError(f"field spec must be quad:<D> or file:<path>, got {spec!r}")


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec-bits", type=int, default=None,
                        help=f"working precision (default {DEFAULT_PREC} or "
                             "MASSBOUND_PREC_BITS)")
    common.add_argument("--prec-ceiling", type=int, default=DEFAULT_CEILING)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", choices=("json", "csv", "text"),
                        default="json")

    ap = argparse.ArgumentParser(
        prog="massbound",
        description="exact and rigorously enclosed lattice-mass machinery")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("mass", help="mass of the standard rank-n lattice")
    p.add_argument("--field", required=True)
    p.add_argument("--rank", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--enclosure", action="store_true")
    p.add_argument("--breakdown", action="store_true")

    p = add("autbound", help="automorphism-order bounds")
    p.add_argument("--field", required=True)
    p.add_argument("--rank", type=int, required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--schur", action="store_true")
    which.add_argument("--cf", action="store_true")

    p = add("euler", help="Euler transform of an integer sequence")
    p.add_argument("--invert", action="store_true")
    p.add_argument("--in", dest="infile", required=True)

    p = add("genera", help="unimodular genera bounds")
    p.add_argument("--field")
    p.add_argument("--check-partitions", action="store_true")
    p.add_argument("--dmax", type=int, default=14)

    p = add("wright-scan", help="scan the degree-2 growth condition")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--audit", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if any verdict is unresolved at the ceiling")

    p = add("effective", help="degree/discriminant bounds from C")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--C", required=True)
    p.add_argument("--formula", default="maindbound",
                   choices=("maindbound", "maindiscbound", "dboundmass",
                            "discboundmass", "maindiscbound2", "discbound2"))
    p.add_argument("--degree", type=int, default=3,
                   help="degree for the rank-2 discriminant bound")

    p = add("table-mn", help="table of the mass bases M_n")
    p.add_argument("--from", dest="lo", type=int, default=3)
    p.add_argument("--to", dest="hi", type=int, default=9)

    p = add("report", help="class-number and count bounds")
    p.add_argument("--field", required=True)
    p.add_argument("--rank", type=int, required=True)

    p = add("golden", help="recompute and compare golden targets")
    p.add_argument("--name", required=True,
                   choices=("table1", "scan559", "massQ", "constants"))
    return ap


def _emit(args, payload: dict, text_lines=None):
    if args.out == "text" and text_lines is not None:
        sys.stdout.write("\n".join(text_lines) + "\n")
    else:
        sys.stdout.write(dumps(payload))


def cmd_mass(args, cfg: RunConfig) -> int:
    K, psi = parse_field(args.field)
    mode = "enclosure" if args.enclosure else "exact"
    b = korner_mass(K, args.rank, mode, cfg.prec_bits, psi)
    payload = mass_json(b, breakdown=args.breakdown)
    text = [f"mass = {payload['total']}" if isinstance(payload["total"], str)
            else f"mass in [{payload['total']['lo']}, {payload['total']['hi']}]"]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_autbound(args, cfg: RunConfig) -> int:
    K, _ = parse_field(args.field)
    from .mass import resolve_field
    desc, D = resolve_field(K)
    n = args.rank
    out = {"schema": 1, "field": field_json(desc), "rank": n}
    if not args.cf:
        out["schur_order_bound"] = str(schur_order_bound(K, n))
    if not args.schur:
        cf = collins_friedland_bound(desc.degree, n, cfg.prec_bits)
        out["collins_friedland"] = (str(cf.value) if isinstance(cf.value, int)
                                    else enc_json(cf.value))
        out["collins_friedland_advisory"] = cf.advisory
    if desc.degree == 2 and D is not None:
        coeff = coeff_A_K(K, cfg.prec_bits, cfg.prec_ceiling)
        out["A_K"] = enc_json(coeff.A_K)
        out["A_K_source"] = coeff.source
    _emit(args, out)
    return EXIT_OK


def cmd_euler(args, cfg: RunConfig) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    values = [int(v) for v in data["values"]]
    out = inverse_euler_transform(values) if args.invert else euler_transform(values)
    _emit(args, {"schema": 1, "values": [str(v) for v in out]})
    return EXIT_OK


def cmd_genera(args, cfg: RunConfig) -> int:
    if args.check_partitions:
        results = {d: partition_max_check(d) for d in range(1, args.dmax + 1)}
        _emit(args, {"schema": 1, "partition_max_check": {
            str(d): ok for d, ok in results.items()}})
        return EXIT_OK if all(results.values()) else EXIT_INVALID
    if not args.field:
        raise MassboundError("genera needs --field or --check-partitions")
    K, _ = parse_field(args.field)
    gb = genera_bound(K)
    _emit(args, {"schema": 1, "per_prime": list(gb.per_prime),
                 "product": gb.product, "cap": gb.cap})
    return EXIT_OK


def cmd_wright_scan(args, cfg: RunConfig) -> int:
    rep = wright_scan(args.dmax, cfg.prec_bits, cfg.prec_ceiling,
                      jobs=cfg.jobs, audit=args.audit)
    if args.out == "csv":
        sys.stdout.write(scan_csv(rep))
    else:
        _emit(args, scan_json(rep),
              [f"exceptional: {rep.exceptional_count}",
               f"holding: {list(rep.holding)[:12]}..."])
    if rep.unresolved and args.strict:
        print(f"unresolved at ceiling: {list(rep.unresolved)}", file=sys.stderr)
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_effective(args, cfg: RunConfig) -> int:
    C = parse_rational(args.C)
    fid = args.formula
    if fid in ("maindbound", "maindiscbound"):
        rep = finite_bounds(args.n, C, cfg.prec_bits)
    elif fid in ("dboundmass", "discboundmass"):
        rep = mass_bounds_to_field_bounds(C, args.n, cfg.prec_bits)
    else:
        enc = disc_bound_n2(C, args.degree, cfg.prec_bits)
        _emit(args, {"schema": 1, "formula": fid, "degree": args.degree,
                     "C": frac_str(C), "disc_bound": enc_json(enc)})
        return EXIT_OK
    _emit(args, {
        "schema": 1,
        "formula": fid,
        "n": rep.n,
        "C": frac_str(rep.C),
        "degree_bound": rep.degree_bound,
        "disc_bounds_by_degree": [[d, enc_json(b)]
                                  for d, b in rep.disc_bounds_by_degree],
    })
    return EXIT_OK


def cmd_table_mn(args, cfg: RunConfig) -> int:
    rows = []
    lines = []
    for n in range(args.lo, args.hi + 1):
        enc = M_n(n, cfg.prec_bits)
        rows.append({"n": n, "M_n": enc_json(enc)})
        lo, hi = enc.decimal_bounds(8)
        lines.append(f"M_{n} in [{lo}, {hi}]")
    _emit(args, {"schema": 1, "rows": rows}, lines)
    return EXIT_OK


def cmd_report(args, cfg: RunConfig) -> int:
    K, _ = parse_field(args.field)
    rep = class_and_U_report(K, args.rank, cfg.prec_bits)
    _emit(args, {
        "schema": 1,
        "field": field_json(rep.field),
        "rank": rep.n,
        "class_number_lower": num_json(rep.class_number_lower),
        "u_lower": num_json(rep.u_lower),
        "u_upper": num_json(rep.u_upper),
        "U_upper": num_json(rep.U_upper),
        "aut_bound_source": rep.aut_bound_source,
        "U_upper_source": rep.U_upper_source,
    })
    return EXIT_OK


def cmd_golden(args, cfg: RunConfig) -> int:
    ok, lines = golden_mod.golden_check(args.name, cfg.prec_bits)
    for line in lines:
        print(line)
    return EXIT_OK if ok else 1


COMMANDS = {
    "mass": cmd_mass,
    "autbound": cmd_autbound,
    "euler": cmd_euler,
    "genera": cmd_genera,
    "wright-scan": cmd_wright_scan,
    "effective": cmd_effective,
    "table-mn": cmd_table_mn,
    "report": cmd_report,
    "golden": cmd_golden,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    prec = args.prec_bits if args.prec_bits is not None else default_prec()
    try:
        cfg = RunConfig(prec_bits=prec, prec_ceiling=max(args.prec_ceiling, prec),
                        out_format=args.out, jobs=args.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, cfg)
    except MassboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
