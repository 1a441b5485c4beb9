"""Command-line front end.

    herbrand module compute|brute|profile FILE
    herbrand perm orbits|verify GSET
    herbrand quad unit|pell|h1|split|sunit|trace D [...]
    herbrand verify CLAIM [--trials N] [--seed S] [--max-d N] [--report-dir DIR]

Exit status is 0 on success, 1 when a verification finds a counterexample
and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cohomology as co
from . import permutation as pm
from . import quadratic as qf
from .abelian import InvariantFactors
from .errors import HerbrandError
from .files import dump_gset, json_int, parse_gset, parse_module_file
from .verify import CLAIMS, run_claim


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"error: USAGE_ERROR: {message}\n")


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return json_int(obj)
    if isinstance(obj, float):
        return "inf" if obj == float("inf") else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, InvariantFactors):
        return {"free_rank": obj.free_rank,
                "torsion_divisors": [json_int(d) for d in obj.torsion_divisors],
                "order": _jsonable(obj.order)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _emit(args, record: dict) -> None:
    if args.format == "json":
        print(json.dumps(_jsonable(record), indent=2, sort_keys=True))
        return
    width = max((len(k) for k in record), default=0)
    for key, value in record.items():
        if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
            value = "; ".join(" ".join(map(str, v)) for v in value)
        elif isinstance(value, (list, tuple)):
            value = " ".join(map(str, value))
        print(f"{key:<{width}}  {value}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise HerbrandError(f"cannot read {path}: {exc.strerror}", "USAGE_ERROR") from None


# -- module ---------------------------------------------------------------------

def cmd_module(args) -> int:
    module = parse_module_file(_read(args.file))
    record = {"n": module.n, "generators": module.k}
    if args.action == "compute":
        rep = co.herbrand_quotient(module)
        record.update({"H0": rep.tate.h0, "H1": rep.tate.h1,
                       "H0_order": rep.tate.h0_order, "H1_order": rep.tate.h1_order,
                       "herbrand": rep.quotient})
    elif args.action == "brute":
        h0, h1 = co.brute_force_cohomology(module, args.bound)
        record.update({"H0_order": h0, "H1_order": h1, "herbrand": Fraction(h0, h1)})
    else:
        if module.n == 2:
            p = co.order2_profile(module)
            record.update({"r_plus": p.r_plus, "r_minus": p.r_minus, "r": p.r,
                           "two_torsion_plus": p.two_torsion_plus,
                           "index_sum": p.index_sum, "index_norm": p.index_norm,
                           "index_norm_double": p.index_norm_double,
                           "h1_expressions": [str(e) for e in p.h1_expressions()],
                           "predicted_h1": p.predicted_h1, "predicted_h": p.predicted_h})
        r = co.remark_formula_h1(module)
        record.update({"remark_numerator": r.numerator, "remark_denominator": r.denominator,
                       "remark_chain": [r.norm_over_fixed, r.ambient_over_sum,
                                        r.image_over_image],
                       "H1_order": co.h1(module).order})
    _emit(args, record)
    return 0


# -- perm ---------------------------------------------------------------------------

def cmd_perm(args) -> int:
    x = parse_gset(_read(args.gset[1:]) if args.gset.startswith("@") else args.gset)
    d = pm.orbit_decomposition(x)
    record = {"gset": dump_gset(x), "orbits": [list(o) for o in d.orbits],
              "representatives": list(d.representatives),
              "stabilizer_orders": list(d.stabilizer_orders),
              "burnside_count": pm.burnside_orbit_count(x)}
    status = 0
    if args.action == "verify":
        direct = co.herbrand_quotient(pm.permutation_module(x))
        orbit_h = pm.orbit_herbrand_formula(x)
        formula_h1 = pm.prop21_h1_formula(x)
        ok = (direct.quotient == orbit_h and formula_h1 == direct.tate.h1_order
              and record["burnside_count"] == len(d.orbits))
        record.update({"orbit_product": orbit_h, "herbrand": direct.quotient,
                       "h1_formula": formula_h1, "H1_order": direct.tate.h1_order,
                       "verified": ok})
        status = 0 if ok else 1
    _emit(args, record)
    return status


# -- quad -----------------------------------------------------------------------------

def _place(token: str):
    if token.lower() in ("inf", "infinity", "oo"):
        return qf.INFINITE_PLACE
    try:
        return int(token)
    except ValueError:
        raise HerbrandError(f"{token!r} is not a prime or 'inf'", "NOT_PRIME") from None


def cmd_quad(args) -> int:
    K = qf.field_data(args.D)
    record: dict = {"D": K.D, "disc": K.disc, "omega": K.omega.value}
    if args.action == "unit":
        u = qf.fundamental_unit(K)
        cf = qf.cf_expand(K.D)
        record.update({"epsilon": str(u.epsilon), "coordinates": [u.epsilon.a, u.epsilon.b],
                       "norm": u.unit_norm, "cf_a0": cf.a0,
                       "cf_period": list(cf.periodic_part)})
    elif args.action == "pell":
        variant = (qf.PellVariant(args.variant) if args.variant else
                   qf.PellVariant.MINUS_FOUR if K.D % 4 == 1 else qf.PellVariant.MINUS_ONE)
        sol = qf.pell_solve(K.D, variant)
        record.update({"variant": variant.value,
                       "solution": "none" if sol is None else list(sol)})
        if sol is not None:
            record["value"] = qf.pell_form(K.D, variant, *sol)
    elif args.action == "h1":
        rep = co.herbrand_quotient(qf.unit_module(K))
        record.update({"unit_norm": qf.fundamental_unit(K).unit_norm,
                       "H1_order": qf.unit_group_h1(K), "H1_sunit_formula": qf.cor31_h1(K),
                       "H1_unit_module": rep.tate.h1_order, "herbrand": rep.quotient})
    elif args.action == "split":
        places = [_place(t) for t in args.places]
        record["types"] = [[str(p), qf.splitting_type(K, p).value] for p in places]
    elif args.action == "sunit":
        r = qf.sunit_herbrand(K, [_place(t) for t in args.places])
        record.update({"places": [str(p) for p in r.places],
                       "types": [t.value for t in r.types], "s_f": r.s_f_size,
                       "s_k": r.s_k_size, "nv_product": r.nv_product,
                       "herbrand": r.herbrand, "herbrand_counted": r.herbrand_global})
    else:
        rep = co.herbrand_quotient(qf.ok_module(K))
        record.update({"trace_index": qf.trace_index(K), "H0": rep.tate.h0,
                       "H1": rep.tate.h1, "herbrand": rep.quotient})
    _emit(args, record)
    return 0


# -- verify -----------------------------------------------------------------------------

def cmd_verify(args) -> int:
    rep = run_claim(args.claim, trials=args.trials, seed=args.seed, max_d=args.max_d)
    written = []
    if args.report_dir:
        from .report import write_report
        written = [str(p) for p in write_report(rep, args.report_dir)]
    if args.format == "json":
        out = rep.to_dict(timing=args.timing)
        if written:
            out["files"] = written
        print(json.dumps(_jsonable(out), indent=2, sort_keys=True))
    else:
        status = "PASS" if rep.ok else "FAIL"
        print(f"{rep.claim.upper():<8} trials={rep.trials}  failures={len(rep.failures)}  "
              f"elapsed={rep.elapsed:.2f}s  {status}")
        if not rep.ok:
            first = rep.sorted_failures()[0]
            print(f"counterexample: {first['input']}")
            print(f"  {first['detail']}")
        for path in written:
            print(f"wrote {path}")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # subcommand copies must not overwrite a --format given before the subcommand
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)

    parser = _Parser(prog="herbrand",
                     description="Exact Tate cohomology and Herbrand quotients over cyclic groups.",
                     epilog=__doc__.split("\n", 1)[1],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("module", parents=[common], help="cohomology of a module file")
    p.add_argument("action", choices=["compute", "brute", "profile"])
    p.add_argument("file", help="module JSON file, or - for stdin")
    p.add_argument("--bound", type=int, default=None,
                   help="element bound for brute (default $HERBRAND_ORACLE_BOUND or 65536)")
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("perm", parents=[common], help="G-sets and permutation modules")
    p.add_argument("action", choices=["orbits", "verify"])
    p.add_argument("gset", help="n:i0,i1,... inline, a JSON object, or @FILE")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("quad", parents=[common], help="real quadratic field Q(sqrt D)")
    p.add_argument("action", choices=["unit", "pell", "h1", "split", "sunit", "trace"])
    p.add_argument("D", type=int)
    p.add_argument("places", nargs="*", help="primes and/or 'inf' (split, sunit)")
    p.add_argument("--variant", choices=[v.value for v in qf.PellVariant])
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification sweep")
    p.add_argument("claim", choices=sorted(CLAIMS),
                   help="oracle, prop2, prop21, remark, prop33, thm32 or ex23")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-d", type=int)
    p.add_argument("--report-dir", help="write CSV and PNG figure here")
    p.add_argument("--timing", action="store_true", help="include elapsed time in JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "quad" and args.action in ("split", "sunit") and not args.places:
        parser.error(f"quad {args.action} needs at least one place")
    try:
        return args.func(args)
    except HerbrandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
