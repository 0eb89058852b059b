"""Command-line interface: decompose, invariants, realize, verify, axioms, sweep.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd

import numpy as np

from . import _accel
from .duality import is_self_dual, polarized_factorization
from .errors import BT1Error, BudgetExceeded, NotSelfDual, VerificationFailed
from .fermat import FERMAT, QUOTIENT, CurveSpec, LowerBound, decompose, genus_of
from .kraft import a_number, matrices_of, module_from_permdata, module_from_word, p_rank
from .permdata import PermutationData
from .realize import RealizationPlan, realize, realize_polarized, verify_plan
from .semilinear import base_change, field_make, random_invertible, verify_bt1_axioms
from .words import BT1Multiset, parse_word

SWEEP_COLUMNS = ("p", "d", "family", "genus", "p_rank", "a_number", "num_orbits", "self_dual", "multiset_json")
FAMILIES = {"quotient": QUOTIENT, "fermat": FERMAT}


class UsageError(Exception):
    pass


def _compact(obj):
    return json.dumps(obj, separators=(",", ":"))


def _emit(obj, fmt, out):
    if fmt == "json":
        out.write(_compact(obj) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(obj))
        w.writerow([v if isinstance(v, (str, int, float)) else _compact(v) for v in obj.values()])
    else:
        width = max(len(k) for k in obj)
        for k, v in obj.items():
            shown = v if isinstance(v, (str, int, float)) else _compact(v)
            out.write(f"{k.ljust(width)}  {shown}\n")


def _parse_target(text):
    try:
        return BT1Multiset.from_json(text)
    except (ValueError, BT1Error) as exc:
        raise UsageError(f"bad --target: {exc}") from None


def _curve_from_args(args):
    given = [x for x in (args.quotient_d, args.fermat_d, args.curve) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --quotient-d, --fermat-d, --curve")
    try:
        if args.quotient_d is not None:
            return CurveSpec(QUOTIENT, args.p, args.quotient_d)
        if args.fermat_d is not None:
            return CurveSpec(FERMAT, args.p, args.fermat_d)
        obj = json.loads(args.curve)
        obj.setdefault("p", args.p)
        return CurveSpec.from_json_obj(obj)
    except (ValueError, KeyError, BT1Error) as exc:
        raise UsageError(str(exc)) from None


def _genus_json(g):
    return g.to_json_obj() if isinstance(g, LowerBound) else g


def decomposition_report(p, curve, budget=None):
    dec = decompose(p, curve, budget)
    rep = dec.report()
    return {
        "genus": rep["genus"],
        "multiset": rep["multiset"],
        "p_rank": rep["p_rank"],
        "a_number": rep["a_number"],
        "self_dual": rep["self_dual"],
        "partial": rep["partial"],
        "num_orbits": rep["num_orbits"],
        "curve": rep["curve"],
    }


def cmd_decompose(args, out):
    curve = _curve_from_args(args)
    _emit(decomposition_report(args.p, curve, args.budget), args.format, out)
    return 0


def invariants_of(ms: BT1Multiset, genus=None):
    sd = is_self_dual(ms)
    out = {}
    if genus is not None:
        out["genus"] = _genus_json(genus)
    out.update(
        {
            "dimension": ms.dimension,
            "p_rank": p_rank(ms),
            "a_number": a_number(ms),
            "self_dual": sd,
            "polarized": [f.to_json_obj() for f in polarized_factorization(ms)] if sd else None,
        }
    )
    return out


def cmd_invariants(args, out):
    if args.target is not None:
        ms = _parse_target(args.target)
        genus = None
    elif args.word is not None:
        from .kraft import multiset_of_word

        ms = multiset_of_word(parse_word(args.word))
        genus = None
    else:
        curve = _curve_from_args(args)
        ms = decompose(args.p, curve, args.budget).expanded
        genus = genus_of(curve)
    _emit(invariants_of(ms, genus), args.format, out)
    return 0


def cmd_realize(args, out):
    target = _parse_target(args.target)
    try:
        plan = realize_polarized(args.p, target) if args.polarized else realize(args.p, target)
    except NotSelfDual as exc:
        raise UsageError(str(exc)) from None
    obj = plan.to_json_obj()
    code = 0
    if args.verify != "none":
        rep = verify_plan(plan, args.verify, args.budget, raise_on_failure=False)
        obj["verification"] = rep.to_json_obj()
        code = 0 if rep.ok else 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(plan.to_json(indent=2) + "\n")
    out.write(_compact(obj) + "\n")
    return code


def cmd_verify(args, out):
    try:
        with open(args.plan) as fh:
            plan = RealizationPlan.from_json(fh.read())
    except (OSError, ValueError, KeyError, BT1Error) as exc:
        raise UsageError(f"cannot read plan: {exc}") from None
    rep = verify_plan(plan, args.mode, args.budget, raise_on_failure=False)
    out.write(_compact(rep.to_json_obj()) + "\n")
    return 0 if rep.ok else 1


def cmd_axioms(args, out):
    try:
        fld = field_make(args.p, args.m)
    except BT1Error as exc:
        raise UsageError(str(exc)) from None
    if (args.word is None) == (args.permdata is None):
        raise UsageError("give exactly one of --word, --permdata")
    if args.word is not None:
        M = module_from_word(args.p, parse_word(args.word))
    else:
        with open(args.permdata) as fh:
            M = module_from_permdata(args.p, PermutationData.from_json(fh.read()))
    F, V = matrices_of(M, fld)
    report = verify_bt1_axioms(F, V, fld)
    obj = {"p": args.p, "m": args.m, "dimension": M.dimension, **report.to_dict()}
    rng = np.random.default_rng(args.seed)
    invariant = True
    for _ in range(args.base_changes):
        P = random_invertible(M.dimension, fld, rng)
        if verify_bt1_axioms(*base_change(F, V, P, fld), fld) != report:
            invariant = False
    if args.base_changes:
        obj["base_changes"] = args.base_changes
        obj["invariant_under_base_change"] = invariant
    out.write(_compact(obj) + "\n")
    return 0 if report.ok and invariant else 1


# ---------------------------------------------------------------------------
# sweep


def sweep_row(p, d, family, budget=None):
    curve = CurveSpec(FAMILIES[family], p, d)
    g = genus_of(curve)
    try:
        dec = decompose(p, curve, budget)
    except BudgetExceeded:
        return [str(p), str(d), family, str(g), "", "", "", "", "budget_exceeded"]
    ms = dec.expanded
    return [
        str(p),
        str(d),
        family,
        str(g),
        str(p_rank(ms)),
        str(a_number(ms)),
        str(dec.num_orbits),
        "true" if is_self_dual(ms) else "false",
        ms.to_json(),
    ]


def _sweep_task(cell):
    return sweep_row(*cell)


def sweep_cells(p_list, d_max, family, d_min=3):
    return [(p, d, family) for p in sorted(set(p_list)) for d in range(d_min, d_max + 1) if gcd(p, d) == 1]


def sweep(p_list, d_max, family="quotient", workers=1, out=None, d_min=3, budget=None):
    """Write the CSV for every coprime ``(p, d)`` cell, sorted by ``p`` then ``d``."""
    out = out if out is not None else io.StringIO()
    cells = [c + (budget,) for c in sweep_cells(p_list, d_max, family, d_min)]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    if workers > 1 and len(cells) > 1:
        _accel.cycle_decompose(np.zeros(1, np.int64), np.zeros(1, bool))  # compile before forking
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = pool.map(_sweep_task, cells, chunksize=max(1, len(cells) // (4 * workers)))
            for row in rows:
                w.writerow(row)
    else:
        for cell in cells:
            w.writerow(_sweep_task(cell))
    return out


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_sweep(args, out):
    bad = [p for p in args.p if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1))]
    if bad:
        raise UsageError(f"not prime: {bad}")
    sweep(args.p, args.d_max, args.family, args.workers, out, args.d_min, args.budget)
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="bt1fermat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_flags(sp):
        sp.add_argument("--quotient-d", type=int, help="C_d: y^d = x(1-x)")
        sp.add_argument("--fermat-d", type=int, help="F_d: X^d + Y^d = 1")
        sp.add_argument("--curve", help='curve JSON, e.g. {"variant":"fiber_product","d":7,"r":3}')

    def common(sp, fmt=True):
        sp.add_argument("--budget", type=int, default=None, help="Fermat enumeration budget")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv", "table"), default="json")

    sp = sub.add_parser("decompose", help="Kraft multiset of a curve's p-torsion")
    sp.add_argument("--p", type=int, required=True)
    curve_flags(sp)
    common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("invariants", help="genus, p-rank, a-number, duality data")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--target", help="multiset JSON")
    sp.add_argument("--word")
    curve_flags(sp)
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("realize", help="explicit curve containing a target BT1 module")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--target", required=True, help='multiset JSON, e.g. {"fv":1}')
    sp.add_argument("--polarized", action="store_true")
    sp.add_argument("--verify", choices=("none", "witness", "full"), default="none")
    sp.add_argument("--out", help="write the plan JSON to this file")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("verify", help="re-check a stored plan")
    sp.add_argument("--plan", required=True)
    sp.add_argument("--mode", choices=("witness", "full"), default="witness")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("axioms", help="check Ker F = Im V, Ker V = Im F, FV = VF = 0")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=2, help="work over GF(p^m)")
    sp.add_argument("--word")
    sp.add_argument("--permdata", help="permutation data JSON file")
    sp.add_argument("--base-changes", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("sweep", help="CSV of invariants over a (p, d) grid")
    sp.add_argument("--p", type=_int_list, required=True)
    sp.add_argument("--d-max", type=int, required=True)
    sp.add_argument("--d-min", type=int, default=3)
    sp.add_argument("--family", choices=tuple(FAMILIES), default="quotient")
    sp.add_argument("--workers", type=int, default=1)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    except VerificationFailed as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except BT1Error as exc:
        diag = getattr(exc, "diagnostics", None)
        extra = f"diagnostics: {_compact(diag)}\n" if diag else ""
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n{extra}")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
