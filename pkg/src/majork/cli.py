"""Command line interface: ``majork <command> ...``.

Sequences are given either as a JSON file (``{"mode": ..., "values": [...]}``
or a bare list) or inline as comma separated values such as ``3,1/2,-1``.

Exit codes: 0 on success or a passing check, 1 on a failed check or
violated invariant, 2 on usage and arithmetic errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core.io import load_seq, seq_to_json, to_jsonable
from .core.scalar import TAU, Mode, parse_scalar
from .core.seq import Seq, rearrange
from .core.stepfn import StepFn
from .errors import ArithmeticModeMismatch, InvariantViolation, MajorkError, PremiseViolated


def read_seq(text: str, mode: Mode | None) -> Seq:
    p = Path(text)
    if p.suffix == ".json" or p.is_file():
        return load_seq(p, mode)
    vals = [v for v in text.split(",") if v.strip()]
    return Seq.of(vals, mode)


def _mode(args) -> Mode | None:
    return None if args.mode is None else Mode(args.mode if args.mode == "float" else "rational")


def _emit(args, payload) -> None:
    data = to_jsonable(payload)
    text = json.dumps(data, indent=2)
    if args.json:
        Path(args.json).write_text(text)
    print(text)


def cmd_rearrange(args):
    x = read_seq(args.x, _mode(args))
    _emit(args, {"x_star": seq_to_json(rearrange(x))})
    return 0


def cmd_kfunc(args):
    from .kfunc import holmstedt_J, k_l1_linf, k_l1_lq

    x = read_seq(args.x, _mode(args))
    t = parse_scalar(args.t)
    if args.couple in ("1,inf", "l1,linf"):
        _emit(args, {"couple": "1,inf", "t": t, "K": k_l1_linf(t, x)})
    else:
        if args.q is None:
            raise ValueError("--q is required for couple 1,q")
        q = parse_scalar(args.q)
        kv = k_l1_lq(t, x, q, args.tol)
        _emit(args, {"couple": "1,q", "t": t, "q": q, "K": kv, "J": holmstedt_J(t, x, q)})
    return 0


def cmd_majorize(args):
    from .majorization import check_sq_premise, check_tail_dom, hlp_violation

    mode = _mode(args)
    x, y = read_seq(args.x, mode), read_seq(args.y, mode)
    if args.kind == "hlp":
        w = hlp_violation(x, y, args.tol)
        out = {"kind": "hlp", "holds": w is None, "first_violation": w}
    elif args.kind == "sq":
        out = dict(kind="sq", **check_sq_premise(x, y, parse_scalar(args.q), args.tol).to_json())
    else:
        out = {"kind": "tail", "holds": check_tail_dom(x, y, parse_scalar(args.q), args.tol)}
    _emit(args, out)
    return 0 if out["holds"] else 1


def cmd_transfer(args):
    from .operators import apply, hlp_transfer, norm_l1, norm_linf

    mode = _mode(args)
    x, y = read_seq(args.x, mode), read_seq(args.y, mode)
    T = hlp_transfer(x, y, args.method)
    Tx = apply(T, x)
    exact = Tx.padded(T.dim).values == tuple(Fraction(v) for v in y.padded(T.dim).values)
    _emit(args, {"weights": T.weights,
                 "permutations": [{"src": list(M.src), "theta": list(M.theta)} for M in T.factors],
                 "check": "exact" if exact else "mismatch", "Tx": seq_to_json(Tx),
                 "norm_l1": norm_l1(T), "norm_linf": norm_linf(T)})
    return 0 if exact else 1


def cmd_procp(args):
    from .procp import DEFAULT_EPS, compute_regions, run_procedure_p, theorem_main_pipeline

    mode = _mode(args)
    x, y = read_seq(args.x, mode), read_seq(args.y, mode)
    q = parse_scalar(args.q)
    if args.raw:
        reg = compute_regions(StepFn(x.values), StepFn(y.values), q, args.tol)
        _emit(args, run_procedure_p(reg))
        return 0
    eps = parse_scalar(args.eps) if args.eps is not None else DEFAULT_EPS
    res = theorem_main_pipeline(x, y, q, eps=eps, spaces=args.space or ())
    _emit(args, {"bound_holds": res.bound_holds, "C3": res.c3, "certificate": res.certificate})
    return 0 if res.bound_holds else 1


def cmd_space(args):
    from .spaces import space_norm, sq_probe

    if args.space_cmd == "norm":
        x = read_seq(args.x, _mode(args))
        _emit(args, {"space": args.space, "norm": space_norm(args.space, x)})
        return 0
    res = sq_probe(args.space, parse_scalar(args.q), parse_scalar(args.C), args.trials, args.seed)
    _emit(args, res)
    return 0 if not res.violations else 1


def cmd_verify(args):
    from . import harness

    q = parse_scalar(args.q)
    if args.theorem == "thm-easy":
        rep = harness.verify_thm_easy(args.space, parse_scalar(args.p), q, args.trials, args.seed,
                                      parse_scalar(args.C))
    elif args.theorem == "thm-main":
        c1 = parse_scalar(args.C1) if args.C1 is not None else None
        c2 = parse_scalar(args.C2) if args.C2 is not None else None
        rep = harness.verify_thm_main(args.space, q, c1, c2, args.trials, args.seed)
    else:
        rep = harness.verify_thm_enough(args.space, q, parse_scalar(args.C), parse_scalar(args.R),
                                        args.trials, args.seed)
    _emit(args, rep)
    return rep.exit_code


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "rational", "float"), default=d(None))
    common.add_argument("--tol", type=float, default=d(TAU))
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--json", metavar="PATH", default=d(None),
                        help="also write the JSON output to PATH")
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="majork", description="Majorization, K-functionals and "
                                 "interval decompositions for sequence spaces.",
                                 parents=[_global_flags(False)])
    # subcommands accept the global flags too; suppressed defaults keep earlier values
    common = _global_flags(True)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("rearrange", parents=[common], help="nonincreasing rearrangement")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_rearrange)

    p = sub.add_parser("kfunc", parents=[common], help="K-functional value")
    p.add_argument("--couple", choices=("1,inf", "1,q"), default="1,inf")
    p.add_argument("--t", required=True)
    p.add_argument("--q")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_kfunc)

    p = sub.add_parser("majorize", parents=[common], help="partial-sum domination checks")
    msub = p.add_subparsers(dest="majorize_cmd", required=True)
    c = msub.add_parser("check", parents=[common])
    c.add_argument("--kind", choices=("hlp", "sq", "tail"), default="hlp")
    c.add_argument("--x", "--u", dest="x", required=True)
    c.add_argument("--y", "--v", dest="y", required=True)
    c.add_argument("--q", default="2")
    c.set_defaults(func=cmd_majorize)

    p = sub.add_parser("transfer", parents=[common], help="signed-permutation transfer operator")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--method", choices=("permutahedron", "birkhoff"), default="permutahedron")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("procp", parents=[common], help="interval decomposition")
    psub = p.add_subparsers(dest="procp_cmd", required=True)
    c = psub.add_parser("run", parents=[common])
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--q", required=True)
    c.add_argument("--eps")
    c.add_argument("--space", action="append", help="space to check the norm bound in (repeatable)")
    c.add_argument("--raw", action="store_true", help="use x and y directly as f and g")
    c.set_defaults(func=cmd_procp)

    p = sub.add_parser("space", parents=[common], help="sequence space norms and probes")
    ssub = p.add_subparsers(dest="space_cmd", required=True)
    c = ssub.add_parser("norm", parents=[common])
    c.add_argument("--space", required=True)
    c.add_argument("--x", required=True)
    c.set_defaults(func=cmd_space)
    c = ssub.add_parser("sq-probe", parents=[common])
    c.add_argument("--space", required=True)
    c.add_argument("--q", required=True)
    c.add_argument("--C", default="1")
    c.add_argument("--trials", type=int, default=1000)
    c.set_defaults(func=cmd_space)

    p = sub.add_parser("verify", parents=[common], help="randomized theorem suites")
    p.add_argument("theorem", choices=("thm-easy", "thm-main", "thm-enough"))
    p.add_argument("--space", required=True)
    p.add_argument("--p", default="1")
    p.add_argument("--q", default="2")
    p.add_argument("--C", default="1")
    p.add_argument("--C1")
    p.add_argument("--C2")
    p.add_argument("--R", default="1")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (PremiseViolated, InvariantViolation) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ArithmeticModeMismatch, MajorkError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
