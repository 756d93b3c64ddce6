"""Command-line driver.

    loopcrystal dims    --quiver jordan --bound 4
    loopcrystal crystal --quiver sl2 --kind highest --lam 2 --out dot
    loopcrystal verify  --suite axioms,hypo --seed 7

Exit codes: 0 success, 1 a hard verification failure, 2 bad input,
3 a theory violation (an assertion the mathematics guarantees failed).
"""
from __future__ import annotations

import argparse
import json
import sys

from .cartan import BUILTIN_QUIVERS, load_quiver, weights_up_to
from .errors import InputError, LoopCrystalError, TheoryViolation
from .export import render
from .extract import crystal_binf, crystal_module
from .freealg import FormParams, FreeAlgebra, parse_param_override
from .verify import SUITES, VerifyConfig, run_verify

EXIT_FAIL, EXIT_INPUT, EXIT_THEORY = 1, 2, 3


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("bounds must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopcrystal",
                                description="Crystals of quantum groups for quivers with loops.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, quiver_default=None, bound=4):
        sp.add_argument("--quiver", default=quiver_default,
                        help=f"quiver file or builtin name ({', '.join(BUILTIN_QUIVERS)})")
        sp.add_argument("--bound", type=_positive, default=bound, help="height/depth bound")
        sp.add_argument("--param", action="append", default=[], metavar="i,l=EXPR",
                        help="override the form parameter {E_il, E_il}")

    d = sub.add_parser("dims", help="dim U+[nu] next to |B(inf)[nu]|")
    common(d, quiver_default="jordan")
    d.add_argument("--out", choices=("table", "json"), default="table")

    c = sub.add_parser("crystal", help="extract B(inf) or B(lambda)")
    common(c, quiver_default="jordan", bound=3)
    c.add_argument("--kind", choices=("infinity", "highest"), default="infinity")
    c.add_argument("--lam", default=None, help="dominant weight, comma separated (for --kind highest)")
    c.add_argument("--out", choices=("json", "dot", "table"), default="json")
    c.add_argument("--output", default=None, help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default=",".join(SUITES),
                   help=f"comma separated subset of {', '.join(SUITES)}; 'none' runs nothing")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_positive, default=100)
    return p


def _algebra(args):
    q = load_quiver(args.quiver)
    over = dict(parse_param_override(t, q) for t in args.param)
    return q, FreeAlgebra(q, FormParams(q, over))


def cmd_dims(args) -> str:
    q, A = _algebra(args)
    ex = crystal_binf(A, args.bound)
    counts = ex.count_by_degree()
    rows = []
    for nu in weights_up_to(q.n, args.bound):
        dim = A.dim(nu)
        rows.append((nu, dim, counts.get(nu, 0)))
    if args.out == "json":
        return json.dumps([{"nu": list(nu), "dim": d, "crystal": c, "match": d == c}
                           for nu, d, c in rows], indent=1) + "\n"
    lines = [f"{'nu':<16}{'dim U+':>8}{'|B(inf)|':>10}"]
    for nu, d, c in rows:
        flag = "" if d == c else "  MISMATCH"
        lines.append(f"{str(list(nu)):<16}{d:>8}{c:>10}{flag}")
    return "\n".join(lines) + "\n"


def _parse_lam(text, q):
    if text is None:
        raise InputError("--kind highest needs --lam")
    try:
        lam = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"bad weight {text!r}") from None
    if len(lam) != q.n:
        raise InputError(f"weight {text!r} has {len(lam)} entries, quiver has {q.n} vertices")
    return lam


def cmd_crystal(args) -> str:
    q, A = _algebra(args)
    if args.kind == "infinity":
        ex = crystal_binf(A, args.bound)
    else:
        ex = crystal_module(A, _parse_lam(args.lam, q), args.bound)
    return render(ex.crystal, args.out)


def cmd_verify(args) -> tuple[str, bool]:
    names = [s.strip() for s in args.suite.split(",") if s.strip() and s.strip() != "none"]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise InputError(f"unknown suite(s): {', '.join(unknown)}")
    quivers = [load_quiver(args.quiver)] if args.quiver else [load_quiver(n) for n in BUILTIN_QUIVERS]
    over = {}
    for t in args.param:
        if len(quivers) != 1:
            raise InputError("--param needs a single --quiver")
        k, val = parse_param_override(t, quivers[0])
        over[k] = val
    cfg = VerifyConfig(quivers=quivers, bound=args.bound, seed=args.seed, suites=tuple(names),
                       overrides=over, samples=args.samples)
    rep = run_verify(cfg)
    return rep.render(), not rep.hard_failures


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dims":
            sys.stdout.write(cmd_dims(args))
        elif args.command == "crystal":
            text = cmd_crystal(args)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        else:
            text, ok = cmd_verify(args)
            sys.stdout.write(text)
            if not ok:
                return EXIT_FAIL
    except TheoryViolation as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return EXIT_THEORY
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LoopCrystalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
