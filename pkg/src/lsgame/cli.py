"""Command-line interface: ``lsgame <command> ...``.

Exit codes: 0 on success, 2 on invalid input, 3 when a request exceeds a
feasibility cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys as _sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .compiler import (
    CompilerError, build_counterexample, classify, lower_and_compile, max_alice_outputs,
    size_forecast,
)
from .games import (
    correlation, game_of, read_strategy, row_summary, strategy_from_rep, win_stats,
    write_strategy,
)
from .gf2core import read_lsys, write_lsys
from .presentations import (
    J, Presentation, WordError, k_group, k_presentation, presentation_from_json, read_grp,
    solution_group,
)
from .replab.core import ApproxRep, FeasibilityError, RepError, defect, read_rep, write_rep
from .replab.homs import enumerate_homs, hom_summary
from .replab.stability import (
    C0, C1, abelian_presentation, nearest_involution, round_commuting, split_on_j,
    stabilize_abelian,
)

log = logging.getLogger("lsgame")

EXIT_OK, EXIT_INVALID, EXIT_FEASIBILITY = 0, 2, 3
BUILTINS = ("builtin:K",)


class UsageError(ValueError):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("LSGAME_SEED")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"LSGAME_SEED must be an integer, got {env!r}") from exc
    from .acceptance import DEFAULT_SEED
    return DEFAULT_SEED


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def load_presentation(source: str) -> Presentation:
    if source == "builtin:K":
        return k_presentation()
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such file: {source}")
    if path.suffix == ".json":
        return presentation_from_json(json.loads(path.read_text()))
    if path.suffix == ".lsys":
        return solution_group(read_lsys(path))
    return read_grp(path)


def load_typed(source: str):
    if source == "builtin:K":
        return k_group()
    g = classify(load_presentation(source))
    return g, None


# -- commands ------------------------------------------------------------------

def cmd_compile(args) -> int:
    g, designated = load_typed(args.input)
    target = args.hnn if args.hnn is not None else designated
    if args.input == "builtin:K" and args.hnn is None:
        result = build_counterexample()
    else:
        result = lower_and_compile(g, hnn_target=target)
    out_sys, psi, report = result
    if args.output:
        write_lsys(out_sys, args.output)
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_json(), indent=2))
    _emit({"variables": out_sys.n, "equations": out_sys.m,
           "max_alice_outputs": max_alice_outputs(out_sys),
           "passes": [{"name": p.name, "after": p.after, "forecast": p.forecast}
                      for p in report.passes]})
    return EXIT_OK


def cmd_forecast(args) -> int:
    g, designated = load_typed(args.input)
    target = args.hnn if args.hnn is not None else designated
    _, _, report = lower_and_compile(g, hnn_target=target)
    rows = []
    first = size_forecast(g)
    rows.append({"pass": "input", "forecast": first.__dict__})
    for p in report.passes:
        match = None if p.forecast is None else all(p.after.get(k) == v for k, v in p.forecast.items())
        rows.append({"pass": p.name, "measured": p.after, "forecast": p.forecast, "match": match})
    _emit(rows)
    return EXIT_OK if all(r.get("match") in (None, True) for r in rows) else EXIT_INVALID


def cmd_defect(args) -> int:
    rep = read_rep(args.rep)
    pres = load_presentation(args.presentation)
    rep_ = defect(rep, pres)
    worst = sorted(rep_.defects, key=lambda kv: -kv[1])[: args.top]
    _emit({"dim": rep.dim, "epsilon": rep_.epsilon,
           "worst": [{"relation": r, "defect": v} for r, v in worst]})
    return EXIT_OK


def cmd_round(args) -> int:
    rep = read_rep(args.rep)
    I = np.eye(rep.dim)
    out: dict = {"lemma": args.lemma}
    if args.lemma == "involution":
        gens = args.gens or [g for g in rep.matrices if g != J]
        mats = dict(rep.matrices)
        items = []
        for g in gens:
            X = rep.image(g)
            D = nearest_involution(X)
            mats[g] = D
            items.append({"generator": g, "moved": float(np.linalg.norm(D - X) / np.sqrt(rep.dim)),
                          "bound": C1 * float(np.linalg.norm(X @ X - I) / np.sqrt(rep.dim))})
        out["generators"] = items
        new = ApproxRep(rep.dim, mats)
    elif args.lemma == "commuting":
        if not args.gens or not args.y:
            raise UsageError("commuting needs --gens X1 ... Xn and --y Y")
        Xs = [rep.image(g) for g in args.gens]
        Y = rep.image(args.y)
        Z = round_commuting(Xs, Y)
        out.update(moved=float(np.linalg.norm(Z - Y) / np.sqrt(rep.dim)),
                   bound=C0 * float(np.linalg.norm(Xs[-1] @ Y - Y @ Xs[-1]) / np.sqrt(rep.dim)))
        new = rep.with_images({args.y: Z})
    elif args.lemma == "abelian":
        gens = args.gens or [g for g in rep.matrices if g != J]
        eps = defect(rep.restrict(gens), abelian_presentation(gens)).epsilon
        res = stabilize_abelian([rep.image(g) for g in gens])
        out.update(epsilon=eps, constant=res.constant, certified=res.constant * eps)
        new = rep.with_images(dict(zip(gens, res.images)))
    else:
        if args.presentation is None or args.delta is None:
            raise UsageError("splitJ needs --presentation and --delta")
        res = split_on_j(rep, load_presentation(args.presentation), args.delta)
        out.update(certified=res.certified, rounded_defect=res.rounded_defect,
                   block_fraction=res.block_fraction, dim=res.rep.dim)
        new = res.rep
    if args.output:
        write_rep(new, args.output)
    _emit(out)
    return EXIT_OK


def cmd_strategy(args) -> int:
    rep = read_rep(args.rep)
    system = read_lsys(args.system)
    s = strategy_from_rep(rep, system)
    write_strategy(s, args.output)
    _emit({"dim": s.dim, "alice_inputs": system.m, "bob_inputs": system.n})
    return EXIT_OK


def cmd_evaluate(args) -> int:
    s = read_strategy(args.strategy)
    system = read_lsys(args.system)
    s.validate(system, tol=1e-8)
    game = game_of(system)
    if args.pairs:
        text = correlation(s, game).to_csv()
    else:
        lines = ["i,p_min,bias_min"]
        for i, p, bias in row_summary(win_stats(s, game), system.m):
            lines.append(f"{i},{p:.9f},{bias:.9f}")
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        _sys.stdout.write(text)
    return EXIT_OK


def cmd_homs(args) -> int:
    pres = load_presentation(args.presentation)
    gen = args.gen or pres.generators[0]
    if gen not in pres.generators:
        raise UsageError(f"unknown generator {gen!r}")
    homs = enumerate_homs(pres, args.degree)
    summary = hom_summary(homs, gen)
    summary["degree"] = args.degree
    _emit(summary)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    results = run_all(seed=_seed(args), quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lsgame", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: $LSGAME_SEED or a fixed value)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a typed group to a linear system")
    c.add_argument("input", help="builtin:K, a .grp file, or presentation JSON")
    c.add_argument("--hnn", help="generator to HNN-extend at (HLPC/EHLPC inputs)")
    c.add_argument("-o", "--output", help="write the .lsys here")
    c.add_argument("--report", help="write the provenance JSON here")
    c.set_defaults(func=cmd_compile)

    f = sub.add_parser("forecast", help="compare predicted and measured sizes per pass")
    f.add_argument("input")
    f.add_argument("--hnn")
    f.set_defaults(func=cmd_forecast)

    d = sub.add_parser("defect", help="per-relation defects of a representation")
    d.add_argument("rep")
    d.add_argument("presentation", help=".grp, presentation JSON, .lsys or builtin:K")
    d.add_argument("--top", type=int, default=10)
    d.set_defaults(func=cmd_defect)

    r = sub.add_parser("round", help="apply a rounding construction")
    r.add_argument("rep")
    r.add_argument("--lemma", required=True, choices=("involution", "commuting", "abelian", "splitJ"))
    r.add_argument("--gens", nargs="+")
    r.add_argument("--y")
    r.add_argument("--presentation")
    r.add_argument("--delta", type=float)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_round)

    s = sub.add_parser("strategy", help="build a game strategy from a representation")
    s.add_argument("rep")
    s.add_argument("system", help=".lsys file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_strategy)

    e = sub.add_parser("evaluate", help="correlations of a strategy (CSV)")
    e.add_argument("strategy")
    e.add_argument("system")
    e.add_argument("--pairs", action="store_true", help="full per-output table")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_evaluate)

    h = sub.add_parser("homs", help="homomorphisms into S_k")
    h.add_argument("presentation")
    h.add_argument("--degree", "-k", type=int, required=True)
    h.add_argument("--gen")
    h.set_defaults(func=cmd_homs)

    t = sub.add_parser("selftest", help="run the acceptance checks")
    t.add_argument("--quick", action="store_true")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except FeasibilityError as exc:
        print(f"lsgame: infeasible: {exc}", file=_sys.stderr)
        return EXIT_FEASIBILITY
    except (UsageError, WordError, RepError, CompilerError, ValueError, KeyError,
            OSError, json.JSONDecodeError) as exc:
        print(f"lsgame: error: {exc}", file=_sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
