"""Command-line entry point: ``ppart <command> ...``.

Exit status: 0 success, 1 verification failure, 2 usage or domain error.
Results go to stdout as JSON or plain text; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import catalog, checks, formulas, operators, poset
from .errors import PPartError
from .series import TruncSeries, closed_eval, q_registry

log = logging.getLogger("ppart")


class UsageError(Exception):
    pass


def _grid_default() -> int:
    raw = os.environ.get("PPART_GRID")
    if raw is None:
        return 3
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PPART_GRID must be an integer, got {raw!r}") from None


def _emit(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _add_family_args(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--family", choices=sorted(catalog.FAMILY_PARAMS), required=required)
    for par in ("n", "m", "k", "r"):
        p.add_argument(f"--{par}", type=int)


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n}" for n in missing))


def _family(args) -> catalog.Family:
    return catalog.Family.make(args.family, n=args.n, m=args.m, k=args.k, r=args.r)


def _poset_from(args) -> poset.Poset:
    if getattr(args, "family", None):
        return catalog.named(_family(args))
    if getattr(args, "covers", None):
        return poset.Poset.from_json(_read_json(args.covers))
    raise UsageError("give --family or --covers")


# ---------------------------------------------------------------------------

def cmd_poset(args) -> int:
    P = _poset_from(args)
    if args.dot:
        _emit(P.to_dot())
        return 0
    out = P.to_json()
    if args.stats:
        out["stats"] = {"p": P.p, "e": poset.count_linear_extensions(P),
                        "ideals": poset.ideal_count(P)}
    _emit(out)
    return 0


def cmd_series(args) -> int:
    D = args.trunc
    if args.kind == "formula":
        name = args.name
        if name in ("macmahon", "gansner"):
            _require(args, "r", "c")
        elif name == "example42":
            _require(args, "j", "k")
        if name == "macmahon":
            cf = formulas.macmahon_rc(args.r, args.c, "q")
        elif name == "macmahon_inf":
            _emit(formulas.macmahon_inf(D, "q").to_json())
            return 0
        elif name == "gansner":
            reg = formulas.gansner_registry(args.r, args.c, D)
            _emit(closed_eval(formulas.gansner(args.r, args.c), reg).to_json())
            return 0
        elif name == "pf":
            cf = formulas.pf_closed(_family(args))
        elif name == "example42":
            _emit(closed_eval(formulas.example42_gf(args.j, args.k), q_registry(D, "x")).to_json())
            return 0
        else:
            raise UsageError(f"unknown formula {name!r}")
        _emit(closed_eval(cf, q_registry(D)).to_json())
        return 0
    if args.kind == "oracle":
        P = _poset_from(args)
        s = poset.fgen_oracle(P, D) if args.fgen else poset.pf_oracle(P, D)
        _emit(s.to_json())
        return 0
    # operator
    F = TruncSeries.from_json(_read_json(args.input))
    if args.trunc is not None and args.trunc != F.registry.degree:
        F = F.truncate(F.registry.with_degree(min(args.trunc, F.registry.degree)))
    mode = operators.Mode(args.mode)
    if args.op == "phi":
        out = operators.phi(F, args.z, mode)
    elif args.op == "psi":
        out = operators.psi(F, args.z, mode)
    elif args.op == "compose":
        _require(args, "n")
        out = operators.compose_bar(F, args.n, args.specialization, mode).series
    else:
        _require(args, "n")
        out = operators.thm12_rhs(F, args.n)
    _emit(out.to_json())
    return 0


def cmd_formula(args) -> int:
    fam = _family(args)
    if args.what == "pf":
        _emit(closed_eval(formulas.pf_closed(fam), q_registry(args.trunc)).to_json())
    else:
        _emit(str(formulas.e_closed(fam)))
    return 0


def cmd_extensions(args) -> int:
    P = _poset_from(args)
    if args.list:
        for mu in poset.jordan_holder(P):
            _emit(" ".join(map(str, mu.seq)) + f"  des={mu.des} maj={mu.maj}")
        return 0
    method = args.method
    if method == "dp":
        e = poset.count_linear_extensions(P)
    elif method == "order":
        e = poset.e_via_order_poly(P)
    else:
        e = len(poset.jordan_holder(P))
    _emit(str(e))
    return 0


def cmd_verify(args) -> int:
    grid = args.grid if args.grid is not None else _grid_default()
    suite = args.suite
    if suite == "all":
        results = checks.run_all(grid=grid, seed=args.seed, nmax=args.nmax, seeds=args.seeds)
    elif suite == "thm12":
        results = checks.suite_thm12(nmax=args.nmax, seeds=args.seeds, seed=args.seed)
    elif suite == "modes":
        results = checks.suite_modes(seed=args.seed)
    elif suite == "families":
        results = checks.suite_families(grid=grid)
    else:
        results = checks.SUITES[suite]()
    counts = checks.summarize(results)
    if args.json:
        _emit({"results": [r.to_json() for r in results], "summary": counts})
    else:
        for r in results:
            _emit(r.line(timing=args.timing))
        _emit(f"summary: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    if args.timing:
        total = sum(r.seconds for r in results)
        print(f"wall time {total:.2f}s", file=sys.stderr)
    return 1 if counts[checks.FAIL] else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ppart", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="build a poset and emit JSON or DOT")
    p.add_argument("action", choices=["build"])
    _add_family_args(p)
    p.add_argument("--covers", help="poset JSON file ('-' for stdin)")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_poset)

    s = sub.add_parser("series", help="expand a formula, oracle or operator to a series")
    s.add_argument("kind", choices=["formula", "oracle", "operator"])
    s.add_argument("--name", choices=["macmahon", "macmahon_inf", "gansner", "pf", "example42"])
    s.add_argument("--c", type=int)
    s.add_argument("--j", type=int)
    _add_family_args(s)
    s.add_argument("--covers")
    s.add_argument("--fgen", action="store_true", help="track A, B as x, y")
    s.add_argument("--op", choices=["phi", "psi", "compose", "thm12"], default="phi")
    s.add_argument("--input", help="series JSON file ('-' for stdin)")
    s.add_argument("--z", default="z")
    s.add_argument("--mode", choices=[m.value for m in operators.Mode], default="rational")
    s.add_argument("--specialization", choices=operators.SPECIALIZATIONS, default="none")
    s.add_argument("--trunc", type=int, default=None)
    s.set_defaults(func=cmd_series)

    f = sub.add_parser("formula", help="evaluate a family's PF or e(P)")
    f.add_argument("what", choices=["pf", "e"])
    _add_family_args(f, required=True)
    f.add_argument("--trunc", type=int, default=15)
    f.set_defaults(func=cmd_formula)

    e = sub.add_parser("extensions", help="count or list linear extensions")
    _add_family_args(e)
    e.add_argument("--covers")
    e.add_argument("--method", choices=["dp", "order", "jh"], default="dp")
    e.add_argument("--list", action="store_true")
    e.set_defaults(func=cmd_extensions)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])
    v.add_argument("--grid", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--nmax", type=int, default=5)
    v.add_argument("--seeds", type=int, default=20)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="append wall times (output no longer reproducible)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    if args.command == "series":
        if args.kind != "operator" and args.trunc is None:
            args.trunc = 15
        if args.kind == "operator" and not args.input:
            ap.error("series operator needs --input")
        if args.kind == "formula" and not args.name:
            ap.error("series formula needs --name")
    try:
        return args.func(args)
    except (PPartError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
