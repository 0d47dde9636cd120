"""Command-line front end.

``run(argv)`` returns a :class:`CommandResult` and never exits; ``main`` prints
the report and exits with its code (0 ok, 1 a declared check failed, 2 usage).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path

from . import operad as op
from . import verify
from .coalgebra import coalgebra_from_spec, zero_coalgebra
from .series import (Series, cyclie_egf, decomposition_check, greg_egf, greg_polynomials,
                     koszul_partner, verify_koszul_pair)
from .shuffle import (check_freeness_shapes, complete, count_normal_forms, dual_presentation,
                      expand_symmetric_to_shuffle, greg_presentation, load_relations,
                      normal_forms, prelie_presentation, preset_order, relation_rank,
                      sub_alphabet, format_shuffle, symbols_of, ShuffleElement)
from .trees import count_by_weight, enumerate_trees, format_tree, max_color
from .words import multilinear_dimension, normalize, parse_words

OK, FAILED, USAGE = 0, 1, 2


@dataclass
class CommandResult:
    exit_code: int
    report: str
    data: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


# -- helpers ------------------------------------------------------------------


def _coalgebra(args, colors: int):
    return coalgebra_from_spec(args.coalgebra, colors)


def _input_colors(args, vectors) -> int:
    found = max((max_color(t) for v in vectors for t in v.terms), default=0)
    return max(args.colors or 0, found, 1)


def _checks_result(command: str, checks: list, extra: dict | None = None) -> tuple[int, list, dict]:
    checks = sorted(checks, key=lambda c: c.name)
    failed = [c for c in checks if not c.passed]
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in checks]
    lines.append(f"{len(checks)} checks, {len(failed)} failed")
    data = {"command": command, "passed": not failed, "checks": [c.as_dict() for c in checks],
            **(extra or {})}
    return (FAILED if failed else OK), lines, data


def _presentation(name: str, args):
    if name == "prelie":
        return prelie_presentation()
    if name == "perm":
        return dual_presentation(zero_coalgebra(0))
    C = _coalgebra(args, args.colors or 1)
    if name == "greg-dual":
        return dual_presentation(C)
    if name == "greg":
        return greg_presentation(C)
    raise UsageError(f"unknown presentation {name!r}; choose from {PRESENTATIONS}")


PRESENTATIONS = ("greg", "greg-dual", "perm", "prelie")


def _relations(args):
    if getattr(args, "relations", None):
        rels = load_relations(Path(args.relations).read_text())
        n = max((int(s[1:]) for r in rels for m in r.terms for s in symbols_of(m)
                 if s.startswith("g")), default=0)
        return rels, n
    pres = _presentation(args.preset, args)
    n = sum(1 for g in pres.generators if g.name.startswith("g"))
    return expand_symmetric_to_shuffle(pres), n


# -- commands -----------------------------------------------------------------


def cmd_dims(args):
    colors = 1 if args.colors is None else args.colors
    polys = greg_polynomials(args.max_arity)
    rows, bad = [], 0
    for m in range(1, args.max_arity + 1):
        count = len(enumerate_trees(m, colors))
        rec = int(polys[m - 1](colors))
        bad += count != rec
        row = {"arity": m, "count": count, "recursion": rec}
        if args.by_weight:
            row["by_weight"] = {str(k): v for k, v in count_by_weight(m, colors).items()}
        rows.append(row)
    lines = [f"Greg trees with {colors} color(s)", "arity  count  recursion"]
    for r in rows:
        line = f"{r['arity']:>5}  {r['count']:>5}  {r['recursion']:>9}"
        if args.by_weight:
            line += "  by weight " + ", ".join(f"{k}:{v}" for k, v in r["by_weight"].items())
        lines.append(line)
    return (FAILED if bad else OK), lines, {"command": "dims", "colors": colors, "rows": rows}


def cmd_enumerate(args):
    colors = 1 if args.colors is None else args.colors
    trees = [format_tree(t) for t in enumerate_trees(args.arity, colors)]
    return OK, trees + [f"{len(trees)} trees"], {
        "command": "enumerate", "arity": args.arity, "colors": colors, "count": len(trees),
        "trees": trees}


def _vector_result(name: str, v) -> tuple:
    return OK, [str(v), f"{len(v)} terms"], {"command": name, "result": str(v), "terms": len(v)}


def cmd_compose(args):
    T, S = op.parse_vector(args.T), op.parse_vector(args.S)
    C = _coalgebra(args, _input_colors(args, [T, S]))
    f = op.compose_std if args.std else op.compose
    return _vector_result("compose", f(T, args.i, S, C))


def cmd_fall(args):
    S, T = op.parse_vector(args.S), op.parse_vector(args.T)
    C = _coalgebra(args, _input_colors(args, [S, T]))
    return _vector_result("fall", op.fall_product(S, T, C))


def cmd_brace(args):
    S = op.parse_vector(args.S)
    forest = [op.parse_vector(t) for t in args.forest]
    C = _coalgebra(args, _input_colors(args, [S] + forest))
    return _vector_result("brace", op.brace(S, forest, C))


def cmd_rank(args):
    vs = [op.parse_vector(v) for v in args.vectors]
    r = op.rank(vs)
    return OK, [f"rank {r}"], {"command": "rank", "rank": r, "vectors": len(vs)}


def cmd_xn_rank(args):
    colors = 1 if args.colors is None else args.colors
    rows = []
    for m in range(2, args.max_arity + 1):
        rows.append({"arity": m, "rank": op.xn_generator_rank(m, colors),
                     "cyclic_lie": factorial(m - 2)})
    lines = ["arity  rank  (m-2)!"] + [f"{r['arity']:>5}  {r['rank']:>4}  {r['cyclic_lie']:>6}"
                                       for r in rows]
    return OK, lines, {"command": "xn-rank", "colors": colors, "rows": rows}


def cmd_words(args):
    colors = 1 if args.colors is None else args.colors
    if args.action == "normalize":
        if not args.expr:
            raise UsageError("words normalize needs an expression")
        v = normalize(parse_words(args.expr))
        return OK, [str(v)], {"command": "words normalize", "result": str(v)}
    rows = [{"arity": m, "dimension": multilinear_dimension(m, colors),
             "formula": (colors + 1) * m - colors} for m in range(1, args.max_arity + 1)]
    bad = any(r["dimension"] != r["formula"] for r in rows)
    lines = ["arity  dimension  (n+1)m-n"] + [
        f"{r['arity']:>5}  {r['dimension']:>9}  {r['formula']:>8}" for r in rows]
    return (FAILED if bad else OK), lines, {"command": "words dim", "colors": colors, "rows": rows}


def cmd_gb(args):
    rels, n = _relations(args)
    syms = verify.symbols(n)
    if args.action == "expand":
        lines = [str(r) for r in rels] + [f"{len(rels)} relations, rank {relation_rank(rels)}"]
        return OK, lines, {"command": "gb expand", "relations": [str(r) for r in rels],
                           "rank": relation_rank(rels)}
    order = preset_order(args.order, n)
    R = complete(rels, order, max_arity=args.arity)
    quadratic = R.is_quadratic() and not R.added
    base = {"order": args.order, "arity": args.arity, "quadratic": quadratic,
            "rules": len(R.rules), "added": len(R.added)}
    if args.action == "complete":
        nf = count_normal_forms(R, args.arity, syms)
        lines = [f"quadratic: {'yes' if quadratic else 'no'}, normal forms: {nf}",
                 f"{len(R.rules)} rules, {len(R.added)} added during completion"]
        if args.show_rules:
            lines += [f"{format_shuffle(r.lead)} -> {ShuffleElement(r.tail)}" for r in R.rules]
        return OK, lines, {"command": "gb complete", **base, "normal_forms": nf}
    if args.action == "count":
        counts = [count_normal_forms(R, m, syms) for m in range(1, args.arity + 1)]
        lines = [f"quadratic: {'yes' if quadratic else 'no'}"] + [
            f"arity {m}: {c}" for m, c in enumerate(counts, 1)]
        if args.list:
            lines += [format_shuffle(t) for t in normal_forms(R, args.arity, syms)]
        return OK, lines, {"command": "gb count", **base, "counts": counts}
    rep = check_freeness_shapes(R, sub_alphabet(args.sub))
    d = rep.as_dict()
    lines = [f"quadratic: {'yes' if quadratic else 'no'}"]
    for key in ("left", "right", "ns_root", "ns_comb"):
        lines.append(f"{key}: {'yes' if d[key] else 'no'}")
        for r in d["counterexamples"].get(key, [])[:3]:
            lines.append(f"  counterexample {r}")
    return OK, lines, {"command": "gb shapes", **base, "sub": args.sub, **d}


def _poly_table(name: str, values, start: int, args) -> tuple:
    rows = [{"k": k, "value": str(v)} for k, v in enumerate(values, start)]
    if args.csv:
        lines = ["k,value"] + [f"{r['k']},{r['value']}" for r in rows]
    else:
        lines = ["k  k!*[t^k]"] + [f"{r['k']}  {r['value']}" for r in rows]
    return OK, lines, {"command": f"series {name}", "rows": rows}


def _spec_series(s: Series, n):
    return s if n is None else s.specialize(n)


def cmd_series(args):
    N = args.order
    if args.action == "egf":
        return _poly_table("egf", _spec_series(greg_egf(N), args.n).egf_table()[1:], 1, args)
    if args.action == "poly":
        polys = greg_polynomials(N)
        if args.n is not None:
            polys = [p(args.n) for p in polys]
        return _poly_table("poly", polys, 1, args)
    if args.action == "cyclie":
        return _poly_table("cyclie", cyclie_egf(N).egf_table()[2:], 2, args)
    if args.action == "koszul":
        checks = [verify.Check("h o f = t" + (f" at n={args.n}" if args.n is not None else ""),
                               verify_koszul_pair(N, koszul_partner(N), args.n), f"order {N}")]
        return _checks_result("series koszul", checks)
    ns = [args.n] if args.n is not None else [1, 2, 3]
    checks = [verify.Check(f"decomposition n={n}", decomposition_check(n, N), f"order {N}")
              for n in ns]
    return _checks_result("series decomposition", checks)


def cmd_verify(args):
    name = args.suite
    if name == "all":
        checks = []
        for suite in sorted(verify.SUITES):
            for c in _run_suite(suite, args):
                checks.append(verify.Check(f"{suite}: {c.name}", c.passed, c.detail))
        return _checks_result("verify all", checks, {"seed": args.seed})
    return _checks_result(f"verify {name}", _run_suite(name, args), {"seed": args.seed})


def _run_suite(name: str, args) -> list:
    if name == "axioms":
        cfg = verify.AxiomConfig(seed=args.seed, random_instances=args.samples)
        if args.max_arity is not None:
            cfg.max_arity = args.max_arity
        if args.colors is not None:
            cfg.colors = args.colors
        if args.coalgebra is not None:
            cfg.coalgebras = (args.coalgebra,)
        return verify.axioms(cfg)
    if name == "relations" and args.colors is not None:
        return verify.relations(max_colors=args.colors)
    return verify.SUITES[name]()


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--colors", type=int, default=None, help="number of colors n")

    coal = _Parser(add_help=False)
    coal.add_argument("--coalgebra", default="zero",
                      help="zero | max | file:PATH (dimension from --colors)")

    p = _Parser(prog="gregops", description="Greg trees, their deformations and Koszul duals.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("dims", parents=[common], help="tree counts by arity")
    s.add_argument("--max-arity", type=int, default=4)
    s.add_argument("--by-weight", action="store_true")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("enumerate", parents=[common], help="list canonical trees")
    s.add_argument("--arity", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("compose", parents=[common, coal], help="partial composition T o_i S")
    s.add_argument("T")
    s.add_argument("i", type=int)
    s.add_argument("S")
    s.add_argument("--std", action="store_true", help="renumber inputs to 1..arity")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("fall", parents=[common, coal], help="deformed fall product S * T")
    s.add_argument("S")
    s.add_argument("T")
    s.set_defaults(func=cmd_fall)

    s = sub.add_parser("brace", parents=[common, coal], help="symmetric brace Br(S; T1..Tk)")
    s.add_argument("S")
    s.add_argument("forest", nargs="*")
    s.set_defaults(func=cmd_brace)

    s = sub.add_parser("rank", parents=[common], help="rank of tree vectors")
    s.add_argument("vectors", nargs="+")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("xn-rank", parents=[common], help="rank of the corolla-with-Lie span")
    s.add_argument("--max-arity", type=int, default=5)
    s.set_defaults(func=cmd_xn_rank)

    s = sub.add_parser("words", parents=[common], help="decorated words of the dual")
    s.add_argument("action", choices=("normalize", "dim"))
    s.add_argument("expr", nargs="?")
    s.add_argument("--max-arity", type=int, default=6)
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("gb", parents=[common, coal], help="shuffle Groebner bases")
    s.add_argument("action", choices=("expand", "complete", "count", "shapes"))
    s.add_argument("--preset", choices=PRESENTATIONS, default="greg-dual",
                   help="presentation: greg, greg-dual, perm or prelie")
    s.add_argument("--relations", help="file of shuffle relations, one per line")
    s.add_argument("--order", default="dlp", help="dlp, prdl, rdlp, wprdl, optionally rev-")
    s.add_argument("--arity", type=int, default=4)
    s.add_argument("--sub", type=int, default=1, help="sub-alphabet g1..gk for shapes")
    s.add_argument("--list", action="store_true", help="list normal forms (count)")
    s.add_argument("--show-rules", action="store_true")
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("series", parents=[common], help="generating series")
    s.add_argument("action", choices=("egf", "poly", "cyclie", "koszul", "decomposition"))
    s.add_argument("--order", type=int, default=10)
    s.add_argument("--n", type=int, default=None, help="fix the parameter n")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("verify", parents=[common], help="verification suites")
    s.add_argument("suite", choices=sorted(verify.SUITES) + ["all"])
    s.add_argument("--coalgebra", default=None, help="axioms only: zero | max | file:PATH")
    s.add_argument("--max-arity", type=int, default=None)
    s.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    s.add_argument("--samples", type=int, default=200, help="random instances per identity")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str]) -> CommandResult:
    parser = build_parser()
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except UsageError as e:
        return CommandResult(USAGE, str(e))
    except SystemExit as e:  # --help
        return CommandResult(OK if not e.code else USAGE, out.getvalue())
    if not getattr(args, "func", None):
        return CommandResult(USAGE, parser.format_help())
    try:
        code, lines, data = args.func(args)
    except UsageError as e:
        return CommandResult(USAGE, f"{parser.prog}: error: {e}\n")
    except (ValueError, KeyError, OSError) as e:
        return CommandResult(USAGE, f"{parser.prog}: error: {e}\n")
    data = {**data, "exit_code": code}
    if getattr(args, "json", False):
        report = json.dumps(data, indent=2, sort_keys=True) + "\n"
    else:
        report = "\n".join(lines) + "\n"
    return CommandResult(code, report, data)


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if res.exit_code == USAGE else sys.stdout
    stream.write(res.report)
    return res.exit_code
