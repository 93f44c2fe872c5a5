"""Command-line verbs.

Exit codes: 0 success, 2 usage or input error, 3 mathematical error (the
exception name is printed on standard error).
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .. import bases, bellcalc, hopf, linalg, report, suites
from ..errors import HopfCalcError, InputError, MathError
from .expr import dumps, format_lc, lc_to_json, parse_expr

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 2, 3

ALGEBRAS = ("free-q", "shuffle", "poly", "trace", "group", "free-grouplike", "ldiag", "diag",
            "cauchy-concat", "swap-coproduct")

# Kernel operations and the single verb that exposes each of them.
VERB_OPS = {
    "coprod": ("hopf.coproduct",),
    "prod": ("hopf.product", "bases.ldiag_concat", "bases.trace_normal_form"),
    "antipode": ("hopf.antipode",),
    "counit": ("hopf.counit",),
    "pair": ("linalg.lc_pair",),
    "infiltrate": ("hopf.infiltration",),
    "bell": ("bellcalc.bell", "bellcalc.set_partitions"),
    "stirling": ("bellcalc.stirling2",),
    "bellpoly": ("bellcalc.bell_polynomial",),
    "hadamard": ("bellcalc.hadamard", "bellcalc.egf_mul", "bellcalc.egf_exp", "bellcalc.egf_log",
                 "bellcalc.hadamard_via_partitions", "bellcalc.hadamard_via_diagrams"),
    "diag-canon": ("bases.diag_canonical", "bases.spot_types", "bases.diagram_from_partitions"),
    "diag-restrict": ("bases.ldiag_restrict",),
    "mult": ("bellcalc.mult_of_diagram",),
    "check": ("hopf.check_bialgebra", "hopf.duality_check", "reps.rep_apply", "reps.rep_tensor"),
}


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def print_help(self, file=None):
        # --help: hand the text back to run_command instead of writing it
        raise _HelpExit(self.format_help())

    def exit(self, status=0, message=None):
        raise _HelpExit(message or "")


class _HelpExit(Exception):
    pass


class CommandResult(tuple):
    """``(exit code, standard output)`` with the standard error text in ``.error``."""

    def __new__(cls, code: int, out: str, error: str = ""):
        obj = super().__new__(cls, (code, out))
        obj.error = error
        return obj

    @property
    def code(self) -> int:
        return self[0]

    @property
    def out(self) -> str:
        return self[1]


# ----------------------------------------------------------------- helpers

def _algebra(args) -> hopf.BialgebraOps:
    name = args.alg
    alphabet = args.alphabet
    if name == "free-q":
        return hopf.free_concat_unshuffle(alphabet or "ab", args.q)
    if name == "shuffle":
        return hopf.shuffle_deconcat(alphabet or "ab", args.q)
    if name == "poly":
        return hopf.poly_binomial(alphabet or "ab")
    if name == "trace":
        return hopf.trace_unshuffle(alphabet or "abc", _theta(args.theta))
    if name == "group":
        return hopf.group_algebra(bases.group_from_name(args.group))
    if name == "free-grouplike":
        return hopf.free_grouplike(alphabet or "ab")
    if name == "ldiag":
        return hopf.ldiag()
    if name == "diag":
        return hopf.diag()
    if name == "cauchy-concat":
        return hopf.cauchy_concat(alphabet or "ab")
    return hopf.swap_coproduct()


def _theta(text: str):
    pairs = [p.strip() for p in text.split(",") if p.strip()]
    for p in pairs:
        if len(p) != 2:
            raise UsageError(f"commutation pairs are two letters, got {p!r}")
    return bases.CommutationGraph.of(pairs)


def _rational(text: str) -> Fraction:
    try:
        return linalg.to_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _series(text: str) -> bellcalc.EGFSeries:
    return bellcalc.EGFSeries.of([_rational(c) for c in text.split(",")])


def _matrix(text: str) -> bases.LabelledDiagram:
    return bases.LabelledDiagram(bases.parse_matrix(text))


def _partition(text: str) -> bellcalc.SetPartition:
    """``{{1,2},{3}}`` or ``12|3``-style block lists (``1,2|3`` for n > 9)."""
    s = "".join(text.split())
    if s.startswith("{"):
        if not re.fullmatch(r"\{(\{\d+(,\d+)*\}(,\{\d+(,\d+)*\})*)?\}", s):
            raise UsageError(f"bad partition {text!r}")
        blocks = [[int(x) for x in b.split(",")] for b in re.findall(r"\{([\d,]+)\}", s)]
    elif s:
        blocks = [[int(x) for x in (b.split(",") if "," in b else b)] for b in s.split("|")]
    else:
        blocks = []
    try:
        return bellcalc.SetPartition.of(blocks)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _types(t: dict) -> str:
    return ",".join(f"{k}:{v}" for k, v in t.items()) or "-"


def _lc_out(X, fmt: str) -> str:
    return dumps(lc_to_json(X)) if fmt == "json" else format_lc(X)


def _scalar_out(x, fmt: str) -> str:
    return dumps(str(x)) if fmt == "json" else str(x)


def _series_out(F: bellcalc.EGFSeries, fmt: str) -> str:
    if fmt == "json":
        return dumps([str(c) for c in F.coeffs])
    return ",".join(str(c) for c in F.coeffs)


# ------------------------------------------------------------------- verbs

def _parse_all(args, alg):
    return [parse_expr(e, alg) for e in args.expr]


def cmd_coprod(args):
    alg = _algebra(args)
    (X,) = _parse_all(args, alg)
    return _lc_out(hopf.coproduct(alg, X), args.format)


def cmd_prod(args):
    alg = _algebra(args)
    Xs = _parse_all(args, alg)
    out = Xs[0]
    for Y in Xs[1:]:
        out = hopf.product(alg, out, Y)
    return _lc_out(out, args.format)


def cmd_antipode(args):
    alg = _algebra(args)
    (X,) = _parse_all(args, alg)
    return _lc_out(hopf.antipode(alg, X), args.format)


def cmd_counit(args):
    alg = _algebra(args)
    (X,) = _parse_all(args, alg)
    return _scalar_out(hopf.counit(alg, X), args.format)


def cmd_pair(args):
    alg = _algebra(args)
    X, Y = _parse_all(args, alg)
    return _scalar_out(linalg.lc_pair(X, Y), args.format)


def cmd_infiltrate(args):
    alg = hopf.shuffle_deconcat(args.alphabet or "ab", args.q)
    X, Y = (parse_expr(e, alg) for e in args.expr)
    acc = linalg.LinComb.zero()
    for u, cu in X.terms():
        for v, cv in Y.terms():
            acc = linalg.lc_combine(1, acc, cu * cv, hopf.infiltration(u, v, args.q))
    return _lc_out(acc, args.format)


def cmd_bell(args):
    if args.list:
        parts = bellcalc.set_partitions(args.n)
        if args.format == "json":
            return dumps([[list(b) for b in P.blocks] for P in parts])
        return "\n".join(str(P) for P in parts)
    if args.table or args.plot:
        rows = bellcalc.bell_table(args.n, diagram_upto=min(args.diagram_upto, bellcalc.MAX_DIAGRAM_ORDER))
        if args.plot:
            report.plot_table(rows, args.plot)
        if args.format == "csv":
            return report.table_csv(rows)
        if args.format == "json":
            return dumps(rows)
        return report.table_text(rows)
    return _scalar_out(bellcalc.bell(args.n), args.format)


def cmd_stirling(args):
    if args.k is None:
        row = [bellcalc.stirling2(args.n, k) for k in range(args.n + 1)]
        return dumps([str(x) for x in row]) if args.format == "json" else " ".join(map(str, row))
    return _scalar_out(bellcalc.stirling2(args.n, args.k), args.format)


def cmd_bellpoly(args):
    P = bellcalc.bell_polynomial(args.n)
    return dumps(lc_to_json(P)) if args.format == "json" else str(P)


def cmd_hadamard(args):
    if args.series:
        series = [_series(s) for s in args.series]
        op = args.op
        arity = 1 if op in ("exp", "log") else 2
        if len(series) != arity:
            raise UsageError(f"--op {op} takes {arity} series")
        fn = {"hadamard": bellcalc.hadamard, "mul": bellcalc.egf_mul,
              "exp": bellcalc.egf_exp, "log": bellcalc.egf_log}[op]
        return _series_out(fn(*series), args.format)
    if args.order is None:
        raise UsageError("give coefficient lists or --order")
    if args.op != "hadamard":
        raise UsageError(f"--op {args.op} needs coefficient lists")
    route = bellcalc.hadamard_via_diagrams if args.route == "diagrams" else bellcalc.hadamard_via_partitions
    H = route(args.order)
    if args.format == "json":
        return dumps([lc_to_json(c) for c in H.coeffs])
    return "\n".join(f"{n}: {c}" for n, c in enumerate(H.coeffs))


def cmd_diag_canon(args):
    if args.partitions:
        if len(args.input) != 2:
            raise UsageError("--partitions takes two partitions")
        d = bases.diagram_from_partitions(_partition(args.input[0]), _partition(args.input[1]))
    else:
        if len(args.input) != 1:
            raise UsageError("diag-canon takes one matrix")
        d = _matrix(args.input[0])
    shown = d if args.labelled else bases.diag_canonical(d).canon
    lines = [str(shown)]
    if args.types:
        white, black = bases.spot_types(d)
        lines += [f"white {_types(white)}", f"black {_types(black)}"]
    if args.format == "json":
        out = {"diagram": str(shown)}
        if args.types:
            out.update(white={str(k): v for k, v in white.items()}, black={str(k): v for k, v in black.items()})
        return dumps(out)
    return "\n".join(lines)


def cmd_diag_restrict(args):
    d = _matrix(args.matrix)
    try:
        rows = [int(x) for x in args.rows.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad row list {args.rows!r}") from None
    return _scalar_out(bases.ldiag_restrict(d, rows), args.format)


def cmd_mult(args):
    d = _matrix(args.matrix)
    n = d.degree if args.n is None else args.n
    return _scalar_out(bellcalc.mult_of_diagram(bases.diag_canonical(d), n), args.format)


def cmd_check(args):
    bounds = suites.Bounds.from_env()
    if args.degree is not None:
        d = args.degree
        bounds = suites.Bounds(word_len=d, trace_len=d, trace_antipode_len=min(d, 3), diagram_edges=d)
    results = suites.run_suites(args.suite, bounds)
    if not results:
        raise UsageError(f"no suite matches {args.suite!r}")
    if args.format == "json":
        text = dumps([{"suite": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail} for r in results])
    else:
        width = max(len(r.name) for r in results)
        lines = [f"{'suite'.ljust(width)}  result  cases"]
        for r in results:
            line = f"{r.name.ljust(width)}  {'PASS' if r.passed else 'FAIL'}    {r.cases}"
            lines.append(line + (f"  {r.detail}" if r.detail and not r.passed else ""))
        npass = sum(r.passed for r in results)
        lines.append(f"{npass}/{len(results)} suites passed")
        text = "\n".join(lines)
    return text, all(r.passed for r in results)


HANDLERS = {
    "coprod": cmd_coprod, "prod": cmd_prod, "antipode": cmd_antipode, "counit": cmd_counit,
    "pair": cmd_pair, "infiltrate": cmd_infiltrate, "bell": cmd_bell, "stirling": cmd_stirling,
    "bellpoly": cmd_bellpoly, "hadamard": cmd_hadamard, "diag-canon": cmd_diag_canon,
    "diag-restrict": cmd_diag_restrict, "mult": cmd_mult, "check": cmd_check,
}


# ------------------------------------------------------------------ parser

def _nonneg(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfcalc", description="Exact computations in combinatorial Hopf algebras.")
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    alg = _Parser(add_help=False)
    alg.add_argument("--alg", choices=ALGEBRAS, default="free-q")
    alg.add_argument("--q", type=_rational, default=Fraction(0))
    alg.add_argument("--alphabet", default=None)
    alg.add_argument("--group", default="C3")
    alg.add_argument("--theta", default="ac", help="commuting letter pairs, e.g. ac,bd")

    for verb, nargs, helptext in (
        ("coprod", 1, "coproduct of an expression"),
        ("prod", "+", "product of one or more expressions"),
        ("antipode", 1, "antipode of an expression"),
        ("counit", 1, "counit of an expression"),
        ("pair", 2, "Kronecker pairing of two expressions"),
    ):
        sp = sub.add_parser(verb, parents=[alg], help=helptext)
        sp.add_argument("expr", nargs=nargs)
        fmt(sp)

    sp = sub.add_parser("infiltrate", help="q-infiltration product of two word expressions")
    sp.add_argument("expr", nargs=2)
    sp.add_argument("--q", type=_rational, default=Fraction(0))
    sp.add_argument("--alphabet", default=None)
    fmt(sp)

    sp = sub.add_parser("bell", help="Bell number, partition list or table")
    sp.add_argument("n", type=_nonneg)
    sp.add_argument("--list", action="store_true", help="list the set partitions of [1..n]")
    sp.add_argument("--table", action="store_true", help="table for 0..n")
    sp.add_argument("--diagram-upto", type=_nonneg, default=5)
    sp.add_argument("--plot", metavar="PATH", help="also save a figure of the table")
    fmt(sp, ("text", "json", "csv"))

    sp = sub.add_parser("stirling", help="Stirling number S(n,k), or row n")
    sp.add_argument("n", type=_nonneg)
    sp.add_argument("k", type=_nonneg, nargs="?")
    fmt(sp)

    sp = sub.add_parser("bellpoly", help="Bell polynomial B_n(y)")
    sp.add_argument("n", type=_nonneg)
    fmt(sp)

    sp = sub.add_parser("hadamard", help="EGF arithmetic and the Hadamard product")
    sp.add_argument("series", nargs="*", help="coefficient lists c0,c1,...,cN")
    sp.add_argument("--op", choices=("hadamard", "mul", "exp", "log"), default="hadamard")
    sp.add_argument("--order", type=_nonneg)
    sp.add_argument("--route", choices=("partitions", "diagrams"), default="partitions")
    fmt(sp)

    sp = sub.add_parser("diag-canon", help="canonical form of a diagram")
    sp.add_argument("input", nargs="+", help="matrix, or two partitions with --partitions")
    sp.add_argument("--partitions", action="store_true")
    sp.add_argument("--labelled", action="store_true", help="print the labelled matrix")
    sp.add_argument("--types", action="store_true", help="also print white and black spot types")
    fmt(sp)

    sp = sub.add_parser("diag-restrict", help="restriction of a labelled diagram to black spots")
    sp.add_argument("matrix")
    sp.add_argument("rows", help="comma-separated 1-based black spots")
    fmt(sp)

    sp = sub.add_parser("mult", help="number of partition pairs giving a diagram")
    sp.add_argument("matrix")
    sp.add_argument("--n", type=_nonneg)
    fmt(sp)

    sp = sub.add_parser("check", help="run the property suites")
    sp.add_argument("--suite", help="only suites whose name contains this text")
    sp.add_argument("--degree", type=_nonneg, help="corpus degree bound")
    fmt(sp)
    return p


def run_command(argv) -> CommandResult:
    """Run one invocation; never raises for user or mathematical errors."""
    try:
        args = build_parser().parse_args(list(argv))
    except _HelpExit as h:
        return CommandResult(EXIT_OK, str(h).rstrip("\n"))
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, "", f"UsageError: {exc}")
    try:
        result = HANDLERS[args.verb](args)
    except MathError as exc:
        return CommandResult(EXIT_MATH, "", f"{type(exc).__name__}: {exc}")
    except (HopfCalcError, ValueError) as exc:
        return CommandResult(EXIT_USAGE, "", f"{type(exc).__name__}: {exc}")
    if isinstance(result, tuple):
        text, ok = result
        return CommandResult(EXIT_OK if ok else 1, text)
    return CommandResult(EXIT_OK, result)


def main(argv=None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    if res.out:
        sys.stdout.write(res.out + "\n")
    if res.error:
        sys.stderr.write(res.error + "\n")
    return res.code
