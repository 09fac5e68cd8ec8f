"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (Jacobi violation, oracle FAIL,
irregular input), 2 parse or usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import lie, oracle, reduce, symmetrize
from .errors import (
    ExpressionError, NotALieAlgebra, NotHomogeneousError, NotRegularError,
    ResourceLimitError, SpecFormatError,
)
from .freealg import FreePoly, format_scalar
from .parsing import parse_poly

EXIT_OK, EXIT_SEMANTIC, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(arg: str, stdin) -> str:
    if arg == "-":
        return stdin.read()
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


def _load_table(arg: str, stdin) -> lie.BracketTable:
    """A spec path, ``-`` for stdin, or a ``family:n`` shorthand such as ``heisenberg:1``."""
    if arg == "-":
        return lie.parse_spec(stdin.read())
    if os.path.exists(arg):
        try:
            return lie.load_spec(arg)
        except UnicodeDecodeError:
            raise SpecFormatError("spec file is not valid UTF-8") from None
    family, sep, size = arg.partition(":")
    if sep and family in lie.FAMILIES and size.isdigit():
        return lie.builtin(family, int(size))
    raise UsageError(f"no such spec file: {arg}")


def _names(t):
    return t.generator_names() if t is not None else None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="envalg",
        description="Exact computations in universal enveloping algebras.",
    )
    sub = ap.add_subparsers(dest="verb", required=True, metavar="command")

    p = sub.add_parser("check", help="validate structure constants (Jacobi identity)")
    p.add_argument("spec")

    p = sub.add_parser("normalize", help="regular or ordered-monomial normal form")
    p.add_argument("--basis", choices=("regular", "ordered"), default="ordered")
    p.add_argument("--trace", action="store_true", help="print the rewrite steps")
    p.add_argument("--force", action="store_true", help="proceed even if Jacobi fails")
    p.add_argument("spec")
    p.add_argument("expr")

    p = sub.add_parser("symmetrize", help="symmetrize the commutative reading of an expression")
    p.add_argument("expr")

    p = sub.add_parser("decompose", help="write a regular polynomial as powers of linear forms")
    p.add_argument("--digit-budget", type=int, default=symmetrize.DEFAULT_DIGIT_BUDGET)
    p.add_argument("spec_or_n", metavar="spec-or-n")
    p.add_argument("expr")

    for verb, helptext in (("residue", "Jacobi residue of a triple"),
                           ("witness", "trinomial combination equal to a nonzero Jacobi residue")):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("spec")
        for name in ("i", "j", "k"):
            p.add_argument(name, type=int)

    p = sub.add_parser("oracle", help="certify the ordered-monomial basis by row reduction")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_DIMENSION_CAP)
    p.add_argument("spec")

    p = sub.add_parser("basis-matrix", help="symmetrized <-> ordered change-of-basis matrices")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("spec")

    p = sub.add_parser("builtin", help="emit a spec file for a builtin family")
    p.add_argument("family", choices=sorted(lie.FAMILIES))
    p.add_argument("n", type=int)
    return ap


def _check_triple(t, args):
    for v in (args.i, args.j, args.k):
        if not 1 <= v <= t.n:
            raise UsageError(f"generator index {v} outside 1..{t.n}")


def run(args, out, err, stdin) -> int:
    verb = args.verb
    if verb == "builtin":
        if args.n < 1:
            raise UsageError("n must be at least 1")
        out.write(lie.dump_spec(lie.builtin(args.family, args.n), f"{args.family}({args.n})"))
        return EXIT_OK

    if verb == "symmetrize":
        p = parse_poly(_read_text(args.expr, stdin))
        out.write(symmetrize.phi(symmetrize.commutative_image(p)).render() + "\n")
        return EXIT_OK

    if verb == "decompose":
        arg = args.spec_or_n
        if arg.isdigit():
            table, n = None, int(arg)
            if n < 1:
                raise UsageError("generator count must be at least 1")
        else:
            table = _load_table(arg, stdin)
            n = table.n
        p = parse_poly(_read_text(args.expr, stdin), table, n)
        if p.n != n:
            raise UsageError(f"expression uses more than {n} generators")
        if not symmetrize.is_regular(p):
            err.write("error: polynomial is not regular\n")
            return EXIT_SEMANTIC
        names = _names(table)
        blocks = []
        for m in sorted({len(w) for w in p.words()}, reverse=True):
            dec = symmetrize.power_decomposition(p.component(m), digit_budget=args.digit_budget)
            blocks.append(dec.render(names))
        out.write(("\n".join(blocks) if blocks else "0") + "\n")
        return EXIT_OK

    table = _load_table(args.spec, stdin)
    names = table.generator_names()

    if verb == "check":
        v = lie.validate(table)
        if isinstance(v, lie.ValidatedLie):
            out.write(f"valid Lie algebra ({table.n} generators, {len(v.certificate)} Jacobi triples checked)\n")
            return EXIT_OK
        out.write(v.render() + "\n")
        return EXIT_SEMANTIC

    if verb == "residue":
        _check_triple(table, args)
        out.write(lie.jacobi_residue(table, args.i, args.j, args.k).render(names) + "\n")
        return EXIT_OK

    if verb == "witness":
        _check_triple(table, args)
        try:
            value, trace = reduce.nonuniqueness_witness(table, args.i, args.j, args.k)
        except reduce.ResidueZero as exc:
            err.write(f"error: {exc}\n")
            return EXIT_SEMANTIC
        out.write(value.render(names) + "\n")
        out.write(trace.render(names) + "\n")
        return EXIT_OK

    if verb == "normalize":
        p = parse_poly(_read_text(args.expr, stdin), table)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", reduce.NonCanonicalWarning)
            if args.basis == "regular":
                result, trace = reduce.reduce_to_regular(p, table, force=args.force)
            else:
                result, trace = reduce.pbw_straighten(p, table, force=args.force)
        if not trace.canonical:
            err.write("warning: Jacobi identity fails; result is not canonical\n")
        out.write(result.render(names) + "\n")
        if args.trace:
            out.write(trace.render(names) + ("\n" if trace.steps else ""))
        return EXIT_OK

    if verb == "oracle":
        if args.max_degree < 0:
            raise UsageError("--max-degree must be nonnegative")
        report = oracle.check_pbw_independence(table, args.max_degree, cap=args.cap)
        out.write(report.render() + "\n")
        return EXIT_OK if report.passed else EXIT_SEMANTIC

    if verb == "basis-matrix":
        if args.max_degree < 0:
            raise UsageError("--max-degree must be nonnegative")
        bc = reduce.basis_change(table, args.max_degree)
        out.write("basis: " + " ".join("(" + ",".join(map(str, a)) + ")" for a in bc.indices) + "\n")
        for title, mat in (("symmetrized -> ordered", bc.sym_to_ordered),
                           ("ordered -> symmetrized", bc.ordered_to_sym)):
            out.write(title + ":\n")
            for row in mat:
                out.write("  " + " ".join(format_scalar(x) for x in row) + "\n")
        return EXIT_OK

    raise UsageError(f"unknown command {verb}")


def main(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args, out, err, stdin)
    except (SpecFormatError, ExpressionError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NotALieAlgebra as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except (NotRegularError, NotHomogeneousError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except ResourceLimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
