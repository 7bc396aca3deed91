"""Command line front end.

Input files hold one entry per line, ``j s p/q`` for a parameter table or
``s p/q`` for a metabelian sequence; ``#`` starts a comment.  ``-`` reads
standard input.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .algebra import (DomainError, ParamTable, bracket_basis, derived_series,
                      format_rational, is_abelian_from, jacobi_check,
                      jacobi_polynomials)
from .automorphism import MetabelianSeq, horizon, lift
from .classify import RootObstruction, canonicalize, iso_equivalent
from .generators import m0, witt_positive, witt_subalgebra

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_ROOT = 4

MIN_TRUNC, MAX_TRUNC = 3, 200

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_INDEX = re.compile(r"^\d+$")


class ParseError(ValueError):
    pass


def _parse_rational(tok, where):
    if not _RATIONAL.match(tok):
        raise ParseError(f"{where}: bad rational {tok!r}")
    num, _, den = tok.partition("/")
    num, den = int(num), int(den or 1)
    if den == 0:
        raise ParseError(f"{where}: zero denominator")
    q = Fraction(num, den)
    if not q:
        raise ParseError(f"{where}: zero entries are not allowed")
    if (q.numerator, q.denominator) != (num, den):
        raise ParseError(f"{where}: {tok} is not in lowest terms")
    return q


def _parse_index(tok, where):
    if not _INDEX.match(tok) or int(tok) < 1:
        raise ParseError(f"{where}: bad index {tok!r}")
    return int(tok)


def parse_entries(text, name="<input>"):
    """Parse table-file text into ``(width, {key: value})`` with width 2 or 3."""
    entries = {}
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{name}:{lineno}"
        toks = line.split()
        if len(toks) not in (2, 3):
            raise ParseError(f"{where}: expected 'j s p/q' or 's p/q'")
        if width is None:
            width = len(toks)
        elif width != len(toks):
            raise ParseError(f"{where}: mixed table and sequence lines")
        key = tuple(_parse_index(t, where) for t in toks[:-1])
        if key in entries:
            raise ParseError(f"{where}: duplicate entry {' '.join(toks[:-1])}")
        entries[key] = _parse_rational(toks[-1], where)
    return width, entries


def read_table(text, name="<input>"):
    width, entries = parse_entries(text, name)
    if width == 2:
        return lift(MetabelianSeq({k[0]: v for k, v in entries.items()}))
    return ParamTable(entries)


def read_seq(text, name="<input>"):
    width, entries = parse_entries(text, name)
    if width == 3:
        if any(j != 1 for j, _ in entries):
            raise DomainError(f"{name}: table has rows j > 1, not a metabelian sequence")
        return MetabelianSeq({s: v for (_, s), v in entries.items()})
    return MetabelianSeq({k[0]: v for k, v in entries.items()})


def format_table(table):
    return [f"{j} {s} {format_rational(v)}" for (j, s), v in table]


def format_seq(seq):
    return [f"{s} {format_rational(v)}" for s, v in seq.items()]


def _load(path):
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as fh:
        return fh.read(), path


def _header(op, trunc, inputs):
    out = [f"# op: {op}", f"# trunc: {trunc}"]
    for name, lines in inputs:
        out.append(f"# input: {name}")
        out.extend(f"#   {ln}" for ln in lines)
    return out


def cmd_bracket(args):
    text, name = _load(args.table)
    table = read_table(text, name)
    k, m = args.pair
    el = bracket_basis(k, m, table, args.trunc)
    out = _header("bracket", args.trunc, [(name, format_table(table))])
    out.append(f"# pair: {k} {m}")
    out.append(str(el))
    return out, EXIT_OK


def cmd_jacobi(args):
    if args.symbolic:
        out = _header("jacobi --symbolic", args.trunc, [])
        polys = jacobi_polynomials(args.trunc)
        out.append(f"# polynomials: {len(polys)}")
        out.extend(str(p) for p in polys)
        return out, EXIT_OK
    if args.table is None:
        raise ParseError("jacobi needs a table file unless --symbolic is given")
    text, name = _load(args.table)
    table = read_table(text, name)
    report = jacobi_check(table, args.trunc)
    out = _header("jacobi", args.trunc, [(name, format_table(table))])
    out.extend(report.lines())
    return out, EXIT_OK


def cmd_series(args):
    text, name = _load(args.table)
    table = read_table(text, name)
    out = _header("series", args.trunc, [(name, format_table(table))])
    for n, span in enumerate(derived_series(table, args.trunc), 1):
        out.append(f"D{n} dim={span.dim} {span}")
    for k in range(2, args.trunc + 1):
        check = is_abelian_from(table, args.trunc, k)
        if check:
            out.append(f"abelian from L^{k}")
            break
        i, j = check.witness
        out.append(f"L^{k} not abelian: [e_{i}, e_{j}] != 0")
    return out, EXIT_OK


def cmd_canon(args):
    text, name = _load(args.seq)
    seq = read_seq(text, name)
    out = _header("canon", args.trunc, [(name, format_seq(seq))])
    canon = canonicalize(seq, args.trunc)
    out.append(str(canon))
    if isinstance(canon, RootObstruction):
        return out, EXIT_ROOT
    out.append(f"# certain for indices <= {horizon(args.trunc)}")
    return out, EXIT_OK


def cmd_iso(args):
    (t1, n1), (t2, n2) = _load(args.seqs[0]), _load(args.seqs[1])
    s1, s2 = read_seq(t1, n1), read_seq(t2, n2)
    out = _header("iso", args.trunc, [(n1, format_seq(s1)), (n2, format_seq(s2))])
    if iso_equivalent(s1, s2, args.trunc):
        out.append("ISOMORPHIC")
    else:
        out.append(f"NOT ISOMORPHIC (up to degree {args.trunc})")
    out.append(f"# certain for indices <= {horizon(args.trunc)}")
    return out, EXIT_OK


def cmd_gen(args):
    if args.name == "m0":
        table = m0(args.trunc)
    elif args.name == "witt":
        table = witt_positive(args.trunc)
    else:
        if args.k is None:
            raise ParseError("wittk needs the parameter k")
        table = witt_subalgebra(args.k, args.trunc)
    label = args.name if args.k is None else f"{args.name} {args.k}"
    out = _header(f"gen {label}", args.trunc, [])
    out.extend(format_table(table))
    return out, EXIT_OK


def _trunc(tok):
    try:
        n = int(tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {tok!r}")
    if not MIN_TRUNC <= n <= MAX_TRUNC:
        raise argparse.ArgumentTypeError(f"--trunc must lie in {MIN_TRUNC}..{MAX_TRUNC}")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="filiform", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--trunc", type=_trunc, required=True, metavar="N")
        sp.set_defaults(func=func)
        return sp

    sp = add("bracket", cmd_bracket, "evaluate [e_k, e_m]")
    sp.add_argument("table")
    sp.add_argument("--pair", type=int, nargs=2, required=True, metavar=("K", "M"))

    sp = add("jacobi", cmd_jacobi, "check the Jacobi identity below degree N")
    sp.add_argument("table", nargs="?")
    sp.add_argument("--symbolic", action="store_true",
                    help="print the quadratic conditions on a generic table")

    sp = add("canon", cmd_canon, "normal form of a metabelian sequence")
    sp.add_argument("seq")

    sp = add("iso", cmd_iso, "isomorphism test for two metabelian sequences")
    sp.add_argument("seqs", nargs=2)

    sp = add("series", cmd_series, "derived series and abelian terms")
    sp.add_argument("table")

    sp = add("gen", cmd_gen, "print a named table: m0 | witt | wittk K")
    sp.add_argument("name", choices=["m0", "witt", "wittk"])
    sp.add_argument("k", nargs="?", type=int)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines, code = args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
