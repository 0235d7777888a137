"""Command line front end.

Expressions use ``+`` for the tropical sum (max), ``*`` for the tropical
product (ordinary +) and ``^`` for tropical powers. Exit status is 0 on
success, 1 on a domain error and 2 on unreadable input.
"""

import argparse
import sys
from typing import Optional, Sequence

from . import documents as docs
from .congruence import (
    booleanize_basis,
    curve_kernel_check,
    decompose_components,
    e_invariant_compare,
    krull_dimension,
)
from .core import NEG_INF, canonicalize, clear_denominators, evaluate
from .errors import DomainError, ParseError
from .parse import format_rational, render_poly
from .prime import basis_in_prime, is_t_admissible, krull_of_prime, pair_in_prime, prime_chain
from .prime import witness_boolean_prime, witness_prime
from .variety import hypersurface, rays, variety_of_basis, variety_to_pair

SEMANTICS = "'+' is max, '*' is ordinary addition, '^' repeats '*'"


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, kind: str):
    return docs.loads(_read(path), expect=kind)


def _fmt(v) -> str:
    return "-inf" if v is NEG_INF else format_rational(v)


def _cells_text(cells) -> str:
    lines = []
    for i, c in enumerate(cells):
        rows = "; ".join(f"[{' '.join(_fmt(v) for v in a)}] . x >= {_fmt(r)}" for a, r in c.rows)
        lines.append(f"cell {i}: {rows or 'R^n'}")
    return "\n".join(lines) if lines else "(empty)"


def _matrix_text(U) -> str:
    if not U.rows:
        return f"(0 x {U.n + 1} matrix)"
    return "\n".join(" ".join(_fmt(v) for v in r) for r in U.rows)


def cmd_variety(args):
    B = _load(args.basis, "basis")
    V = variety_of_basis(B)
    return docs.cells_doc(B.n, V.cells), _cells_text(V.cells)


def cmd_krull(args):
    B = _load(args.basis, "basis")
    rep = krull_dimension(B).as_dict()
    text = "\n".join(f"{k} = {v}" for k, v in rep.items())
    return rep, text


def cmd_boolean(args):
    B = booleanize_basis(_load(args.basis, "basis"))
    doc = docs.basis_doc(B)
    return doc, "\n".join(f"{a} == {b}" for a, b in doc["pairs"])


def cmd_prime(args):
    if args.action == "check":
        n, rows = docs.loads(_read(args.matrix), expect="matrix", strict=False)
        if rows and any(len(r) != n + 1 for r in rows):
            raise ParseError(f"matrix rows must have {n + 1} entries")
        ok = is_t_admissible(rows)
        rep = {"t_admissible": ok, "krull": krull_of_prime(rows) if ok else None}
        return rep, f"t-admissible, rank {rep['krull']}" if ok else "not t-admissible"
    U = _load(args.matrix, "matrix")
    if args.action == "member":
        if args.basis is None:
            raise ParseError("'prime member' needs a basis document")
        B = _load(args.basis, "basis")
        if B.n != U.n:
            raise DomainError(f"matrix has n = {U.n} but the basis has n = {B.n}")
        each = [pair_in_prime(U, f, g) for f, g in B.pairs]
        rep = {"member": basis_in_prime(U, B), "pairs": each}
        return rep, ("contained" if rep["member"] else "not contained")
    steps = []
    lines = []
    for Ui, pair in prime_chain(U):
        step = {"rows": docs.matrix_doc(Ui)["rows"]}
        step["pair"] = None if pair is None else [render_poly(pair[0]), render_poly(pair[1])]
        steps.append(step)
        lines.append(f"U({Ui.rank}): " + ("end" if pair is None else f"{step['pair'][0]} == {step['pair'][1]}"))
    return {"chain": steps}, "\n".join(lines)


def cmd_witness(args):
    B = _load(args.basis, "basis")
    U = witness_boolean_prime(B) if args.boolean else witness_prime(B)
    return docs.matrix_doc(U), _matrix_text(U)


def cmd_rays(args):
    V = variety_of_basis(_load(args.basis, "basis"))
    recs = [{"direction": list(r.direction), "cells": [docs.cell_obj(c) for c in r.cells]} for r in rays(V)]
    text = "\n".join(f"ray {i}: direction ({', '.join(map(str, r['direction']))}), {len(r['cells'])} cell(s)"
                     for i, r in enumerate(recs))
    return recs, text or "(no rays)"


def cmd_components(args):
    B = _load(args.basis, "basis")
    dec = decompose_components(B)
    comps = []
    for C, (p, q) in dec.components:
        lhs, rhs = clear_denominators(p, q)
        comps.append({"cells": docs.cells_doc(B.n, C.cells)["cells"],
                      "pair": [render_poly(lhs), render_poly(rhs)]})
    star = "N/A" if dec.star_condition is None else dec.star_condition
    text = f"{len(comps)} component(s), star condition: {star}"
    return {"components": comps, "star_condition": star}, text


def cmd_check_curve(args):
    B = _load(args.basis, "basis")
    rep = curve_kernel_check(B).as_dict()
    if rep["no_dup_rays"] != "N/A":
        try:
            rep["e_invariant"] = e_invariant_compare(B).as_dict()
        except DomainError:
            rep["e_invariant"] = "N/A"
    return rep, "\n".join(f"{k}: {v}" for k, v in rep.items())


def cmd_construct(args):
    cells = _load(args.cells, "cells")
    if not cells:
        raise DomainError("at least one cell is required")
    p, q = variety_to_pair(cells)
    lhs, rhs = clear_denominators(p, q)
    doc = {"kind": "basis", "vars": cells[0].n, "pairs": [[render_poly(lhs), render_poly(rhs)]]}
    return doc, f"{doc['pairs'][0][0]} == {doc['pairs'][0][1]}"


def cmd_hypersurface(args):
    f = _load(args.poly, "poly")
    H = hypersurface(f)
    return docs.cells_doc(f.n, H.cells), _cells_text(H.cells)


def cmd_canon(args):
    f = canonicalize(_load(args.poly, "poly"))
    return docs.poly_doc(f), render_poly(f)


def _point(text: str, n: int):
    if text.endswith(".json") or text == "-":
        x = _load(text, "point")
    else:
        x = tuple(docs.rational(v.strip(), "coordinate") for v in text.split(","))
    if len(x) != n:
        raise ParseError(f"point has {len(x)} coordinates, expected {n}")
    return x


def cmd_eval(args):
    f = _load(args.poly, "poly")
    v = evaluate(f, _point(args.at, f.n))
    return {"value": docs.encode_rational(v)}, _fmt(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS,
                        help="output format (default: json)")
    parser = argparse.ArgumentParser(
        prog="tropcong",
        description=f"Congruence varieties and Krull dimensions over the tropical semifield ({SEMANTICS}).",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *positional):
        p = sub.add_parser(name, parents=[common], help=help_,
                           description=f"{help_}. Expressions: {SEMANTICS}.")
        for arg, h in positional:
            p.add_argument(arg, help=h)
        p.set_defaults(func=func)
        return p

    basis = ("basis", "basis document, '-' for stdin")
    add("variety", cmd_variety, "cells of V(T)", basis)
    add("dim", cmd_krull, "dimensions of V(T), V(T_B) and the Krull dimension", basis)
    add("krull", cmd_krull, "dimensions of V(T), V(T_B) and the Krull dimension", basis)
    add("boolean", cmd_boolean, "Booleanized basis", basis)
    p = add("prime", cmd_prime, "t-admissible matrix tools")
    p.add_argument("action", choices=("check", "member", "chain"))
    p.add_argument("matrix", help="matrix document")
    p.add_argument("basis", nargs="?", help="basis document (for member)")
    p = add("witness", cmd_witness, "a maximal-rank prime containing the basis", basis)
    p.add_argument("--boolean", action="store_true", help="zero first column witness")
    add("rays", cmd_rays, "unbounded rays of a variety of dimension <= 1", basis)
    add("components", cmd_components, "connected components with defining pairs", basis)
    add("check-curve", cmd_check_curve, "tropical curve kernel conditions", basis)
    add("construct", cmd_construct, "a pair whose variety is a given union of cells",
        ("cells", "cells document"))
    add("hypersurface", cmd_hypersurface, "cells of the tropical hypersurface", ("poly", "poly document"))
    add("canon", cmd_canon, "canonical form of a polynomial", ("poly", "poly document"))
    p = add("eval", cmd_eval, "evaluate a polynomial", ("poly", "poly document"))
    p.add_argument("--at", required=True, help="comma-separated rationals or a point document")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        doc, text = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fmt = getattr(args, "format", "json")
    print(docs.dumps(doc) if fmt == "json" else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
