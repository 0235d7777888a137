"""JSON documents: basis, matrix, cells, poly and point.

Rationals travel as integers or ``"p/q"`` strings, NEG_INF as ``"-inf"``;
floats are rejected. Polynomials are expression strings in the text
grammar or term lists ``[{"coeff": "3", "exp": [0, 2]}, ...]``.
"""

import json
from fractions import Fraction
from typing import Any

from .congruence import CongruenceBasis
from .core import NEG_INF, TropPoly
from .errors import ParseError
from .parse import format_rational, parse_poly, render_poly
from .polyhedra import PolyhedralSet
from .prime import TAdmissibleMatrix

KINDS = ("basis", "matrix", "cells", "poly", "point")


def rational(value, what: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{what}: floats and booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            num, _, den = text.partition("/")
            if den:
                if int(den) <= 0:
                    raise ValueError
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except ValueError:
            raise ParseError(f"{what}: {value!r} is not an integer or p/q") from None
    raise ParseError(f"{what}: expected a rational, got {type(value).__name__}")


def scalar(value, what: str = "value"):
    if value == "-inf":
        return NEG_INF
    return rational(value, what)


def encode_rational(q):
    """Integers as JSON numbers, other rationals as p/q strings."""
    if q is NEG_INF:
        return "-inf"
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else format_rational(q)


def poly_from(value, n: int) -> TropPoly:
    if isinstance(value, str):
        return parse_poly(value, n)
    if isinstance(value, list):
        terms = []
        for t in value:
            if not isinstance(t, dict) or set(t) != {"coeff", "exp"}:
                raise ParseError("terms must be objects with exactly 'coeff' and 'exp'")
            exp = t["exp"]
            if not isinstance(exp, list) or len(exp) != n or not all(
                isinstance(e, int) and not isinstance(e, bool) for e in exp
            ):
                raise ParseError(f"exponent must be a list of {n} integers")
            c = scalar(t["coeff"], "coeff")
            if c is not NEG_INF:
                terms.append((tuple(exp), c))
        return TropPoly(n, terms)
    raise ParseError("polynomial must be an expression string or a term list")


def _vars(doc: dict) -> int:
    n = doc.get("vars")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'vars' must be a positive integer")
    return n


def _kind(doc: dict) -> str:
    kind = doc.get("kind")
    if kind is None:
        for key, k in (("pairs", "basis"), ("rows", "matrix"), ("cells", "cells"),
                       ("poly", "poly"), ("point", "point")):
            if key in doc:
                return k
        raise ParseError("cannot tell the document kind")
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    return kind


def decode(doc: Any, expect: str = None, strict: bool = True):
    """The library object a parsed JSON document describes.

    With ``strict`` off a matrix document yields ``(n, rows)`` without the
    t-admissibility check.
    """
    if not isinstance(doc, dict):
        raise ParseError("a document must be a JSON object")
    kind = _kind(doc)
    if expect is not None and kind != expect:
        raise ParseError(f"expected a {expect} document, got {kind}")
    n = _vars(doc)
    if kind == "basis":
        pairs = doc.get("pairs")
        if not isinstance(pairs, list):
            raise ParseError("'pairs' must be a list")
        out = []
        for p in pairs:
            if not isinstance(p, list) or len(p) != 2:
                raise ParseError("each pair must be a two-element list")
            out.append((poly_from(p[0], n), poly_from(p[1], n)))
        return CongruenceBasis(n, out)
    if kind == "matrix":
        rows = doc.get("rows")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("'rows' must be a list of lists")
        vals = [[rational(v, "matrix entry") for v in r] for r in rows]
        if not strict:
            return n, vals
        try:
            return TAdmissibleMatrix(n, tuple(tuple(r) for r in vals))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if kind == "cells":
        cells = doc.get("cells")
        if not isinstance(cells, list):
            raise ParseError("'cells' must be a list")
        out = []
        for c in cells:
            if not isinstance(c, dict) or "A" not in c or "b" not in c:
                raise ParseError("each cell needs 'A' and 'b'")
            A = [[rational(v, "A entry") for v in row] for row in c["A"]]
            b = [rational(v, "b entry") for v in c["b"]]
            try:
                out.append(PolyhedralSet(n, A, b))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        return out
    if kind == "poly":
        return poly_from(doc.get("poly"), n)
    point = doc.get("point")
    if not isinstance(point, list) or len(point) != n:
        raise ParseError(f"'point' must be a list of {n} rationals")
    return tuple(rational(v, "coordinate") for v in point)


def loads(text: str, expect: str = None, strict: bool = True):
    try:
        doc = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return decode(doc, expect, strict)


def _no_float(text):
    raise ParseError(f"float {text} is not allowed; use p/q")


def basis_doc(B: CongruenceBasis) -> dict:
    return {"kind": "basis", "vars": B.n,
            "pairs": [[render_poly(f), render_poly(g)] for f, g in B.pairs]}


def matrix_doc(U: TAdmissibleMatrix) -> dict:
    return {"kind": "matrix", "vars": U.n,
            "rows": [[encode_rational(v) for v in r] for r in U.rows]}


def cell_obj(P: PolyhedralSet) -> dict:
    return {"A": [[encode_rational(v) for v in row] for row in P.A],
            "b": [encode_rational(v) for v in P.b]}


def cells_doc(n: int, cells) -> dict:
    return {"kind": "cells", "vars": n, "cells": [cell_obj(c) for c in cells]}


def poly_doc(f: TropPoly) -> dict:
    return {"kind": "poly", "vars": f.n, "poly": render_poly(f)}


def point_doc(x) -> dict:
    return {"kind": "point", "vars": len(x), "point": [encode_rational(v) for v in x]}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
