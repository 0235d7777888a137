"""Small exact linear algebra over Q (row reduction, rank, kernels)."""

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        lead = mat[r][col]
        mat[r] = [v / lead for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def in_span(red: Matrix, pivots: list[int], vec: Sequence) -> bool:
    """Whether ``vec`` lies in the row space of an RREF matrix."""
    rest = [Fraction(v) for v in vec]
    for row, p in zip(red, pivots):
        if rest[p] != 0:
            f = rest[p]
            rest = [a - f * b for a, b in zip(rest, row)]
    return not any(rest)


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def integer_row(vec: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers (sign kept)."""
    fr = [Fraction(v) for v in vec]
    if not any(fr):
        return tuple(0 for _ in fr)
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)
