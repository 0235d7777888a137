"""t-admissible matrices and the prime congruences P(U) they define.

A row vector ``u = (u_0, u_1, ..., u_n)`` scores the monomial
``c * X^e`` as ``u_0 * c + u_1 * e_1 + ... + u_n * e_n``. A matrix scores
it by the vector of row scores, compared lexicographically, and
``(f, g)`` lies in P(U) when the best scores of f and g agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .congruence import as_basis, booleanize_basis
from .core import Monomial, TropPoly
from .errors import DomainError
from .polyhedra import affine_hull_directions, relative_interior_point
from .variety import boolean_variety, max_dimensional_cell, variety_of_basis

Row = tuple[Fraction, ...]


def _sign_ok(rows: Sequence[Row]) -> bool:
    first = next((r[0] for r in rows if r[0] != 0), None)
    return first is None or first > 0


def is_t_admissible(U) -> bool:
    """Sign condition on the first column plus linearly independent rows.

    Independence is the right test for rational rows: the kernel of a
    rational submatrix is a rational subspace, so if it meets the pairs
    with real first entry and integer exponents nontrivially it already
    meets them at a rational, then (after clearing denominators) integral,
    point.
    """
    rows = _rows(U)
    if not rows:
        return True
    width = len(rows[0])
    if width < 1 or any(len(r) != width for r in rows):
        return False
    return _sign_ok(rows) and linalg.rank(rows, width) == len(rows)


def _rows(U) -> tuple[Row, ...]:
    if isinstance(U, TAdmissibleMatrix):
        return U.rows
    return tuple(tuple(Fraction(v) for v in r) for r in U)


@dataclass(frozen=True)
class TAdmissibleMatrix:
    """An l x (n+1) t-admissible matrix; l = 0 stands for the maximal proper congruence."""

    n: int
    rows: tuple[Row, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for r in rows:
            if len(r) != self.n + 1:
                raise ValueError(f"row of length {len(r)}, expected {self.n + 1}")
        if len(rows) > self.n + 1:
            raise ValueError("more rows than columns")
        if not is_t_admissible(rows):
            raise ValueError("matrix is not t-admissible")

    @classmethod
    def of(cls, rows: Sequence[Sequence], n: Optional[int] = None) -> "TAdmissibleMatrix":
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise ValueError("an empty matrix needs an explicit n")
            n = len(rows[0]) - 1
        return cls(n, tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def truncate(self, i: int) -> "TAdmissibleMatrix":
        """U(i), the first i rows."""
        if not 0 <= i <= self.rank:
            raise ValueError(f"truncation index {i} out of range")
        return TAdmissibleMatrix(self.n, self.rows[:i])

    def __len__(self) -> int:
        return len(self.rows)


MatrixLike = Union[TAdmissibleMatrix, Sequence[Sequence]]


def _matrix(U: MatrixLike, n: Optional[int] = None) -> TAdmissibleMatrix:
    if isinstance(U, TAdmissibleMatrix):
        if n is not None and U.n != n:
            raise ValueError(f"matrix has n = {U.n}, expected {n}")
        return U
    return TAdmissibleMatrix.of(U, n)


def u_value(U: MatrixLike, m) -> tuple[Fraction, ...]:
    """U applied to (coeff; exponent) of a monomial, given as Monomial or (coeff, exp)."""
    coeff, exp = (m.coeff, m.exp) if isinstance(m, Monomial) else m
    rows = _rows(U)
    if rows and len(exp) + 1 != len(rows[0]):
        raise ValueError(f"exponent of length {len(exp)} for a matrix with {len(rows[0])} columns")
    return _score(rows, Fraction(coeff), tuple(exp))


def _score(rows, c, e) -> tuple[Fraction, ...]:
    vec = (c,) + e
    return tuple(sum((a * v for a, v in zip(r, vec) if v), Fraction(0)) for r in rows)


def _best(rows, f: TropPoly):
    best, arg = None, []
    for e, c in f.items():
        val = _score(rows, c, e)
        if best is None or val > best:
            best, arg = val, [Monomial(c, e)]
        elif val == best:
            arg.append(Monomial(c, e))
    return best, arg


def max_terms(U: MatrixLike, f: TropPoly) -> list[Monomial]:
    """Terms of f with lexicographically largest score, in exponent order."""
    if f.is_neg_inf():
        raise DomainError("-inf has no terms")
    return _best(_rows(U), f)[1]


def pair_in_prime(U: MatrixLike, f: TropPoly, g: TropPoly) -> bool:
    if f.n != g.n:
        raise ValueError("dimension mismatch")
    if f.is_neg_inf() or g.is_neg_inf():
        return f.is_neg_inf() and g.is_neg_inf()
    rows = _rows(U)
    return _best(rows, f)[0] == _best(rows, g)[0]


def basis_in_prime(U: MatrixLike, T) -> bool:
    return all(pair_in_prime(U, f, g) for f, g in as_basis(T).pairs)


def krull_of_prime(U: MatrixLike) -> int:
    """Krull dimension of the quotient by P(U), which is the rank of U."""
    if not is_t_admissible(U):
        raise ValueError("matrix is not t-admissible")
    return len(_rows(U))


def _separator(rows: Sequence[Row], i: int) -> tuple[Fraction, ...]:
    # the part of row i orthogonal to the rows above it: killed by U(i),
    # with positive score under row i
    v = list(rows[i])
    basis: list[list[Fraction]] = []
    for r in rows[:i]:
        w = list(r)
        for q in basis:
            t = sum(a * b for a, b in zip(w, q)) / sum(b * b for b in q)
            w = [a - t * b for a, b in zip(w, q)]
        basis.append(w)
    for q in basis:
        t = sum(a * b for a, b in zip(v, q)) / sum(b * b for b in q)
        v = [a - t * b for a, b in zip(v, q)]
    return v


def prime_chain(U: MatrixLike, n: Optional[int] = None) -> list[tuple[TAdmissibleMatrix, Optional[tuple[TropPoly, TropPoly]]]]:
    """P(U(0)) > P(U(1)) > ... > P(U), each step with a pair that separates it from the next.

    Entry i holds U(i) and a pair in P(U(i)) but not in P(U(i+1)); the
    last entry, U itself, carries None.
    """
    M = _matrix(U, n)
    out = []
    for i in range(M.rank):
        ints = linalg.integer_row(_separator(M.rows, i))
        m1 = TropPoly.const(M.n, 0)
        m2 = TropPoly.monomial(Fraction(ints[0]), ints[1:])
        out.append((M.truncate(i), (m1 + m2, m1)))
    out.append((M, None))
    return out


def scale_row(U: MatrixLike, k: int, eps) -> TAdmissibleMatrix:
    """Multiply row k (0-based) by eps > 0; P(U) is unchanged."""
    M = _matrix(U)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("scaling factor must be positive")
    if not 0 <= k < M.rank:
        raise ValueError(f"row {k} out of range")
    rows = list(M.rows)
    rows[k] = tuple(eps * v for v in rows[k])
    return TAdmissibleMatrix(M.n, tuple(rows))


def add_row_downward(U: MatrixLike, k: int, j: int, lam) -> TAdmissibleMatrix:
    """Add lam times row k to row j > k (0-based); P(U) is unchanged."""
    M = _matrix(U)
    lam = Fraction(lam)
    if j <= k:
        raise ValueError("target row must lie below the source row")
    if not (0 <= k < M.rank and j < M.rank):
        raise ValueError("row index out of range")
    rows = list(M.rows)
    rows[j] = tuple(a + lam * b for a, b in zip(rows[j], rows[k]))
    return TAdmissibleMatrix(M.n, tuple(rows))


def perturbed_matrix(w: Sequence, dirs: Sequence[Sequence], K: int) -> list[list[Fraction]]:
    """Rows (1, w), (1, w + d1/K), (1, w + d1/K + d2/K^2), ..."""
    point = [Fraction(v) for v in w]
    rows = [[Fraction(1)] + point]
    step = Fraction(1)
    for u in dirs:
        step /= K
        point = [p + step * v for p, v in zip(point, u)]
        rows.append([Fraction(1)] + point)
    return rows


def witness_prime(T, max_rounds: int = 16) -> TAdmissibleMatrix:
    """A prime P(U) containing T with first column e1 and rank dim V(T) + 1."""
    B = as_basis(T)
    V = variety_of_basis(B)
    if V.is_empty():
        raise DomainError("empty variety: no prime with first column e1 contains the basis")
    cell = max_dimensional_cell(V)
    w = relative_interior_point(cell)
    dirs = affine_hull_directions(cell)
    K = 2
    for _ in range(max_rounds):
        if basis_in_prime(perturbed_matrix(w, dirs, K), B):
            break
        K *= 2
    else:
        raise RuntimeError("no perturbation scale produced a witness")
    U = TAdmissibleMatrix(B.n, ((Fraction(1),) + tuple(w),) + tuple((Fraction(0),) + tuple(d) for d in dirs))
    if not basis_in_prime(U, B):
        raise RuntimeError("staircase witness disagrees with its perturbed form")
    return U


def witness_boolean_prime(T) -> TAdmissibleMatrix:
    """A prime P(U) containing T with zero first column and rank dim V(T_B)."""
    B = as_basis(T)
    VB = boolean_variety(B)
    if VB.is_empty():
        raise DomainError("empty Booleanized variety")
    cell = max_dimensional_cell(VB)
    dirs = affine_hull_directions(cell)
    if not dirs:
        return TAdmissibleMatrix(B.n, ())
    y = linalg.integer_row(relative_interior_point(cell))
    vecs = [y] if any(y) else []
    for d in dirs:
        if linalg.rank(vecs + [d], B.n) > len(vecs):
            vecs.append(d)
    U = TAdmissibleMatrix(B.n, tuple((Fraction(0),) + tuple(Fraction(v) for v in r) for r in vecs))
    if not basis_in_prime(U, booleanize_basis(B)):
        raise RuntimeError("Booleanized witness does not contain the basis")
    return U
