"""Exact polyhedral sets ``{x in Q^n : A x >= b}`` and the LP-based queries on them."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg, lp
from .core import NEG_INF, POS_INF, TropPoly, TropScalar

Point = tuple[Fraction, ...]


def _fr(v) -> Fraction:
    return v if type(v) is Fraction else Fraction(v)


@dataclass(frozen=True)
class _Info:
    empty: bool
    point: Optional[Point] = None
    implicit: Optional[frozenset] = frozenset()
    echelon: tuple = ()
    pivots: tuple = ()


class PolyhedralSet:
    """The solution set of ``A x >= b``; zero rows of ``A`` denote R^n."""

    __slots__ = ("n", "A", "b", "_info", "cap")

    def __init__(self, n: int, A: Sequence[Sequence] = (), b: Sequence = ()):
        A = tuple(row if type(row) is tuple and all(type(v) is Fraction for v in row)
                  else tuple(_fr(v) for v in row) for row in A)
        b = tuple(_fr(v) for v in b)
        if len(A) != len(b):
            raise ValueError(f"{len(A)} rows but {len(b)} right-hand sides")
        for row in A:
            if len(row) != n:
                raise ValueError(f"row of length {len(row)} in dimension {n}")
        self.n = n
        self.A = A
        self.b = b
        self._info = None
        # an upper bound on the dimension known to whoever built the set
        self.cap = n

    @classmethod
    def whole(cls, n: int) -> "PolyhedralSet":
        return cls(n)

    @classmethod
    def point(cls, z: Sequence) -> "PolyhedralSet":
        n = len(z)
        A, b = [], []
        for i, zi in enumerate(z):
            e = [0] * n
            e[i] = 1
            A.append(e)
            b.append(zi)
            A.append([-v for v in e])
            b.append(-Fraction(zi))
        return cls(n, A, b)

    @property
    def rows(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return list(zip(self.A, self.b))

    def __len__(self) -> int:
        return len(self.A)

    def key(self) -> tuple:
        # any fixed total order will do; integer pairs sort much faster
        # than fractions
        def ints(v):
            return (v.numerator, v.denominator)
        return (self.n, tuple(sorted((tuple(map(ints, a)), ints(r)) for a, r in zip(self.A, self.b))))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyhedralSet) and (self.n, self.A, self.b) == (other.n, other.A, other.b)

    def __hash__(self) -> int:
        return hash((self.n, self.A, self.b))

    def __repr__(self) -> str:
        def fmt(v):
            return str(v)
        rows = ", ".join(f"[{' '.join(fmt(v) for v in a)}] >= {fmt(r)}" for a, r in self.rows)
        return f"PolyhedralSet(n={self.n}, {{{rows}}})"

    def contains(self, x: Sequence) -> bool:
        xs = [_fr(v) for v in x]
        return all(sum(a * v for a, v in zip(row, xs) if a) >= r for row, r in zip(self.A, self.b))


def _check_n(P: PolyhedralSet, Q: PolyhedralSet) -> None:
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")


def _analyze(P: PolyhedralSet) -> _Info:
    """Emptiness, implicit equalities and a relative interior point.

    Maximizes a uniform slack ``t <= 1`` over the rows not yet known to be
    implicit. At ``t = 0`` every row with a positive dual multiplier is an
    implicit equality (complementary slackness against every point of P);
    rows whose normal lies in the span of the known equalities have a
    constant slack on P and are classified directly. Each round raises the
    rank of the equality system, so at most n + 1 LPs are solved.
    """
    if P._info is not None:
        return P._info
    n = P.n
    implicit: set[int] = set()
    pending: list[int] = []
    for i, (a, r) in enumerate(P.rows):
        if not any(a):
            if r > 0:
                P._info = _Info(True)
                return P._info
            if r == 0:
                implicit.add(i)
        else:
            pending.append(i)
    echelon: list = []
    pivots: list = []
    first = True
    while True:
        A, b = [], []
        for i in pending:
            A.append(list(P.A[i]) + [-1])
            b.append(P.b[i])
        for i in implicit:
            A.append(list(P.A[i]) + [0])
            b.append(P.b[i])
        A.append([0] * n + [-1])
        b.append(-1)
        res = lp.maximize(A, b, [0] * n + [1])
        if res.status != lp.OPTIMAL:
            raise lp.LPCertificateError("slack LP must be feasible and bounded")
        x = res.point[:n]
        if first and res.value < 0:
            P._info = _Info(True)
            return P._info
        first = False
        if res.value > 0 or not pending:
            break
        newly = [i for i, y in zip(pending, res.duals) if y > 0]
        if not newly:
            raise lp.LPCertificateError("zero slack without a supporting multiplier")
        implicit.update(newly)
        echelon, pivots = linalg.rref(echelon + [list(P.A[i]) for i in newly], n)
        # a normal lies in the span of the equalities iff it kills their kernel
        null = linalg.kernel(echelon, n)
        still = []
        for i in pending:
            if i in implicit:
                continue
            a = P.A[i]
            if all(sum(u * v for u, v in zip(a, k) if u) == 0 for k in null):
                slack = sum(a * v for a, v in zip(P.A[i], x)) - P.b[i]
                if slack == 0:
                    implicit.add(i)
            else:
                still.append(i)
        pending = still
        if not pending:
            break
    P._info = _Info(False, tuple(x), frozenset(implicit), tuple(map(tuple, echelon)), tuple(pivots))
    return P._info


def mark_singleton(P: PolyhedralSet, x: Sequence) -> None:
    """Record that P is exactly {x}, a fact the caller has proved."""
    x = tuple(_fr(v) for v in x)
    eye = tuple(tuple(Fraction(int(i == j)) for j in range(P.n)) for i in range(P.n))
    # the tight rows are found on demand
    P._info = _Info(False, x, None, eye, tuple(range(P.n)))


def is_empty(P: PolyhedralSet) -> bool:
    if P._info is not None:
        return P._info.empty
    if all(r <= 0 for r in P.b):
        return False
    return lp.feasible_point(P.A, P.b, P.n) is None


def implicit_rows(P: PolyhedralSet) -> tuple[int, ...]:
    """Indices of rows holding with equality on all of P (P nonempty)."""
    info = _analyze(P)
    if info.empty:
        raise ValueError("empty polyhedral set")
    if info.implicit is None:
        x = info.point
        return tuple(i for i, (a, r) in enumerate(P.rows) if sum(u * v for u, v in zip(a, x)) == r)
    return tuple(sorted(info.implicit))


def dimension(P: PolyhedralSet):
    info = _analyze(P)
    if info.empty:
        return NEG_INF
    return P.n - len(info.pivots)


def relative_interior_point(P: PolyhedralSet) -> Point:
    info = _analyze(P)
    if info.empty:
        raise ValueError("empty polyhedral set has no relative interior")
    return info.point


def affine_hull_directions(P: PolyhedralSet) -> list[tuple[int, ...]]:
    info = _analyze(P)
    if info.empty:
        raise ValueError("empty polyhedral set")
    return [linalg.primitive(v) for v in linalg.kernel(list(info.echelon), P.n)]


def recession_cone(P: PolyhedralSet) -> PolyhedralSet:
    if is_empty(P):
        raise ValueError("recession cone of an empty set")
    return PolyhedralSet(P.n, P.A, [0] * len(P.b))


def intersect(P: PolyhedralSet, Q: PolyhedralSet) -> PolyhedralSet:
    _check_n(P, Q)
    if not Q.A:
        return P
    if not P.A:
        return Q
    return PolyhedralSet(P.n, P.A + Q.A, P.b + Q.b)


def is_bounded(P: PolyhedralSet) -> bool:
    return dimension(recession_cone(P)) == 0


def optimize(P: PolyhedralSet, c: Sequence) -> lp.LPResult:
    if len(c) != P.n:
        raise ValueError("objective length mismatch")
    return lp.maximize(P.A, P.b, list(c))


def max_linear(P: PolyhedralSet, c: Sequence, c0=0):
    res = optimize(P, c)
    if res.status == lp.INFEASIBLE:
        return NEG_INF
    if res.status == lp.UNBOUNDED:
        return POS_INF
    return res.value + Fraction(c0)


def sup_difference(f: TropPoly, g: TropPoly, P: PolyhedralSet):
    """``sup`` of ``f - g`` over P for finite f, g (NEG_INF when P is empty)."""
    n = P.n
    A = [list(a) + [0] for a in P.A]
    b = list(P.b)
    for e, c in g.items():
        A.append([-v for v in e] + [1])
        b.append(c)
    best: TropScalar = NEG_INF
    for e, c in f.items():
        res = lp.maximize(A, b, list(e) + [-1])
        if res.status == lp.INFEASIBLE:
            return NEG_INF
        if res.status == lp.UNBOUNDED:
            return POS_INF
        v = res.value + c
        if best is NEG_INF or v > best:
            best = v
    return best


def equal_on(f: TropPoly, g: TropPoly, P: PolyhedralSet) -> bool:
    """Whether f and g agree at every point of P."""
    if f.n != P.n or g.n != P.n:
        raise ValueError("dimension mismatch")
    if f.is_neg_inf() or g.is_neg_inf():
        return f.is_neg_inf() and g.is_neg_inf()
    info = _analyze(P)
    if info.empty:
        return True
    if f.evaluate(info.point) != g.evaluate(info.point):
        return False
    if len(info.pivots) == P.n:
        return True
    if sup_difference(f, g, P) > 0:
        return False
    return not sup_difference(g, f, P) > 0


def _strict_feasible(A: list, b: list, strict: list, n: int) -> bool:
    """Whether ``A x >= b`` together with ``a.x > r`` for ``(a, r)`` in strict is solvable."""
    AA = [list(a) + [0] for a in A]
    bb = list(b)
    for a, r in strict:
        AA.append(list(a) + [-1])
        bb.append(r)
    AA.append([0] * n + [-1])
    bb.append(-1)
    res = lp.maximize(AA, bb, [0] * n + [1])
    return res.status == lp.OPTIMAL and res.value > 0


def covered_by(P: PolyhedralSet, cells: Sequence[PolyhedralSet]) -> bool:
    """Whether P is contained in the union of ``cells``.

    Exact recursive set difference: P minus the first cell splits into
    pieces, each cut by one strictly violated row; a nonempty piece must be
    covered by the remaining cells. Pieces are replaced by their closures,
    which is sound because the union of closed cells is closed.
    """
    n = P.n
    for C in cells:
        _check_n(P, C)

    def rec(A: list, b: list, rest: tuple) -> bool:
        piece = PolyhedralSet(n, A, b)
        d = dimension(piece)
        if d is NEG_INF:
            return True
        if d == 0:
            x = relative_interior_point(piece)
            return any(C.contains(x) for C in rest)
        # a d-dimensional piece inside a finite union of closed cells is
        # already inside the cells meeting it in dimension d: the other
        # intersections are nowhere dense in it
        rest = tuple(C for C in rest if dimension(intersect(piece, C)) == d)
        if not rest:
            return False
        C = rest[0]
        prefA, prefb = list(A), list(b)
        for a, r in C.rows:
            neg = [-v for v in a]
            if _strict_feasible(prefA, prefb, [(neg, -r)], n):
                if not rec(prefA + [neg], prefb + [-r], rest[1:]):
                    return False
            prefA.append(list(a))
            prefb.append(r)
        return True

    return rec([list(a) for a in P.A], list(P.b), tuple(cells))


def same_union(cells1: Sequence[PolyhedralSet], cells2: Sequence[PolyhedralSet]) -> bool:
    """Set equality of two finite unions of polyhedral sets."""
    return all(covered_by(P, cells2) for P in cells1) and all(covered_by(Q, cells1) for Q in cells2)
