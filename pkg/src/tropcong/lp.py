"""Exact linear programming over the rationals.

The public entry point is :func:`maximize`, which solves

    sup c.x  subject to  A x >= b,  x free in Q^n

and returns a certified result. Internally the dual problem, which is in
standard form with only ``n`` equality rows, is handled by a two-phase
dense tableau simplex. Since ``n`` is small here and the row count ``m``
is the large dimension, the tableau stays ``n x (m + n)``.

Arithmetic runs on ``gmpy2.mpq``; every value crossing the API boundary is
a :class:`fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)

Vector = tuple[Fraction, ...]


class LPCertificateError(RuntimeError):
    """Raised when a solver result fails its own exact certificate check."""


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`maximize`.

    ``point`` is an optimal point when optimal and a feasible point when
    unbounded. ``direction`` satisfies ``A d >= 0`` and ``c.d > 0`` when
    unbounded. ``farkas`` is ``y >= 0`` with ``A^T y = 0`` and ``b.y > 0``
    when infeasible. ``duals`` are the optimal row multipliers (``y >= 0``,
    ``A^T y = -c``), reported against the original rows.
    """

    status: str
    value: Optional[Fraction] = None
    point: Optional[Vector] = None
    direction: Optional[Vector] = None
    farkas: Optional[Vector] = None
    duals: Optional[Vector] = None


_FZERO = Fraction(0)


def _frac(q) -> Fraction:
    if not q:
        return _FZERO
    return Fraction(int(q.numerator), int(q.denominator))


def _pivot(rows: list, z: list, basis: list, r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        prow = [v * inv for v in prow]
        rows[r] = prow
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                rows[i] = [a - f * b for a, b in zip(row, prow)]
    f = z[c]
    if f:
        z[:] = [a - f * b for a, b in zip(z, prow)]
    basis[r] = c


def _iterate(rows: list, z: list, basis: list, ncols: int) -> Optional[int]:
    """Run simplex pivots minimizing the objective encoded in ``z``.

    ``z`` holds reduced costs followed by minus the objective value. Only
    columns ``< ncols`` may enter. Returns None at optimality or the index
    of an entering column certifying unboundedness.
    """
    k = len(rows)
    bland = False
    stall = 0
    while True:
        if bland:
            enter = next((j for j in range(ncols) if z[j] < 0), -1)
        else:
            enter, best = -1, _ZERO
            for j in range(ncols):
                if z[j] < best:
                    enter, best = j, z[j]
        if enter < 0:
            return None
        leave, ratio = -1, None
        for i in range(k):
            a = rows[i][enter]
            if a > 0:
                q = rows[i][-1] / a
                if ratio is None or q < ratio or (q == ratio and basis[i] < basis[leave]):
                    leave, ratio = i, q
        if leave < 0:
            return enter
        if ratio == 0:
            stall += 1
            if stall > 2 * k + 10:
                bland = True
        else:
            stall = 0
        _pivot(rows, z, basis, leave, enter)


def _standard(M: list, e: list, d: list):
    """Minimize d.y subject to M y = e, y >= 0.

    Returns ``(status, y, pi, extra)`` where ``pi`` are the simplex
    multipliers for the rows of ``M`` at the final basis. For an unbounded
    problem ``extra`` is a ray of the feasible set along which ``d.y``
    decreases; for an infeasible one ``extra`` is ``w`` with
    ``M^T w >= 0`` and ``e.w < 0``.
    """
    k = len(M)
    m = len(d)
    sign = [1 if v >= 0 else -1 for v in e]
    rows = []
    for i in range(k):
        s = sign[i]
        unit = [_ZERO] * k
        unit[i] = _ONE
        if s > 0:
            rows.append(list(M[i]) + unit + [e[i]])
        else:
            rows.append([-v for v in M[i]] + unit + [-e[i]])
    basis = [m + i for i in range(k)]
    width = m + k + 1

    # phase 1: minimize the sum of artificials
    z = [_ZERO] * width
    for i in range(k):
        z[m + i] = _ONE
    for row in rows:
        z = [a - b for a, b in zip(z, row)]
    _iterate(rows, z, basis, m)

    def multipliers(costs_art):
        return [(costs_art - z[m + i]) * sign[i] for i in range(k)]

    if -z[-1] > 0:
        w = [-v for v in multipliers(_ONE)]
        return INFEASIBLE, None, None, w

    for i in range(k):
        if basis[i] >= m:
            row = rows[i]
            for j in range(m):
                if row[j] != 0:
                    _pivot(rows, z, basis, i, j)
                    break

    # phase 2 with the real costs; artificials stay out of the basis
    z = [_ZERO] * width
    for j in range(m):
        z[j] = d[j]
    for i in range(k):
        cb = d[basis[i]] if basis[i] < m else _ZERO
        if cb:
            z = [a - cb * b for a, b in zip(z, rows[i])]
    enter = _iterate(rows, z, basis, m)

    y = [_ZERO] * m
    if enter is not None:
        y[enter] = _ONE
        for i in range(k):
            if basis[i] < m:
                y[basis[i]] = -rows[i][enter]
        return UNBOUNDED, None, None, y
    for i in range(k):
        if basis[i] < m:
            y[basis[i]] = rows[i][-1]
    return OPTIMAL, y, multipliers(_ZERO), None


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), _ZERO)


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise LPCertificateError(what)


def maximize(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Certified ``sup c.x`` over ``{x : A x >= b}``."""
    n = len(c)
    cq = [mpq(v) for v in c]
    keep: dict = {}
    for idx, (row, rhs) in enumerate(zip(A, b)):
        if len(row) != n:
            raise ValueError("row length does not match objective length")
        qr = tuple(mpq(v) for v in row)
        qb = mpq(rhs)
        if not any(qr):
            if qb > 0:
                farkas = [Fraction(0)] * len(b)
                farkas[idx] = Fraction(1)
                return LPResult(INFEASIBLE, farkas=tuple(farkas))
            continue
        if (qr, qb) not in keep:
            keep[(qr, qb)] = idx
    items = list(keep.items())
    Aq = [r for (r, _), _ in items]
    bq = [v for (_, v), _ in items]
    origin = [i for _, i in items]
    m = len(Aq)

    def lift(vec) -> Vector:
        out = [_FZERO] * len(b)
        for j, v in zip(origin, vec):
            if v:
                out[j] = _frac(v)
        return tuple(out)

    M = [[Aq[j][i] for j in range(m)] for i in range(n)]
    status, y, pi, extra = _standard(M, [-v for v in cq], [-v for v in bq])

    if status == OPTIMAL:
        x = [-v for v in pi]
        value = _dot(cq, x)
        _check(all(_dot(Aq[j], x) >= bq[j] for j in range(m)), "primal point infeasible")
        _check(all(v >= 0 for v in y), "negative dual")
        _check(-_dot(bq, y) == value, "duality gap")
        return LPResult(OPTIMAL, value=_frac(value), point=tuple(_frac(v) for v in x),
                        duals=lift(y))
    if status == UNBOUNDED:
        _check(all(v >= 0 for v in extra), "negative Farkas multiplier")
        _check(_dot(bq, extra) > 0, "Farkas value not positive")
        return LPResult(INFEASIBLE, farkas=lift(extra))

    direction = extra
    _check(all(_dot(Aq[j], direction) >= 0 for j in range(m)), "bad recession direction")
    _check(_dot(cq, direction) > 0, "direction does not improve")
    # the dual is infeasible: the primal is either empty or unbounded
    status0, _, pi0, ray0 = _standard(M, [_ZERO] * n, [-v for v in bq])
    if status0 == UNBOUNDED:
        _check(_dot(bq, ray0) > 0, "Farkas value not positive")
        return LPResult(INFEASIBLE, farkas=lift(ray0))
    x = [-v for v in pi0]
    _check(all(_dot(Aq[j], x) >= bq[j] for j in range(m)), "primal point infeasible")
    return LPResult(UNBOUNDED, point=tuple(_frac(v) for v in x),
                    direction=tuple(_frac(v) for v in direction))


def feasible_point(A: Sequence[Sequence], b: Sequence, n: int) -> Optional[Vector]:
    """Some point of ``{A x >= b}`` in Q^n, or None when the set is empty."""
    res = maximize(A, b, [0] * n)
    return res.point if res.status == OPTIMAL else None
