"""Congruence varieties as finite unions of polyhedral cells."""

from collections import Counter
from functools import lru_cache
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from . import linalg, lp
from .core import (
    NEG_INF,
    TropPoly,
    TropRat,
    booleanize,
    canonicalize,
    rat_add,
    rat_inv,
)
from .errors import DomainError
from .polyhedra import (
    PolyhedralSet,
    affine_hull_directions,
    dimension,
    equal_on,
    intersect,
    is_bounded,
    is_empty,
    mark_singleton,
    optimize,
    recession_cone,
    relative_interior_point,
)

Pair = tuple[TropPoly, TropPoly]


class Variety:
    """Finite union of nonempty cells.

    ``basis`` is the list of pairs the cells were computed from, or None
    for varieties assembled from cells directly. With ``prune`` empty and
    repeated cells are dropped and the rest sorted canonically; without
    it the cells are taken as given, already nonempty and in a fixed order.
    """

    __slots__ = ("n", "cells", "basis")

    def __init__(self, n: int, cells: Sequence[PolyhedralSet] = (),
                 basis: Optional[Sequence[Pair]] = None, prune: bool = True):
        for c in cells:
            if c.n != n:
                raise ValueError("cell dimension mismatch")
        if prune:
            unique = {}
            for c in cells:
                if not is_empty(c):
                    unique.setdefault(c.key(), c)
            cells = [unique[k] for k in sorted(unique)]
        self.n = n
        self.cells = tuple(cells)
        self.basis = None if basis is None else tuple(basis)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __repr__(self) -> str:
        return f"Variety(n={self.n}, cells={len(self.cells)})"

    def contains_point(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.cells)

    def is_empty(self) -> bool:
        return not self.cells


class Ray(NamedTuple):
    cells: tuple[PolyhedralSet, ...]
    direction: tuple[int, ...]


def _pairs(T, n: Optional[int] = None) -> tuple[int, list[Pair]]:
    pairs = list(getattr(T, "pairs", T))
    n = getattr(T, "n", n)
    if n is None:
        if not pairs:
            raise ValueError("cannot infer the variable count of an empty basis")
        n = pairs[0][0].n
    for f, g in pairs:
        if f.n != n or g.n != n:
            raise ValueError("all pairs must share the variable count")
    return n, pairs


def _beats(items: list, exp, coeff, same: bool = False) -> list:
    """Rows saying the term (exp, coeff) is at least every term in ``items``.

    A term with the same exponent gives a constant row; it is skipped
    unless ``same`` is set, as it is when ``items`` belongs to another
    polynomial.
    """
    rows = []
    for e2, c2 in items:
        if same or e2 != exp:
            rows.append((tuple(Fraction(a - b) for a, b in zip(exp, e2)), Fraction(c2 - coeff)))
    return rows


def _poly(n: int, rows: list, cap: Optional[int] = None) -> PolyhedralSet:
    P = PolyhedralSet(n, [a for a, _ in rows], [r for _, r in rows])
    if cap is not None:
        P.cap = cap
    return P


def _witness(P: PolyhedralSet):
    if not P.A:
        return (Fraction(0),) * P.n
    return lp.feasible_point(P.A, P.b, P.n)


def _sup_affine(vrep, a, r) -> Fraction:
    """sup of a.x - r over a cell given by vertices and rays; None for +inf."""
    verts, dirs = vrep
    if any(sum(u * d for u, d in zip(a, v)) > 0 for v in dirs):
        return None
    return max(sum(u * x for u, x in zip(a, v)) - r for v in verts)


def _pair_cells(f: TropPoly, g: TropPoly, region: Optional[PolyhedralSet] = None) -> list[PolyhedralSet]:
    """Nonempty cells of {f = g} (inside ``region``), one per term pair.

    A cell for (s, t) is nonempty only if the convex sets
    D_s = {s is f's max and s >= g} and E_t = {t is g's max and t >= f}
    both are; in fact the cell equals their intersection, and also
    equals E_t cut by s >= t or D_s cut by t >= s. When either piece has
    dimension at most one, that single extra inequality is decided from
    its vertices and rays without an LP.
    """
    n = f.n
    extra = list(region.rows) if region is not None else []
    if f.is_neg_inf() or g.is_neg_inf():
        if f.is_neg_inf() and g.is_neg_inf():
            return [region if region is not None else PolyhedralSet.whole(n)]
        return []
    F, G = f.items(), g.items()
    beats_f = {e: _beats(F, e, c) for e, c in F}
    beats_g = {e: _beats(G, e, c) for e, c in G}

    seen_points: list = []

    def live(items, beats, other):
        out = []
        for e, c in items:
            P = _poly(n, beats[e] + _beats(other, e, c, same=True) + extra)
            # witnesses tend to be vertices shared by neighbouring pieces
            if not any(P.contains(x) for x in seen_points):
                x = _witness(P)
                if x is None:
                    continue
                seen_points.insert(0, x)
                del seen_points[16:]
            out.append((e, c, P))
        return out

    cells: list[PolyhedralSet] = []

    def accept(rows, piece, vr):
        cell = _poly(n, rows, cap=dimension(piece))
        if cell.cap == 0:
            # cell is a nonempty subset of a one-point piece
            mark_singleton(cell, vr[0][0])
        cells.append(cell)

    live_s = live(F, beats_f, G)
    live_t = live(G, beats_g, F)
    vreps: dict = {}

    def vrep(key, P):
        if key not in vreps:
            vreps[key] = _low_vrep(P)
        return vreps[key]

    recent: list = []
    for es, cs, Ds in live_s:
        for et, ct, Et in live_t:
            diff = tuple(a - b for a, b in zip(es, et))
            rows = beats_f[es] + beats_g[et] + [
                (diff, ct - cs),
                (tuple(-v for v in diff), cs - ct),
            ] + extra
            # s - t = diff.x + cs - ct
            vt = vrep(("t", et), Et)
            if vt is not None:
                sup = _sup_affine(vt, diff, ct - cs)
                if sup is None or sup >= 0:
                    accept(rows, Et, vt)
                continue
            vs = vrep(("s", es), Ds)
            if vs is not None:
                sup = _sup_affine(vs, tuple(-v for v in diff), cs - ct)
                if sup is None or sup >= 0:
                    accept(rows, Ds, vs)
                continue
            cell = _poly(n, rows)
            # points of recent cells often settle feasibility without an LP
            if any(cell.contains(x) for x in recent):
                cells.append(cell)
                continue
            x = _witness(cell)
            if x is not None:
                recent = [x] + recent[:7]
                cells.append(cell)
    return cells


def cells_of_pair(f: TropPoly, g: TropPoly) -> Variety:
    if f.n != g.n:
        raise ValueError("dimension mismatch")
    return Variety(f.n, _pair_cells(f, g), basis=[(f, g)], prune=False)


@lru_cache(maxsize=64)
def _reduce_pair(f: TropPoly, g: TropPoly) -> Pair:
    # dropping terms that are nowhere strictly maximal leaves both the
    # function and its Booleanization unchanged
    return canonicalize(f), canonicalize(g)


def _low_vrep(cell: PolyhedralSet):
    """Vertices and rays of a cell of dimension at most one, or None."""
    d = dimension(cell)
    if d == 0:
        return (relative_interior_point(cell),), ()
    if d != 1:
        return None
    (u,) = affine_hull_directions(cell)
    verts, dirs = [], []
    for v in (u, tuple(-x for x in u)):
        res = optimize(cell, v)
        if res.status == lp.UNBOUNDED:
            dirs.append(v)
        else:
            # a linear function nonconstant on a segment has a unique maximizer
            verts.append(res.point)
    if not verts:
        # a line: any point of it serves as the base
        verts.append(relative_interior_point(cell))
    return tuple(sorted(verts)), tuple(sorted(dirs))


def _holds(cell: PolyhedralSet, vrep) -> bool:
    verts, dirs = vrep
    return all(cell.contains(v) for v in verts) and all(
        all(sum(a * x for a, x in zip(row, d)) >= 0 for row in cell.A) for d in dirs
    )


def prune_covered(cells: Sequence[PolyhedralSet]) -> list[PolyhedralSet]:
    """Drop cells of dimension <= 1 lying inside another cell; the union is unchanged.

    Containment is decided exactly from the vertices and rays of the small
    cell. Among set-equal small cells the one with the least key survives.
    """
    dims = [dimension(c) for c in cells]
    order = sorted(range(len(cells)), key=lambda i: (-dims[i], cells[i].key()))
    kept: list[PolyhedralSet] = []
    seen = set()
    for i in order:
        c = cells[i]
        vrep = _low_vrep(c) if dims[i] <= 1 else None
        if vrep is not None:
            if vrep in seen or any(_holds(k, vrep) for k in kept):
                continue
            seen.add(vrep)
        kept.append(c)
    return kept


@lru_cache(maxsize=32)
def _basis_cells(n: int, pairs: tuple[Pair, ...], boolean: bool) -> tuple[PolyhedralSet, ...]:
    # cached: reports on the same basis ask for the same variety repeatedly
    work: list[Pair] = []
    seen = set()
    for f, g in pairs:
        f, g = _reduce_pair(f, g)
        if boolean:
            f, g = booleanize(f), booleanize(g)
        if f.is_neg_inf() != g.is_neg_inf():
            return ()
        if f.is_neg_inf() or (f, g) in seen:
            continue
        seen.add((f, g))
        work.append((f, g))
    cells = [PolyhedralSet.whole(n)]
    for f, g in work:
        nxt = []
        for C in cells:
            nxt.extend(_pair_cells(f, g, region=C if C.A else None))
        # with several pairs the products repeat small cells many times
        cells = prune_covered(nxt) if len(work) > 1 else nxt
        if not cells:
            break
    return tuple(cells)


def variety_of_basis(T, n: Optional[int] = None) -> Variety:
    """V(T): the points where every pair of T agrees.

    ``n`` is needed only when T is a bare empty list.
    """
    n, pairs = _pairs(T, n)
    return Variety(n, _basis_cells(n, tuple(pairs), boolean=False), basis=pairs, prune=False)


def boolean_variety(T, n: Optional[int] = None) -> Variety:
    """V(T_B), the variety of the Booleanized basis."""
    n, pairs = _pairs(T, n)
    bpairs = [(booleanize(f), booleanize(g)) for f, g in pairs]
    return Variety(n, _basis_cells(n, tuple(pairs), boolean=True), basis=bpairs, prune=False)


def _explicit_bound(P: PolyhedralSet) -> int:
    """Upper bound on dim P from rows that appear together with their negation."""
    if P.cap == 0:
        return 0
    present = set(P.rows)
    eqs = [a for a, r in P.rows if any(a) and (tuple(-v for v in a), -r) in present]
    bound = P.n - linalg.rank(eqs, P.n) if eqs else P.n
    return min(bound, P.cap)


def dim_variety(V: Variety):
    if not V.cells:
        return NEG_INF
    order = sorted(V.cells, key=_explicit_bound, reverse=True)
    best = NEG_INF
    for cell in order:
        if best is not NEG_INF and _explicit_bound(cell) <= best:
            break
        d = dimension(cell)
        if best is NEG_INF or d > best:
            best = d
    return best


def max_dimensional_cell(V: Variety) -> PolyhedralSet:
    d = dim_variety(V)
    if d is NEG_INF:
        raise DomainError("empty variety")
    return next(c for c in V.cells if _explicit_bound(c) >= d and dimension(c) == d)


def variety_contains(V: Variety, T2) -> bool:
    """Whether every point of V satisfies every pair of T2."""
    pairs = list(getattr(T2, "pairs", T2))
    for f, g in pairs:
        if f.n != V.n or g.n != V.n:
            raise ValueError("dimension mismatch")
    return all(equal_on(f, g, cell) for cell in V.cells for f, g in pairs)


def _components(cells: Sequence[PolyhedralSet]) -> list[list[int]]:
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if find(i) != find(j) and not is_empty(intersect(cells[i], cells[j])):
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(len(cells)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def connected_components(V: Variety) -> list[Variety]:
    return [Variety(V.n, [V.cells[i] for i in grp], prune=False) for grp in _components(V.cells)]


def _germs(cell: PolyhedralSet) -> list[tuple[int, ...]]:
    """Primitive unbounded directions of a one-dimensional cell."""
    if dimension(cell) != 1:
        return []
    R = recession_cone(cell)
    if dimension(R) != 1:
        return []
    (d,) = affine_hull_directions(R)
    out = []
    for v in (d, tuple(-x for x in d)):
        if R.contains(v):
            out.append(v)
    return out


def rays(V: Variety) -> list[Ray]:
    d = dim_variety(V)
    if d is not NEG_INF and d > 1:
        raise DomainError(f"rays need a variety of dimension at most 1, got {d}")
    germs = [(i, v) for i, cell in enumerate(V.cells) for v in _germs(cell)]
    parent = list(range(len(germs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(len(germs)):
        for b in range(a + 1, len(germs)):
            (i, u), (j, v) = germs[a], germs[b]
            if u == v and find(a) != find(b):
                meet = intersect(V.cells[i], V.cells[j])
                if not is_empty(meet) and not is_bounded(meet):
                    parent[find(b)] = find(a)
    groups: dict[int, list[int]] = {}
    for a in range(len(germs)):
        groups.setdefault(find(a), []).append(a)
    out = []
    for members in groups.values():
        cells = tuple(V.cells[germs[a][0]] for a in members)
        out.append(Ray(cells, germs[members[0]][1]))
    out.sort(key=lambda r: (r.direction, r.cells[0].key()))
    return out


def has_duplicate_parallel_rays(V: Variety) -> bool:
    counts = Counter(r.direction for r in rays(V))
    return any(k > 1 for k in counts.values())


def hypersurface(F: TropPoly) -> Variety:
    """Cells where at least two terms of F attain the maximum."""
    n = F.n
    items = F.items()
    cells = []
    for i, (es, cs) in enumerate(items):
        beats = _beats(items, es, cs)
        for et, ct in items[i + 1:]:
            diff = tuple(a - b for a, b in zip(es, et))
            rows = [(diff, ct - cs), (tuple(-v for v in diff), cs - ct)] + beats
            cells.append(_poly(n, rows))
    return Variety(n, cells)


def cell_polynomial(P: PolyhedralSet) -> TropPoly:
    """f = (sum_j b_j X^(-a_j)) + 0, which is 0 exactly on P and positive elsewhere."""
    terms = [((0,) * P.n, Fraction(0))]
    for a, r in P.rows:
        if not any(a):
            terms.append((a, r))
            continue
        ints = linalg.integer_row(a)
        k = next(i for i, v in enumerate(a) if v)
        terms.append((tuple(-v for v in ints), r * ints[k] / a[k]))
    return TropPoly(P.n, terms)


def variety_to_pair(cells: Sequence[PolyhedralSet]) -> tuple[TropRat, TropRat]:
    """A pair of rational functions whose variety is the union of ``cells``."""
    if not cells:
        raise ValueError("at least one cell is required")
    n = cells[0].n
    for c in cells:
        if c.n != n:
            raise ValueError("cell dimension mismatch")
        if is_empty(c):
            raise ValueError("cells must be nonempty")
    zero = TropPoly.const(n, 0)
    acc = None
    for c in cells:
        inv = TropRat(zero, cell_polynomial(c))
        acc = inv if acc is None else rat_add(acc, inv)
    return rat_inv(acc), TropRat.of(zero)
