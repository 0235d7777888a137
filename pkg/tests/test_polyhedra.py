from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tropcong import (
    NEG_INF,
    POS_INF,
    PolyhedralSet,
    affine_hull_directions,
    dimension,
    equal_on,
    intersect,
    is_bounded,
    is_empty,
    max_linear,
    parse_poly,
    recession_cone,
    relative_interior_point,
)
from tropcong.polyhedra import covered_by, implicit_rows, same_union

import oracles
from corpus import cell, eq

A1 = ((1, -2), (2, -1), (-1, 0), (1, 0))
B1 = (3, -2, 2, -2)
UNIT = PolyhedralSet(1, [[1], [-1]], [0, -1])


def test_emptiness_examples():
    assert is_empty(PolyhedralSet(1, [[1], [-1]], [0, 1]))
    assert not is_empty(PolyhedralSet(2, A1, B1))
    assert not is_empty(PolyhedralSet.whole(3))


def test_dimension_examples():
    assert dimension(PolyhedralSet(1, [[1], [-1]], [0, 1])) is NEG_INF
    assert dimension(UNIT) == 1
    assert dimension(PolyhedralSet(1, [[1], [-1]], [0, 0])) == 0
    assert dimension(PolyhedralSet(2, A1, B1)) == 1


def test_recession_examples():
    R = recession_cone(UNIT)
    assert dimension(R) == 0 and R.contains((0,))
    R1 = recession_cone(PolyhedralSet(2, A1, B1))
    assert R1.A == tuple(tuple(Fraction(v) for v in a) for a in A1) and set(R1.b) == {0}
    assert affine_hull_directions(R1) in ([(0, 1)], [(0, -1)])
    assert R1.contains((0, -1)) and not R1.contains((0, 1))
    assert dimension(recession_cone(PolyhedralSet.whole(2))) == 2


def test_intersect_examples():
    lines = intersect(cell(2, eq((0, 1), 0)), cell(2, eq((0, 1), 1)))
    assert is_empty(lines)
    meet = intersect(cell(2, eq((0, 1), 0)), cell(2, eq((1, 0), 0)))
    assert dimension(meet) == 0


def test_relative_interior_examples():
    assert relative_interior_point(PolyhedralSet.point((0,))) == (0,)
    (x,) = relative_interior_point(UNIT)
    assert 0 < x < 1
    (y,) = relative_interior_point(PolyhedralSet(1, [[1]], [0]))
    assert y > 0


def test_affine_hull_examples():
    assert affine_hull_directions(PolyhedralSet.point((0,))) == []
    assert affine_hull_directions(UNIT) in ([(1,)], [(-1,)])
    diag = PolyhedralSet(3, [(1, -1, 0), (-1, 1, 0), (0, 1, -1), (0, -1, 1), (1, 0, 0)], [0, 0, 0, 0, 0])
    (d,) = affine_hull_directions(diag)
    assert d in ((1, 1, 1), (-1, -1, -1))


def test_max_linear_examples():
    assert max_linear(UNIT, (1,), 0) == 1
    assert max_linear(UNIT, (1,), 5) == 6
    assert max_linear(PolyhedralSet(1, [[1]], [0]), (1,)) is POS_INF
    assert max_linear(PolyhedralSet(1, [[1], [-1]], [0, 1]), (1,)) is NEG_INF


def test_equal_on_examples():
    f = parse_poly("-1*x + x^-1 + 0", 1)
    zero = parse_poly("0", 1)
    assert equal_on(f, f, UNIT)
    assert equal_on(f, zero, UNIT)
    assert not equal_on(parse_poly("x", 1), zero, UNIT)


def test_bounded_examples():
    assert is_bounded(UNIT)
    assert not is_bounded(PolyhedralSet(2, A1, B1))
    assert is_bounded(PolyhedralSet.point((0,)))


def test_implicit_rows():
    P = PolyhedralSet(2, [(1, 0), (-1, 0), (0, 1)], [1, -1, 0])
    assert implicit_rows(P) == (0, 1)


def test_covered_by_and_same_union():
    halves = [PolyhedralSet(1, [[1]], [0]), PolyhedralSet(1, [[-1]], [0])]
    assert covered_by(PolyhedralSet.whole(1), halves)
    assert not covered_by(PolyhedralSet.whole(1), halves[:1])
    split = [PolyhedralSet(1, [[1], [-1]], [0, -1]), PolyhedralSet(1, [[1], [-1]], [1, -2])]
    joined = [PolyhedralSet(1, [[1], [-1]], [0, -2])]
    assert same_union(split, joined)
    # a gap is not covered
    gap = [PolyhedralSet(1, [[1], [-1]], [0, -1]), PolyhedralSet(1, [[1], [-1]], [Fraction(3, 2), -2])]
    assert not same_union(gap, joined)
    # point cells neither help nor break a cover
    dots = [PolyhedralSet.point((Fraction(k, 4),)) for k in range(9)]
    assert covered_by(joined[0], split + dots)
    assert not covered_by(joined[0], gap + [PolyhedralSet.point((Fraction(5, 4),))])
    assert covered_by(PolyhedralSet.point((Fraction(5, 4),)), gap + dots)


def test_zero_rows():
    assert is_empty(PolyhedralSet(2, [(0, 0)], [1]))
    assert dimension(PolyhedralSet(2, [(0, 0)], [0])) == 2


coef = st.integers(-3, 3)
row = st.tuples(st.tuples(coef, coef, coef), coef)


@settings(max_examples=60, deadline=None)
@given(st.lists(row, max_size=6), st.booleans())
def test_dimension_matches_per_row_oracle(rows, pinch):
    if pinch and rows:
        # add the negation of the first row, forcing an equality
        a, r = rows[0]
        rows = rows + [(tuple(-v for v in a), -r)]
    A = [a for a, _ in rows]
    b = [r for _, r in rows]
    P = PolyhedralSet(3, A, b)
    want = oracles.dimension(A, b, 3)
    got = dimension(P)
    if want is None:
        assert got is NEG_INF and is_empty(P)
    else:
        assert got == want
        x = relative_interior_point(P)
        assert P.contains(x)
        # strict on every row that is not an implicit equality
        imp = set(implicit_rows(P))
        for i, (a, r) in enumerate(rows):
            slack = sum(u * v for u, v in zip(a, x)) - r
            assert (slack == 0) == (i in imp)
        assert len(affine_hull_directions(P)) == got
