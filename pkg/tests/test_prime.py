from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tropcong import (
    DomainError,
    Monomial,
    TAdmissibleMatrix,
    TropPoly,
    add_row_downward,
    basis_in_prime,
    booleanize,
    is_t_admissible,
    krull_of_prime,
    max_terms,
    pair_in_prime,
    parse_poly,
    prime_chain,
    scale_row,
    u_value,
    witness_boolean_prime,
    witness_prime,
)
from tropcong.prime import perturbed_matrix

import oracles
from corpus import ex1, ex2, ex3

HALF = Fraction(1, 2)
EX2_F = parse_poly("-1*x + x^-1 + 0", 1)
ZERO1 = parse_poly("0", 1)


def test_admissibility_examples():
    assert is_t_admissible([(1, 3, -2)])
    assert not is_t_admissible([(-1, 0, 0)])
    assert not is_t_admissible([(1, 2), (1, 2)])
    assert is_t_admissible([(0, 1), (1, 0)])
    assert not is_t_admissible([(0, 1), (-1, 0)])
    assert is_t_admissible([])


def test_matrix_validation():
    with pytest.raises(ValueError):
        TAdmissibleMatrix.of([(1, 2), (2, 4)])
    with pytest.raises(ValueError):
        TAdmissibleMatrix.of([(1, 2, 3)], n=1)
    with pytest.raises(ValueError):
        TAdmissibleMatrix.of([])
    assert TAdmissibleMatrix.of([], n=2).rank == 0


def test_u_value_examples():
    eye = [(1, 0), (0, 1)]
    assert u_value(eye, Monomial(Fraction(0), (1,))) == (0, 1)
    assert u_value(TAdmissibleMatrix.of([], n=1), (5, (1,))) == ()
    assert u_value([(1, HALF), (0, 1)], (-1, (1,))) == (-HALF, 1)


def test_max_terms_examples():
    m = parse_poly("3*x", 1)
    assert max_terms([(1, 0), (0, 1)], m) == m.monomials()
    (t,) = max_terms([(1, 0), (0, 1)], parse_poly("0 + x", 1))
    assert t.exp == (1,)
    (t,) = max_terms([(1, HALF), (0, 1)], EX2_F)
    assert t.exp == (0,) and t.coeff == 0
    with pytest.raises(DomainError):
        max_terms([(1, 0)], TropPoly.neg_inf(1))


def test_pair_examples():
    U = [(1, HALF), (0, 1)]
    assert pair_in_prime(U, EX2_F, EX2_F)
    assert pair_in_prime(U, EX2_F, ZERO1)
    assert not pair_in_prime(U, ZERO1, TropPoly.neg_inf(1))
    assert pair_in_prime(U, TropPoly.neg_inf(1), TropPoly.neg_inf(1))


def test_basis_examples():
    assert basis_in_prime(TAdmissibleMatrix.of([], n=1), [(EX2_F, ZERO1)])
    assert basis_in_prime([(1, HALF), (0, 1)], ex2())
    assert not basis_in_prime([(1, 2), (0, 1)], ex2())


def test_krull_of_prime_examples():
    assert krull_of_prime([(1, 3, -2)]) == 1
    assert krull_of_prime(TAdmissibleMatrix.of([], n=3)) == 0
    assert krull_of_prime([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3
    with pytest.raises(ValueError):
        krull_of_prime([(-1, 0)])


def test_chain_examples():
    eye = TAdmissibleMatrix.of([(1, 0), (0, 1)])
    chain = prime_chain(eye)
    assert [U.rank for U, _ in chain] == [0, 1, 2]
    (U0, (a0, b0)), (U1, (a1, b1)), (U2, last) = chain
    assert (a0, b0) == (parse_poly("1 + 0", 1), ZERO1)
    assert (a1, b1) == (parse_poly("0 + x", 1), ZERO1)
    assert last is None
    assert pair_in_prime(U0, a0, b0) and not pair_in_prime(U1, a0, b0)
    assert pair_in_prime(U1, a1, b1) and not pair_in_prime(U2, a1, b1)
    single = prime_chain([(1, 3, -2)])
    assert len(single) == 2


def test_row_transforms():
    U = TAdmissibleMatrix.of([(1, 2, 0), (0, 1, 1)])
    assert scale_row(U, 0, 1) == U
    V = scale_row(U, 1, Fraction(1, 3))
    assert V.rows[1] == (0, Fraction(1, 3), Fraction(1, 3))
    W = add_row_downward(U, 0, 1, -2)
    assert W.rows[1] == (-2, -3, 1)
    with pytest.raises(ValueError):
        scale_row(U, 0, 0)
    with pytest.raises(ValueError):
        add_row_downward(U, 1, 0, 1)
    with pytest.raises(ValueError):
        scale_row(U, 2, 1)


def test_staircase_transform_keeps_prime():
    # rows (1, w), d1, d2 become (1, w), (1, w + d1/K), ... by downward
    # additions and positive scalings
    w, dirs = (1, -1), [(1, 0), (0, 1)]
    U = TAdmissibleMatrix.of([(1,) + w] + [(0,) + d for d in dirs])
    K = 4
    M = U
    for j in (1, 2):
        M = scale_row(M, j, Fraction(1, K ** j))
    M = add_row_downward(M, 1, 2, 1)
    M = add_row_downward(M, 0, 1, 1)
    M = add_row_downward(M, 0, 2, 1)
    assert [list(r) for r in M.rows] == [list(r) for r in perturbed_matrix(w, dirs, K)]
    f, g = parse_poly("x1 + x2^2 + 0", 2), parse_poly("x1*x2 + 1", 2)
    assert pair_in_prime(M, f, g) == pair_in_prime(U, f, g)


def test_witness_examples():
    U3 = witness_prime(ex3())
    assert U3.rows == ((1, 0, 0, -1),)
    U2 = witness_prime(ex2())
    assert U2.rank == 2 and basis_in_prime(U2, ex2())
    assert witness_prime(ex1()).rank == 2
    assert witness_boolean_prime(ex3()).rank == 2
    assert witness_boolean_prime(ex2()).rank == 0
    assert witness_boolean_prime(ex1()).rank == 1


def test_witness_empty_variety():
    with pytest.raises(DomainError):
        witness_prime([(ZERO1, parse_poly("1", 1))])


entry = st.integers(-3, 3)


def matrices(n):
    row = st.tuples(*[entry] * (n + 1))
    return st.lists(row, min_size=1, max_size=n + 1).filter(is_t_admissible)


def polys(n):
    t = st.tuples(st.tuples(*[st.integers(-2, 2)] * n), st.integers(-3, 3))
    return st.lists(t, min_size=1, max_size=4).map(lambda ts: TropPoly(n, ts))


@settings(max_examples=80, deadline=None)
@given(matrices(2), polys(2), polys(2))
def test_membership_matches_lex_oracle(U, f, g):
    assert pair_in_prime(U, f, g) == oracles.lex_member(U, f.items(), g.items())


@settings(max_examples=40, deadline=None)
@given(matrices(2), polys(2), polys(2), st.data())
def test_membership_invariant_under_row_moves(U, f, g, data):
    M = TAdmissibleMatrix.of(U)
    k = data.draw(st.integers(0, M.rank - 1))
    eps = data.draw(st.fractions(Fraction(1, 5), 5))
    assert pair_in_prime(scale_row(M, k, eps), f, g) == pair_in_prime(M, f, g)
    assume(M.rank > 1)
    j = data.draw(st.integers(k + 1, M.rank - 1)) if k + 1 < M.rank else None
    if j is not None:
        lam = data.draw(st.fractions(-3, 3, max_denominator=3))
        assert pair_in_prime(add_row_downward(M, k, j, lam), f, g) == pair_in_prime(M, f, g)


@settings(max_examples=40, deadline=None)
@given(matrices(2), polys(2), polys(2))
def test_boolean_transparency(U, f, g):
    Z = [(0,) + tuple(r[1:]) for r in U]
    assume(is_t_admissible(Z))
    assert pair_in_prime(Z, f, g) == pair_in_prime(Z, booleanize(f), booleanize(g))
