"""Exact tropical scalars, Laurent polynomials and rational functions.

Tropical addition is ``max`` and tropical multiplication is ``+``. On
:class:`TropPoly` the Python operators follow the same convention as the
text grammar: ``f + g`` is the tropical sum, ``f * g`` the tropical
product and ``f ** k`` the tropical power.
"""

import random
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import lp


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "-inf" if self.sign < 0 else "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("inf", self.sign))

    def __lt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __neg__(self) -> "_Infinity":
        return POS_INF if self.sign < 0 else NEG_INF


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(1)

TropScalar = Union[Fraction, _Infinity]
Exponent = tuple[int, ...]


def scalar(value) -> TropScalar:
    """Coerce ints, Fractions, "p/q" strings and "-inf" to a tropical scalar."""
    if value is NEG_INF or (isinstance(value, str) and value.strip() == "-inf"):
        return NEG_INF
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(value)


def t_add(a: TropScalar, b: TropScalar) -> TropScalar:
    return a if a >= b else b


def t_mul(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


@dataclass(frozen=True)
class Monomial:
    coeff: Fraction
    exp: Exponent

    def value(self, x: Sequence) -> Fraction:
        return self.coeff + sum(e * v for e, v in zip(self.exp, x))


class TropPoly:
    """Tropical Laurent polynomial in ``n`` variables.

    ``terms`` may be a mapping or an iterable of ``(exp, coeff)`` pairs;
    repeated exponents keep the larger coefficient. The empty polynomial
    is the tropical zero, NEG_INF.
    """

    __slots__ = ("n", "_terms", "_hash", "_canon")

    def __init__(self, n: int, terms: Union[Mapping, Iterable] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Exponent, Fraction] = {}
        for exp, coeff in items:
            if coeff is NEG_INF:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {n}")
            c = Fraction(coeff)
            old = merged.get(exp)
            if old is None or c > old:
                merged[exp] = c
        self.n = n
        self._terms = merged
        self._hash = None
        self._canon = False

    @classmethod
    def _raw(cls, n: int, merged: dict) -> "TropPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = merged
        obj._hash = None
        obj._canon = False
        return obj

    @classmethod
    def neg_inf(cls, n: int) -> "TropPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "TropPoly":
        return cls(n, [((0,) * n, c)])

    @classmethod
    def var(cls, n: int, i: int, power: int = 1, coeff=0) -> "TropPoly":
        exp = [0] * n
        exp[i] = power
        return cls(n, [(exp, coeff)])

    @classmethod
    def monomial(cls, coeff, exp: Sequence[int]) -> "TropPoly":
        return cls(len(exp), [(exp, coeff)])

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return [Monomial(c, e) for e, c in self.items()]

    def coeff(self, exp: Sequence[int]) -> TropScalar:
        return self._terms.get(tuple(exp), NEG_INF)

    def is_neg_inf(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TropPoly) and self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .parse import render_poly
        return f"TropPoly({render_poly(self)!r})"

    def __add__(self, other: "TropPoly") -> "TropPoly":
        return trop_add(self, other)

    def __mul__(self, other: "TropPoly") -> "TropPoly":
        return trop_mul(self, other)

    def __pow__(self, k: int) -> "TropPoly":
        return trop_pow(self, k)

    def evaluate(self, x: Sequence) -> TropScalar:
        return evaluate(self, x)


def _same_n(f: TropPoly, g: TropPoly) -> None:
    if f.n != g.n:
        raise ValueError(f"variable count mismatch: {f.n} vs {g.n}")


def evaluate(f: TropPoly, x: Sequence) -> TropScalar:
    """``max`` over terms of ``coeff + exp . x``; NEG_INF for the empty polynomial."""
    if len(x) != f.n:
        raise ValueError(f"point has length {len(x)}, expected {f.n}")
    xs = [Fraction(v) for v in x]
    best: TropScalar = NEG_INF
    for exp, c in f._terms.items():
        v = c + sum(e * xi for e, xi in zip(exp, xs) if e)
        if best is NEG_INF or v > best:
            best = v
    return best


def trop_add(f: TropPoly, g: TropPoly) -> TropPoly:
    _same_n(f, g)
    merged = dict(f._terms)
    for exp, c in g._terms.items():
        old = merged.get(exp)
        if old is None or c > old:
            merged[exp] = c
    return TropPoly._raw(f.n, merged)


def trop_mul(f: TropPoly, g: TropPoly) -> TropPoly:
    _same_n(f, g)
    merged: dict[Exponent, Fraction] = {}
    gitems = list(g._terms.items())
    for e1, c1 in f._terms.items():
        for e2, c2 in gitems:
            exp = tuple(a + b for a, b in zip(e1, e2))
            c = c1 + c2
            old = merged.get(exp)
            if old is None or c > old:
                merged[exp] = c
    return TropPoly._raw(f.n, merged)


def trop_pow(f: TropPoly, k: int) -> TropPoly:
    if k < 0:
        if not f.is_monomial():
            raise ValueError("negative powers are defined only for monomials")
        ((exp, c),) = f._terms.items()
        return TropPoly._raw(f.n, {tuple(k * e for e in exp): k * c})
    result = TropPoly.const(f.n, 0)
    base = f
    while k:
        if k & 1:
            result = trop_mul(result, base)
        k >>= 1
        if k:
            base = trop_mul(base, base)
    return result


def scale_exponents(f: TropPoly, k: int) -> TropPoly:
    """The polynomial x -> k * f(x); for k >= 1 this is f^k as a function."""
    return TropPoly._raw(f.n, {tuple(k * e for e in exp): k * c for exp, c in f._terms.items()})


def booleanize(f: TropPoly) -> TropPoly:
    return TropPoly._raw(f.n, {exp: Fraction(0) for exp in f._terms})


def remove_term(f: TropPoly, exp: Sequence[int]) -> TropPoly:
    exp = tuple(exp)
    return TropPoly._raw(f.n, {e: c for e, c in f._terms.items() if e != exp})


# ---------------------------------------------------------------- rational functions

class TropRat:
    """Tropical rational function ``num / den`` (tropical quotient, i.e. a difference)."""

    __slots__ = ("num", "den")

    def __init__(self, num: TropPoly, den: TropPoly):
        _same_n(num, den)
        if den.is_neg_inf():
            raise ValueError("denominator must not be -inf")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, f: TropPoly) -> "TropRat":
        return cls(f, TropPoly.const(f.n, 0))

    @property
    def n(self) -> int:
        return self.num.n

    def __eq__(self, other) -> bool:
        return isinstance(other, TropRat) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"TropRat({self.num!r}, {self.den!r})"

    def evaluate(self, x: Sequence) -> TropScalar:
        top = evaluate(self.num, x)
        if top is NEG_INF:
            return NEG_INF
        return top - evaluate(self.den, x)


def rat_add(p: TropRat, q: TropRat) -> TropRat:
    return TropRat(p.num * q.den + q.num * p.den, p.den * q.den)


def rat_mul(p: TropRat, q: TropRat) -> TropRat:
    return TropRat(p.num * q.num, p.den * q.den)


def rat_inv(p: TropRat) -> TropRat:
    if p.num.is_neg_inf():
        raise ZeroDivisionError("the tropical zero has no inverse")
    return TropRat(p.den, p.num)


def clear_denominators(p: TropRat, q: TropRat) -> tuple[TropPoly, TropPoly]:
    return p.num * q.den, q.num * p.den


def point_indicator(z: Sequence) -> TropRat:
    """Rational function with maximum value 0 attained exactly at ``z``."""
    n = len(z)
    if n == 0:
        return TropRat.of(TropPoly.const(0, 0))
    spread = TropPoly.neg_inf(n)
    for i, zi in enumerate(z):
        m = TropPoly.var(n, i, coeff=-Fraction(zi))
        spread = spread + m + m ** -1
    return rat_inv(TropRat.of(spread))


def bend_generators(f: TropPoly) -> list[tuple[TropPoly, TropPoly]]:
    return [(f, remove_term(f, exp)) for exp, _ in f.items()]


# ---------------------------------------------------------------- canonical forms

def _sample_points(n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    points = []
    for i in range(count):
        scale = (1, 2, 5, 20, 100)[i % 5]
        points.append(tuple(rng.randint(-scale, scale) for _ in range(n)))
    return points


def _unique_argmax(items: list, x: Sequence[int]):
    best = second = None
    arg = None
    for exp, c in items:
        v = c + sum(e * xi for e, xi in zip(exp, x) if e)
        if best is None or v > best:
            second, best, arg = best, v, exp
        elif second is None or v > second:
            second = v
    if second is not None and second == best:
        return None
    return arg


def _strict_point(rows: list, n: int):
    """A point with ``a.x > b`` for all ``(a, b)`` in rows, or None."""
    if not rows:
        return (Fraction(0),) * n
    A = [list(a) + [-1] for a, _ in rows]
    b = [r for _, r in rows]
    A.append([0] * n + [-1])
    b.append(-1)
    res = lp.maximize(A, b, [0] * n + [1])
    return res.point[:n] if res.value > 0 else None


def _strictly_feasible(rows: list, n: int) -> bool:
    """Whether ``{x : a.x > b for all (a, b) in rows}`` is nonempty."""
    return _strict_point(rows, n) is not None


def _region_rows(items: list, exp: Exponent, coeff: Fraction) -> list:
    """Rows (a, b) meaning term ``(exp, coeff)`` beats every other term."""
    rows = []
    for e2, c2 in items:
        if e2 != exp:
            rows.append((tuple(a - b for a, b in zip(exp, e2)), c2 - coeff))
    return rows


def essential_terms(f: TropPoly) -> list[tuple[Exponent, Fraction]]:
    """Terms strictly maximal at some point of R^n, in exponent order."""
    items = f.items()
    if len(items) <= 2:
        return items
    found = set()
    for x in _sample_points(f.n, min(8 * len(items), 200), len(items)):
        arg = _unique_argmax(items, x)
        if arg is not None:
            found.add(arg)
    out = []
    for exp, c in items:
        if exp in found or _strictly_feasible(_region_rows(items, exp, c), f.n):
            out.append((exp, c))
    return out


def _canonical(n: int, terms) -> TropPoly:
    out = TropPoly._raw(n, dict(terms))
    out._canon = True
    return out


def canonicalize(f: TropPoly) -> TropPoly:
    if f._canon:
        return f
    return _canonical(f.n, essential_terms(f))


def func_eq(f: TropPoly, g: TropPoly) -> bool:
    _same_n(f, g)
    return canonicalize(f) == canonicalize(g)


def canonical_product(factors: Sequence[TropPoly]) -> TropPoly:
    """``canonicalize`` of the tropical product, without forming it formally.

    A product term is essential exactly when it is a sum of essential
    factor terms whose open linearity regions have a common point, so the
    search runs over the common refinement of the factors' regions.
    """
    if not factors:
        raise ValueError("empty product")
    n = factors[0].n
    cans = [canonicalize(f) for f in factors]
    if any(c.is_neg_inf() for c in cans):
        return TropPoly.neg_inf(n)
    if len(cans) == 1:
        return cans[0]
    items = [c.items() for c in cans]
    seen_prefixes = set()

    def mark(x, choice: tuple) -> None:
        # every refinement region through x is open and nonempty
        for it in items[len(choice):]:
            arg = _unique_argmax(it, x)
            if arg is None:
                return
            choice = choice + (arg,)
            seen_prefixes.add(choice)

    for x in _sample_points(n, 400, sum(len(i) for i in items)):
        mark(x, ())
    result: dict[Exponent, Fraction] = {}
    # formal coefficients of the full product: a choice falling short of
    # the best coefficient for its exponent is never the maximum
    formal = dict(items[0])
    for it in items[1:]:
        nxt_formal: dict = {}
        for e1, c1 in formal.items():
            for e2, c2 in it:
                e = tuple(a + b for a, b in zip(e1, e2))
                if e not in nxt_formal or c1 + c2 > nxt_formal[e]:
                    nxt_formal[e] = c1 + c2
        formal = nxt_formal
    last = len(items) - 1

    def search(level: int, rows: list, prefix: tuple, exp: Exponent, coeff: Fraction) -> None:
        if level == len(items):
            result[exp] = coeff
            return
        for e, c in items[level]:
            nxt = prefix + (e,)
            if level == last:
                full = tuple(a + b for a, b in zip(exp, e))
                if full in result or coeff + c < formal[full]:
                    continue
            new_rows = rows + _region_rows(items[level], e, c)
            if nxt not in seen_prefixes:
                x = _strict_point(new_rows, n)
                if x is None:
                    continue
                seen_prefixes.add(nxt)
                mark(x, nxt)
            search(level + 1, new_rows, nxt, tuple(a + b for a, b in zip(exp, e)), coeff + c)

    search(0, [], (), (0,) * n, Fraction(0))
    return _canonical(n, result)
