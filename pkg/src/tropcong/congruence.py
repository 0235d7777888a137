"""Finite congruence bases and the invariants computed from their varieties."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .core import (
    NEG_INF,
    TropPoly,
    TropRat,
    booleanize,
    _canonical,
    canonical_product,
    canonicalize,
    trop_add,
    trop_mul,
    trop_pow,
)
from .errors import DomainError
from .variety import (
    Variety,
    _pairs,
    boolean_variety,
    connected_components,
    dim_variety,
    has_duplicate_parallel_rays,
    rays,
    variety_contains,
    variety_of_basis,
    variety_to_pair,
)

Pair = tuple[TropPoly, TropPoly]

NOT_DECIDED = "NotDecided"


class CongruenceBasis:
    """A finite generating set of pairs, read as a tropical basis of the congruence it generates."""

    __slots__ = ("n", "pairs")

    def __init__(self, n: int, pairs: Iterable[Pair] = ()):
        pairs = tuple((f, g) for f, g in pairs)
        for f, g in pairs:
            if f.n != n or g.n != n:
                raise ValueError(f"pair in {f.n}/{g.n} variables, basis has {n}")
        self.n = n
        self.pairs = pairs

    @classmethod
    def of(cls, pairs: Sequence[Pair], n: Optional[int] = None) -> "CongruenceBasis":
        n, pairs = _pairs(pairs, n)
        return cls(n, pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, CongruenceBasis) and (self.n, self.pairs) == (other.n, other.pairs)

    def __hash__(self) -> int:
        return hash((self.n, self.pairs))

    def __repr__(self) -> str:
        return f"CongruenceBasis(n={self.n}, pairs={list(self.pairs)!r})"


def as_basis(T, n: Optional[int] = None) -> CongruenceBasis:
    if isinstance(T, CongruenceBasis):
        return T
    return CongruenceBasis.of(list(T), n)


def _doubled(h: TropPoly) -> TropPoly:
    # h^2 reduced: the square of a canonical form is canonical
    return _canonical(h.n, {tuple(2 * v for v in e): 2 * c for e, c in canonicalize(h).items()})


def combine_to_single(T, reduce: bool = False) -> Pair:
    """One pair with the same variety: (prod (f_i + g_i)^2, prod f_i g_i).

    Pairs with both sides NEG_INF hold everywhere and are skipped, since
    keeping them would zero out both products. With ``reduce`` the sides
    are returned in canonical form, built without expanding the product.
    """
    B = as_basis(T)
    if not B.pairs:
        raise ValueError("cannot combine an empty basis")
    n = B.n
    live = [(f, g) for f, g in B.pairs if not (f.is_neg_inf() and g.is_neg_inf())]
    if not live:
        one = TropPoly.const(n, 0)
        return one, one
    if reduce:
        lhs = canonical_product([_doubled(trop_add(f, g)) for f, g in live])
        rhs = canonical_product([canonical_product([f, g]) for f, g in live])
        return lhs, rhs
    lhs = TropPoly.const(n, 0)
    rhs = TropPoly.const(n, 0)
    for f, g in live:
        lhs = trop_mul(lhs, trop_pow(trop_add(f, g), 2))
        rhs = trop_mul(rhs, trop_mul(f, g))
    return lhs, rhs


def booleanize_basis(T) -> CongruenceBasis:
    B = as_basis(T)
    return CongruenceBasis(B.n, [(booleanize(f), booleanize(g)) for f, g in B.pairs])


def twist(a: Pair, b: Pair) -> Pair:
    a1, a2 = a
    b1, b2 = b
    if len({a1.n, a2.n, b1.n, b2.n}) != 1:
        raise ValueError("dimension mismatch")
    return (trop_add(trop_mul(a1, b1), trop_mul(a2, b2)),
            trop_add(trop_mul(a1, b2), trop_mul(a2, b1)))


class Properness(str, Enum):
    PROPER = "Proper"
    UNKNOWN = "Unknown"
    IMPROPER = "Improper"


def _mixed(pairs) -> bool:
    return any(f.is_neg_inf() != g.is_neg_inf() for f, g in pairs)


def properness_certificate(T, V: Optional[Variety] = None) -> Properness:
    B = as_basis(T)
    if _mixed(B.pairs):
        return Properness.IMPROPER
    if V is None:
        V = variety_of_basis(B)
    return Properness.UNKNOWN if V.is_empty() else Properness.PROPER


@dataclass(frozen=True)
class KrullReport:
    dim_v: object
    dim_vb: int
    krull: int
    properness: Properness

    def as_dict(self) -> dict:
        out = {
            "dim_v": "-inf" if self.dim_v is NEG_INF else self.dim_v,
            "dim_vb": self.dim_vb,
            "krull": self.krull,
        }
        if self.properness is not Properness.PROPER:
            out["properness"] = self.properness.value
        return out


def krull_dimension(T) -> KrullReport:
    """Krull dimension of the quotient: max(dim V(T) + 1, dim V(T_B))."""
    B = as_basis(T)
    if _mixed(B.pairs):
        raise DomainError("improper basis: a pair has exactly one side equal to -inf")
    V = variety_of_basis(B)
    dim_v = dim_variety(V)
    dim_vb = dim_variety(boolean_variety(B))
    if dim_vb is NEG_INF:
        raise DomainError("Booleanized variety is empty")
    krull = dim_vb if dim_v is NEG_INF else max(dim_v + 1, dim_vb)
    return KrullReport(dim_v, dim_vb, krull, properness_certificate(B, V))


def in_variety_closure(p: Pair, T) -> bool:
    """Whether p holds on all of V(T)."""
    B = as_basis(T)
    return variety_contains(variety_of_basis(B), [p])


@dataclass(frozen=True)
class CurveReport:
    connected: bool
    dim_ok: bool
    no_dup_rays: Optional[bool]
    conditions_1_2: str = NOT_DECIDED

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "dim_ok": self.dim_ok,
            "no_dup_rays": "N/A" if self.no_dup_rays is None else self.no_dup_rays,
            "conditions_1_2": self.conditions_1_2,
        }


def _small(d) -> bool:
    return d is NEG_INF or d <= 1


def curve_kernel_check(T) -> CurveReport:
    V = variety_of_basis(as_basis(T))
    d = dim_variety(V)
    connected = len(connected_components(V)) <= 1
    dups = None
    if _small(d):
        dups = not has_duplicate_parallel_rays(V)
    return CurveReport(connected, d in (0, 1), dups)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[tuple[Variety, tuple[TropRat, TropRat]], ...]
    star_condition: Optional[bool]


def decompose_components(T) -> Decomposition:
    """Connected components of V(T), each with a pair cutting out exactly that component.

    The star condition holds when no two components have rays with the
    same primitive direction; it is None unless dim V(T) <= 1.
    """
    V = variety_of_basis(as_basis(T))
    comps = connected_components(V)
    packaged = tuple((C, variety_to_pair(C.cells)) for C in comps)
    star = None
    if _small(dim_variety(V)):
        owner: dict = {}
        star = True
        for idx, C in enumerate(comps):
            for r in rays(C):
                if owner.setdefault(r.direction, idx) != idx:
                    star = False
    return Decomposition(packaged, star)


@dataclass(frozen=True)
class EInvariant:
    e_v: int
    e_vb: int
    equal: bool

    def as_dict(self) -> dict:
        return {"e_v": self.e_v, "e_vb": self.e_vb, "equal": self.equal}


def e_invariant_compare(T) -> EInvariant:
    """Unbounded-cell counts of V(T) and of V(T_B) for curve-like varieties."""
    B = as_basis(T)
    V = variety_of_basis(B)
    d = dim_variety(V)
    if not _small(d):
        raise DomainError(f"e-invariants need dim V <= 1, got {d}")
    VB = boolean_variety(B)
    db = dim_variety(VB)
    if not _small(db):
        raise DomainError(f"e-invariants need dim V_B <= 1, got {db}")
    e_v = len(rays(V))
    e_vb = len({r.direction for r in rays(VB)})
    return EInvariant(e_v, e_vb, e_v == e_vb)

