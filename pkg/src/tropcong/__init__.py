"""Exact congruence varieties and Krull dimensions over the tropical semifield."""

from .congruence import (
    CongruenceBasis,
    KrullReport,
    Properness,
    booleanize_basis,
    combine_to_single,
    curve_kernel_check,
    decompose_components,
    e_invariant_compare,
    in_variety_closure,
    krull_dimension,
    properness_certificate,
    twist,
)
from .core import (
    NEG_INF,
    POS_INF,
    Monomial,
    TropPoly,
    TropRat,
    bend_generators,
    booleanize,
    canonicalize,
    clear_denominators,
    evaluate,
    func_eq,
    point_indicator,
    rat_add,
    rat_inv,
    rat_mul,
    trop_add,
    trop_mul,
    trop_pow,
)
from .errors import DomainError, ParseError
from .parse import parse_poly, render_poly
from .polyhedra import (
    PolyhedralSet,
    affine_hull_directions,
    dimension,
    equal_on,
    intersect,
    is_bounded,
    is_empty,
    max_linear,
    recession_cone,
    relative_interior_point,
)
from .prime import (
    TAdmissibleMatrix,
    add_row_downward,
    basis_in_prime,
    is_t_admissible,
    krull_of_prime,
    max_terms,
    pair_in_prime,
    prime_chain,
    scale_row,
    u_value,
    witness_boolean_prime,
    witness_prime,
)
from .variety import (
    Variety,
    boolean_variety,
    cells_of_pair,
    connected_components,
    dim_variety,
    has_duplicate_parallel_rays,
    hypersurface,
    rays,
    variety_contains,
    variety_of_basis,
    variety_to_pair,
)
