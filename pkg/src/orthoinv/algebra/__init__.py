from .field import (
    GF2,
    MODULI,
    FieldDesc,
    UnsupportedDegree,
    artin_schreier_solve,
    embed,
    field_sqrt,
    is_irreducible,
    make_field,
)
from .poly import (
    ZZ,
    IntegerRing,
    NotDivisible,
    Polynomial,
    RingMismatch,
    TypeMatrix,
    component,
    divide_exact,
    format_poly,
    homogeneous_components,
    multidegree,
    multilinear_component,
    parse_poly,
    poly_arith,
    reduce_mod2,
    substitute,
    torus_weights,
    type_of,
    var,
)
from .variables import (
    GRAM_D,
    GRAM_DELTA,
    VariableId,
    coordinate_codes,
    gram_b,
    gram_q,
    param,
    parse_var,
    var_name,
    xv,
    yv,
    zv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
