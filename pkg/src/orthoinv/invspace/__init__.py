"""Linear algebra for invariant spaces: elimination, decomposability, rewriting."""

from .space import (
    ComponentTooLarge,
    Decomposition,
    InvariantSpace,
    component_monomials,
    component_size,
    invariant_space,
    is_decomposable,
    verify_decomposition,
)
from .rewrite import NotInvariant, OddZError, express_in_B, express_QB, multigraphs
from .jacobian import field_coordinates, jacobian_matrix, jacobian_rank, standard_point
