# Cotas inferiores de la concurrencia
from src.bounds.algebraic import (
    algebraic_lower_bound,
    detection_prerequisites,
    generator_overlap,
    negativity,
    pure_concurrence,
    sum_sq_algebraic_bound,
    t_matrix,
)
from src.bounds.models import (
    AlphaTerm,
    BoundKind,
    BoundReport,
    BoundsError,
    ConsistencyError,
    TauVector,
    TMatrix,
)
from src.bounds.two_copy import cross_expectation, two_copy_bound_Valpha_sum, two_copy_bound_Vi

__all__ = [
    "AlphaTerm",
    "BoundKind",
    "BoundReport",
    "BoundsError",
    "ConsistencyError",
    "TauVector",
    "TMatrix",
    "pure_concurrence",
    "t_matrix",
    "algebraic_lower_bound",
    "sum_sq_algebraic_bound",
    "generator_overlap",
    "negativity",
    "detection_prerequisites",
    "two_copy_bound_Vi",
    "two_copy_bound_Valpha_sum",
    "cross_expectation",
]
