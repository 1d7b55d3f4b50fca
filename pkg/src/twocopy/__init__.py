# Operadores de dos copias
from src.twocopy.models import ChiIndex, ChiVector, TwoCopyError, TwoCopyOperator
from src.twocopy.operators import (
    build_A,
    build_V,
    build_V_alpha,
    chi_indices,
    chi_vector,
    enumerate_chi,
    mask_projector,
    masked_state,
    projector_sym_antisym,
    restricted_isometry_transform,
)

__all__ = [
    "ChiIndex",
    "ChiVector",
    "TwoCopyOperator",
    "TwoCopyError",
    "projector_sym_antisym",
    "build_A",
    "chi_vector",
    "chi_indices",
    "enumerate_chi",
    "build_V",
    "build_V_alpha",
    "mask_projector",
    "masked_state",
    "restricted_isometry_transform",
]
