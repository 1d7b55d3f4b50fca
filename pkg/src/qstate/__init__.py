# Estados cuánticos: modelos, álgebra tensorial y ficheros
from src.qstate.io import (
    StateFormatError,
    format_state,
    read_operator,
    read_state,
    write_operator,
    write_state,
)
from src.qstate.models import (
    Decomposition,
    DensityOperator,
    HilbertSpace,
    PureState,
    StateValidationError,
)
from src.qstate.operations import (
    eigen_decomposition,
    partial_trace,
    permute_density,
    rotate_decomposition,
    tensor,
)

__all__ = [
    "HilbertSpace",
    "PureState",
    "DensityOperator",
    "Decomposition",
    "StateValidationError",
    "StateFormatError",
    "tensor",
    "partial_trace",
    "permute_density",
    "eigen_decomposition",
    "rotate_decomposition",
    "format_state",
    "read_state",
    "write_state",
    "read_operator",
    "write_operator",
]
