"""
Álgebra tensorial sobre estados: producto tensorial, traza parcial,
permutación de factores, descomposición espectral y rotación de
descomposiciones.
"""

from collections.abc import Iterable, Sequence
from functools import lru_cache
from typing import Protocol, overload

import numpy as np
import numpy.typing as npt

from src.config import settings
from src.qstate.models import (
    RECONSTRUCTION_TOL,
    ComplexArray,
    Decomposition,
    DensityOperator,
    HilbertSpace,
    PureState,
    StateValidationError,
)
from src.utils.logging import get_logger

logger = get_logger(__name__)

ISOMETRY_TOL = 1e-10
# Estados de una rotación con norma por debajo de esto se descartan
ZERO_STATE_NORM_SQ = 1e-30

_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


class OperatorOnSpace(Protocol):
    """Cualquier operador con espacio y matriz (p. ej. TwoCopyOperator)."""

    @property
    def space(self) -> HilbertSpace: ...

    @property
    def matrix(self) -> ComplexArray: ...


@overload
def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator: ...


@overload
def tensor(a: PureState, b: PureState) -> PureState: ...


def tensor(
    a: DensityOperator | PureState,
    b: DensityOperator | PureState,
) -> DensityOperator | PureState:
    """
    Producto tensorial a ⊗ b.

    El espacio resultante concatena las listas de factores; las entradas son
    productos de Kronecker en orden row-major.
    """
    space = a.space.concat(b.space)
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(space, np.kron(a.matrix, b.matrix))
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(space, np.kron(a.amplitudes, b.amplitudes))
    raise StateValidationError(
        f"tensor necesita dos objetos del mismo tipo ({type(a).__name__}, {type(b).__name__})"
    )


def _validate_keep(n_factors: int, keep: Iterable[int]) -> tuple[int, ...]:
    keep_sorted = tuple(sorted(set(keep)))
    if not keep_sorted:
        raise StateValidationError("keep no puede estar vacío")
    for k in keep_sorted:
        if not 0 <= k < n_factors:
            raise StateValidationError(f"Índice de factor inválido: {k} (hay {n_factors})")
    return keep_sorted


def partial_trace_matrix(
    matrix: ComplexArray,
    dims: Sequence[int],
    keep: Iterable[int],
) -> ComplexArray:
    """
    Traza parcial de una matriz sobre los factores que no están en keep.

    Los factores conservados mantienen su orden relativo.
    """
    n = len(dims)
    keep_sorted = _validate_keep(n, keep)
    tensor_form = np.asarray(matrix).reshape(tuple(dims) + tuple(dims))

    rows = list(_EINSUM_LETTERS[:n])
    cols = list(_EINSUM_LETTERS[n : 2 * n])
    for k in range(n):
        if k not in keep_sorted:
            cols[k] = rows[k]
    out_labels = "".join(rows[k] for k in keep_sorted) + "".join(cols[k] for k in keep_sorted)
    reduced = np.einsum(f"{''.join(rows)}{''.join(cols)}->{out_labels}", tensor_form)

    kept_dim = int(np.prod([dims[k] for k in keep_sorted]))
    return np.asarray(reduced.reshape(kept_dim, kept_dim), dtype=np.complex128)


@overload
def partial_trace(op: DensityOperator, keep: Iterable[int]) -> DensityOperator: ...


@overload
def partial_trace(op: OperatorOnSpace, keep: Iterable[int]) -> ComplexArray: ...


def partial_trace(
    op: DensityOperator | OperatorOnSpace,
    keep: Iterable[int],
) -> DensityOperator | ComplexArray:
    """
    Traza parcial conservando los factores keep.

    Un DensityOperator devuelve DensityOperator; cualquier otro operador
    (no necesariamente positivo, p. ej. I⊗σ·V) devuelve la matriz hermítica.
    """
    keep_sorted = _validate_keep(op.space.n_factors, keep)
    reduced = partial_trace_matrix(op.matrix, op.space.factor_dims, keep_sorted)
    if isinstance(op, DensityOperator):
        kept = HilbertSpace(
            tuple(op.space.factor_dims[k] for k in keep_sorted),
            check_scale=op.space.check_scale,
        )
        return DensityOperator(kept, reduced)
    return reduced


@lru_cache(maxsize=256)
def subsystem_permutation(dims: tuple[int, ...], order: tuple[int, ...]) -> npt.NDArray[np.intp]:
    """
    Permutación de índices de la base para reordenar factores.

    El nuevo factor k es el antiguo factor order[k]: new = old[perm].
    """
    if sorted(order) != list(range(len(dims))):
        raise StateValidationError(f"Orden de factores inválido: {order}")
    idx = np.arange(int(np.prod(dims))).reshape(dims)
    perm = idx.transpose(order).reshape(-1)
    perm.setflags(write=False)
    return perm


def permute_vector(vector: ComplexArray, dims: Sequence[int], order: Sequence[int]) -> ComplexArray:
    """Reordena los factores de un vector."""
    perm = subsystem_permutation(tuple(dims), tuple(order))
    return np.asarray(vector)[perm]


def permute_matrix(matrix: ComplexArray, dims: Sequence[int], order: Sequence[int]) -> ComplexArray:
    """Reordena los factores de una matriz (P M P†)."""
    perm = subsystem_permutation(tuple(dims), tuple(order))
    return np.asarray(matrix)[np.ix_(perm, perm)]


def permute_density(rho: DensityOperator, order: Sequence[int]) -> DensityOperator:
    """ρ con los factores reordenados."""
    dims = rho.space.factor_dims
    new_space = HilbertSpace(tuple(dims[k] for k in order), check_scale=rho.space.check_scale)
    return DensityOperator(new_space, permute_matrix(rho.matrix, dims, order))


def eigen_decomposition(rho: DensityOperator, cutoff: float | None = None) -> Decomposition:
    """
    Descomposición espectral en estados subnormalizados √λ_j |Φ_j⟩.

    Se descartan los autovalores <= cutoff; el resto se ordena de mayor a
    menor.

    Args:
        rho: Operador densidad
        cutoff: Umbral de autovalores (por defecto settings.eigen_cutoff)

    Returns:
        Decomposition que reconstruye ρ
    """
    cutoff = settings.eigen_cutoff if cutoff is None else cutoff
    if cutoff < 0:
        raise StateValidationError(f"cutoff debe ser >= 0: {cutoff}")

    eigvals, eigvecs = np.linalg.eigh(rho.matrix)
    order = np.argsort(eigvals)[::-1]
    states = tuple(
        PureState(rho.space, np.sqrt(eigvals[j]) * eigvecs[:, j])
        for j in order
        if eigvals[j] > cutoff
    )
    if not states:
        raise StateValidationError("El operador no tiene autovalores por encima del umbral")

    logger.debug(f"Descomposición espectral de rango {len(states)} en {rho.space}")
    return Decomposition(states, rho.space)


def is_isometry(u: ComplexArray, tol: float = ISOMETRY_TOL) -> bool:
    """True si u (m×r) tiene columnas ortonormales: u† u = I_r."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] < u.shape[1]:
        return False
    gram = u.conj().T @ u
    return bool(np.max(np.abs(gram - np.eye(u.shape[1]))) <= tol)


def rotate_decomposition(dec: Decomposition, u: ComplexArray) -> Decomposition:
    """
    Nueva descomposición |ψ_i⟩ = Σ_j U_ij |φ_j⟩ del mismo ρ.

    Args:
        dec: Descomposición de partida con r estados
        u: Isometría m×r (m >= r)

    Returns:
        Descomposición con m estados (los que resultan nulos se descartan)

    Raises:
        StateValidationError: Si u no es una isometría compatible
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[1] != dec.rank:
        raise StateValidationError(f"u debe tener {dec.rank} columnas, tiene forma {u.shape}")
    if not is_isometry(u):
        raise StateValidationError("u no es una isometría (u† u != I)")

    rotated = dec.vectors @ u.T
    norms = np.real(np.sum(rotated.conj() * rotated, axis=0))
    states = tuple(
        PureState(dec.parent_space, rotated[:, i])
        for i in range(rotated.shape[1])
        if norms[i] > ZERO_STATE_NORM_SQ
    )
    result = Decomposition(states, dec.parent_space)

    drift = float(np.max(np.abs(result.reconstruct() - dec.reconstruct())))
    if drift > RECONSTRUCTION_TOL:
        raise StateValidationError(f"La rotación no conserva ρ (error {drift:.3e})")
    return result
