"""
Modelos de datos de estados cuánticos.

Dataclasses inmutables que representan espacios de Hilbert multi-factor,
estados puros (posiblemente subnormalizados), operadores densidad y
descomposiciones de un operador densidad en estados puros.
"""

from dataclasses import dataclass, field
from math import prod

import numpy as np
import numpy.typing as npt

from src.config import settings
from src.utils.logging import get_logger

logger = get_logger(__name__)

ComplexArray = npt.NDArray[np.complex128]

# Tolerancias de validación
HERMITIAN_TOL = 1e-12
NEGATIVE_EIGEN_TOL = 1e-10
TRACE_TOL = 1e-10
IMAG_TRACE_TOL = 1e-12
NORM_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10


class StateValidationError(ValueError):
    """Estado u operador que no cumple sus invariantes."""

    pass


def _frozen(array: npt.ArrayLike) -> ComplexArray:
    """Copia compleja de solo lectura."""
    out = np.array(array, dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HilbertSpace:
    """
    Espacio de Hilbert producto H_1 ⊗ ... ⊗ H_N.

    El orden de los factores define el orden row-major de la base
    computacional y de todos los productos de Kronecker.
    """

    factor_dims: tuple[int, ...]
    # Los espacios inducidos por una bipartición agrupan factores y no se
    # limitan por max_local_dim
    check_scale: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.factor_dims)
        if not dims:
            raise StateValidationError("El espacio necesita al menos un factor")
        for d in dims:
            if d < 2:
                raise StateValidationError(f"Dimensión local inválida: {d} (mínimo 2)")
            if self.check_scale and d > settings.max_local_dim:
                raise StateValidationError(
                    f"Dimensión local {d} fuera de escala (máximo {settings.max_local_dim})"
                )
        object.__setattr__(self, "factor_dims", dims)

    @property
    def total_dim(self) -> int:
        return prod(self.factor_dims)

    @property
    def n_factors(self) -> int:
        return len(self.factor_dims)

    @property
    def is_bipartite(self) -> bool:
        return self.n_factors == 2

    def concat(self, other: "HilbertSpace") -> "HilbertSpace":
        """Espacio producto self ⊗ other."""
        return HilbertSpace(
            self.factor_dims + other.factor_dims,
            check_scale=self.check_scale and other.check_scale,
        )

    def __str__(self) -> str:
        return "×".join(str(d) for d in self.factor_dims)


@dataclass(frozen=True, eq=False)
class PureState:
    """
    Vector de estado en la base computacional, posiblemente subnormalizado.

    Los estados subnormalizados |ψ_i⟩ = √p_i |Ψ_i⟩ absorben la probabilidad
    de la descomposición y se tratan igual que los normalizados.
    """

    space: HilbertSpace
    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        amplitudes = _frozen(self.amplitudes).reshape(-1)
        if amplitudes.shape[0] != self.space.total_dim:
            raise StateValidationError(
                f"Se esperaban {self.space.total_dim} amplitudes, hay {amplitudes.shape[0]}"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise StateValidationError("Amplitudes no finitas")
        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if not 0.0 < norm_sq <= 1.0 + NORM_TOL:
            raise StateValidationError(f"Norma al cuadrado fuera de (0, 1]: {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def projector(self) -> ComplexArray:
        """|ψ⟩⟨ψ| (sin normalizar)."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def as_matrix(self) -> ComplexArray:
        """Amplitudes como matriz d_1 × (d_2···d_N) para un estado bipartito."""
        return self.amplitudes.reshape(self.space.factor_dims[0], -1)

    def to_density(self) -> "DensityOperator":
        return DensityOperator(self.space, self.projector())


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Operador densidad de traza <= 1 sobre un espacio multi-factor.

    Autovalores en [-1e-10, 0) se recortan a cero al construir; valores más
    negativos son un error.
    """

    space: HilbertSpace
    matrix: ComplexArray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        dim = self.space.total_dim
        if matrix.shape != (dim, dim):
            raise StateValidationError(f"Se esperaba una matriz {dim}×{dim}, hay {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise StateValidationError("Entradas no finitas en el operador densidad")

        asym = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asym > HERMITIAN_TOL:
            raise StateValidationError(f"Operador no hermítico (desviación {asym:.3e})")
        matrix = 0.5 * (matrix + matrix.conj().T)

        trace = np.trace(matrix)
        if abs(trace.imag) > IMAG_TRACE_TOL:
            raise StateValidationError(f"Traza con parte imaginaria {trace.imag:.3e}")
        if trace.real > 1.0 + TRACE_TOL:
            raise StateValidationError(f"Traza mayor que 1: {trace.real!r}")

        eigvals, eigvecs = np.linalg.eigh(matrix)
        min_eig = float(eigvals[0])
        if min_eig < -NEGATIVE_EIGEN_TOL:
            raise StateValidationError(f"Autovalor negativo: {min_eig:.3e}")
        if min_eig < 0.0:
            logger.debug(f"Recortando autovalores negativos (mínimo {min_eig:.3e})")
            clipped = np.clip(eigvals, 0.0, None)
            matrix = (eigvecs * clipped) @ eigvecs.conj().T
            matrix = 0.5 * (matrix + matrix.conj().T)

        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        """tr ρ²."""
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def eigenvalues(self) -> npt.NDArray[np.float64]:
        """Autovalores en orden decreciente."""
        return np.asarray(np.linalg.eigvalsh(self.matrix)[::-1], dtype=np.float64)

    def transformed(self, op: ComplexArray) -> "DensityOperator":
        """op ρ op† (op unitaria o isometría parcial, la traza no puede crecer)."""
        return DensityOperator(self.space, op @ self.matrix @ op.conj().T)

    @classmethod
    def maximally_mixed(cls, space: HilbertSpace) -> "DensityOperator":
        return cls(space, np.eye(space.total_dim, dtype=np.complex128) / space.total_dim)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    Descomposición ρ = Σ_i |ψ_i⟩⟨ψ_i| en estados subnormalizados.

    Dos descomposiciones del mismo ρ se relacionan por una isometría.
    """

    states: tuple[PureState, ...]
    parent_space: HilbertSpace
    _vectors: ComplexArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        states = tuple(self.states)
        if not states:
            raise StateValidationError("Una descomposición necesita al menos un estado")
        for state in states:
            if state.space != self.parent_space:
                raise StateValidationError(
                    f"Estado en {state.space} dentro de una descomposición de {self.parent_space}"
                )
        object.__setattr__(self, "states", states)
        vectors = np.stack([s.amplitudes for s in states], axis=1)
        object.__setattr__(self, "_vectors", _frozen(vectors))

    @property
    def rank(self) -> int:
        """Número de estados (r), igual al tamaño de la T-matrix."""
        return len(self.states)

    @property
    def vectors(self) -> ComplexArray:
        """Matriz D×r cuyas columnas son los |ψ_i⟩."""
        return self._vectors

    def reconstruct(self) -> ComplexArray:
        """Σ_i |ψ_i⟩⟨ψ_i|."""
        v = self._vectors
        return np.asarray(v @ v.conj().T, dtype=np.complex128)

    def residual(self, rho: DensityOperator) -> float:
        """max |Σ_i |ψ_i⟩⟨ψ_i| − ρ| entrada a entrada."""
        return float(np.max(np.abs(self.reconstruct() - rho.matrix)))
