"""
Modelos de datos para las cotas de concurrencia.

BoundReport conserva el valor crudo (antes de recortar en cero) y el
desglose por α, que necesitan las sumas selectivas y los CSV.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy.linalg import svdvals

from src.qstate.models import ComplexArray, HilbertSpace, _frozen
from src.twocopy.models import ChiIndex
from src.twocopy.operators import chi_indices

SYMMETRY_TOL = 1e-10
TAU_NORM_TOL = 1e-12
# Residuo imaginario máximo admitido en trazas que deben ser reales
IMAG_RESIDUE_TOL = 1e-10


class BoundsError(ValueError):
    """Entrada inválida para el cálculo de una cota."""

    pass


class ConsistencyError(RuntimeError):
    """Resultado interno incoherente (traza no real, T no simétrica...)."""

    pass


class BoundKind(str, Enum):
    """Tipo de cota recogida en un BoundReport."""

    ALB_ALPHA = "ALB_alpha"
    LB_TAU = "LB_tau"
    SUM_SQ_ALGEBRAIC = "sum_sq_algebraic"
    TWO_COPY_VI = "two_copy_Vi"
    TWO_COPY_VALPHA_SUM = "two_copy_Valpha_sum"
    WITNESS = "witness"
    WITNESS_SQ_SUM = "witness_sq_sum"
    MULTI_LB_TAU = "multi_LB_tau"
    MULTI_SUM_SQ = "multi_sum_sq"
    MULTI_TWO_COPY = "multi_two_copy"
    MULTI_WITNESS = "multi_witness"


@dataclass(frozen=True)
class AlphaTerm:
    """
    Término crudo de una suma por α.

    cut es la máscara de la bipartición en el caso multipartito (None en el
    caso bipartito).
    """

    index: ChiIndex
    raw: float
    cut: int | None = None

    @property
    def label(self) -> str:
        if self.cut is None:
            return self.index.label
        return f"m{self.cut}_{self.index.label}"


@dataclass(frozen=True)
class BoundReport:
    """
    Resultado de una cota inferior de la concurrencia.

    Attributes:
        value: Cota recortada (>= 0)
        raw_value: Agregado antes de recortar
        kind: Tipo de cota
        per_alpha: Términos crudos por α (o por γ)
        detected: α cuyo término se contó (entrelazamiento detectado en la
            submatriz de dos qubits, estado destilable)
    """

    value: float
    raw_value: float
    kind: BoundKind
    per_alpha: tuple[AlphaTerm, ...] = ()
    detected: tuple[AlphaTerm, ...] = ()

    def __post_init__(self) -> None:
        if self.value < 0 or not np.isfinite(self.value):
            raise ConsistencyError(f"Cota inválida {self.value!r} ({self.kind.value})")

    @property
    def is_detected(self) -> bool:
        return self.value > 0


@dataclass(frozen=True, eq=False)
class TauVector:
    """
    Coeficientes z_α de |τ⟩ = Σ_α z*_α |χ_α⟩, en el orden de chi_indices.

    Σ|z_α|² = 1.
    """

    joint_space: HilbertSpace
    coefficients: ComplexArray

    def __post_init__(self) -> None:
        coefficients = _frozen(self.coefficients).reshape(-1)
        expected = len(chi_indices(self.joint_space))
        if coefficients.shape[0] != expected:
            raise BoundsError(f"Se esperaban {expected} coeficientes z_α, hay {coefficients.shape[0]}")
        norm_sq = float(np.sum(np.abs(coefficients) ** 2))
        if abs(norm_sq - 1.0) > TAU_NORM_TOL:
            raise BoundsError(f"Σ|z_α|² debe ser 1, es {norm_sq!r}")
        object.__setattr__(self, "coefficients", coefficients)

    def as_dict(self) -> dict[ChiIndex, complex]:
        return {
            index: complex(z)
            for index, z in zip(chi_indices(self.joint_space), self.coefficients, strict=True)
            if z != 0
        }

    @classmethod
    def single(cls, joint_space: HilbertSpace, index: ChiIndex) -> "TauVector":
        """τ concentrado en un único α (z_α = 1)."""
        indices = chi_indices(joint_space)
        if index not in indices:
            raise BoundsError(f"α {index.label} no pertenece a {joint_space}")
        z = np.zeros(len(indices), dtype=np.complex128)
        z[indices.index(index)] = 1.0
        return cls(joint_space, z)


@dataclass(frozen=True, eq=False)
class TMatrix:
    """
    Matriz simétrica T_jk = ⟨τ|φ_j⟩|φ_k⟩ de tamaño r×r.

    Sus valores singulares S_1 >= S_2 >= ... dan la cota algebraica
    max(0, S_1 − Σ_{l>1} S_l).
    """

    entries: ComplexArray
    source: ChiIndex | TauVector | None
    singular_values: npt.NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise BoundsError(f"T-matrix no cuadrada: {entries.shape}")
        asym = float(np.max(np.abs(entries - entries.T)))
        if asym > SYMMETRY_TOL:
            raise ConsistencyError(f"T-matrix no simétrica (desviación {asym:.3e})")
        object.__setattr__(self, "entries", entries)
        # svdvals devuelve los valores en orden decreciente
        object.__setattr__(self, "singular_values", np.asarray(svdvals(entries), dtype=np.float64))

    @property
    def rank(self) -> int:
        return int(self.entries.shape[0])

    @property
    def raw_bound(self) -> float:
        """S_1 − Σ_{l>1} S_l (puede ser negativo)."""
        s = self.singular_values
        return float(s[0] - np.sum(s[1:]))

    def diagonal_sum(self, u: ComplexArray) -> float:
        """Σ_i |[U T Uᵀ]_ii| para una isometría U (m×r)."""
        rotated = u @ self.entries @ u.T
        return float(np.sum(np.abs(np.diag(rotated))))
