"""
Modelos de testigos cuantitativos de entrelazamiento y de su calendario de
medidas locales.
"""

from dataclasses import dataclass

import numpy as np

from src.bounds.two_copy import real_trace
from src.qstate.models import HERMITIAN_TOL, ComplexArray, DensityOperator, HilbertSpace, _frozen
from src.twocopy.models import ChiIndex


class UnusableWitnessError(ValueError):
    """σ no permite construir el testigo pedido (C(σ) o ALB_α(σ) nulos)."""

    pass


@dataclass(frozen=True, eq=False)
class WitnessOperator:
    """
    Testigo de una copia W_σ o W_σα.

    −tr(ρW) es cota inferior de C(ρ) (W_σ) o de ALB_α(ρ) (W_σα).

    Attributes:
        space: Espacio bipartito de una copia
        matrix: Matriz hermítica
        sigma_ref: Descripción de σ
        normalizer: C(σ) (o la cota superior dada) para W_σ, ALB_α(σ) para W_σα
        alpha: α del testigo o None para el testigo agregado W_σ
        weights: (c₁, c₂) de V_(1), V_(2) usados
    """

    space: HilbertSpace
    matrix: ComplexArray
    sigma_ref: str
    normalizer: float
    alpha: ChiIndex | None
    weights: tuple[float, float]

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.space.total_dim
        if matrix.shape != (dim, dim):
            raise ValueError(f"Se esperaba una matriz {dim}×{dim}, hay {matrix.shape}")
        asym = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asym > HERMITIAN_TOL:
            raise ValueError(f"Testigo no hermítico (desviación {asym:.3e})")
        if not self.normalizer > 0:
            raise UnusableWitnessError(f"Normalización no positiva: {self.normalizer!r}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def name(self) -> str:
        return self.alpha.witness_name if self.alpha else "Wsigma"

    def expectation(self, rho: DensityOperator) -> float:
        """tr(ρW)."""
        return real_trace(complex(np.sum(rho.matrix.T * self.matrix)), f"tr(ρ {self.name})")


@dataclass(frozen=True)
class WitnessFamily:
    """Testigos W_σα utilizables para un σ y los α descartados."""

    witnesses: tuple[WitnessOperator, ...]
    skipped: tuple[ChiIndex, ...]


@dataclass(frozen=True)
class MeasurementTerm:
    """Término c · O_A ⊗ O_B de la descomposición local de un testigo."""

    term_id: str
    coefficient: float
    observable_a: str
    observable_b: str
    setting_group: str

    @property
    def observable(self) -> tuple[str, str]:
        return (self.observable_a, self.observable_b)


@dataclass(frozen=True)
class MeasurementSchedule:
    """
    Conjunto de términos locales de uno o varios testigos.

    Un observable es un par distinto (O_A, O_B); un ajuste experimental
    agrupa los observables medibles a la vez (todas las proyecciones en la
    base computacional comparten ajuste).
    """

    terms: tuple[MeasurementTerm, ...]

    @property
    def n_observables(self) -> int:
        return len({t.observable for t in self.terms})

    @property
    def n_settings(self) -> int:
        return len({t.setting_group for t in self.terms})

    def __add__(self, other: "MeasurementSchedule") -> "MeasurementSchedule":
        return MeasurementSchedule(self.terms + other.terms)

    @classmethod
    def combine(cls, schedules: list["MeasurementSchedule"]) -> "MeasurementSchedule":
        return cls(tuple(t for s in schedules for t in s.terms))
