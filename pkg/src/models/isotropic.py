"""
Estados isótropos ρ_F = g·I + h·|φ⁺⟩⟨φ⁺| y sus fórmulas cerradas.

g = (1−F)/(d²−1), h = (F·d²−1)/(d²−1).
"""

from dataclasses import dataclass

import numpy as np

from src.models.states import ModelParameterError, phi_plus
from src.qstate.models import DensityOperator, HilbertSpace

FIDELITY_TOL = 1e-12


@dataclass(frozen=True)
class IsotropicParams:
    """Parámetros (d, F) de un estado isótropo."""

    d: int
    fidelity: float

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ModelParameterError(f"d debe ser >= 2, recibido {self.d}")
        if not -FIDELITY_TOL <= self.fidelity <= 1.0 + FIDELITY_TOL:
            raise ModelParameterError(f"F debe estar en [0, 1], recibido {self.fidelity}")
        object.__setattr__(self, "fidelity", float(min(1.0, max(0.0, self.fidelity))))

    @property
    def g(self) -> float:
        return (1.0 - self.fidelity) / (self.d**2 - 1)

    @property
    def h(self) -> float:
        return (self.fidelity * self.d**2 - 1.0) / (self.d**2 - 1)


def isotropic_state(d: int, fidelity: float) -> DensityOperator:
    """ρ_F con ⟨φ⁺|ρ_F|φ⁺⟩ = F."""
    params = IsotropicParams(d, fidelity)
    matrix = params.g * np.eye(d * d) + params.h * phi_plus(d).projector()
    return DensityOperator(HilbertSpace((d, d)), matrix)


def isotropic_exact_concurrence(d: int, fidelity: float) -> float:
    """C(ρ_F) = max{0, √(2d/(d−1)) (F − 1/d)}."""
    params = IsotropicParams(d, fidelity)
    return max(0.0, float(np.sqrt(2 * d / (d - 1))) * (params.fidelity - 1.0 / d))


def isotropic_Vi_closed_form(d: int, fidelity: float) -> float:
    """tr(ρ_F⊗ρ_F V_(i)) = 2d(d−1)[h²/d² − d·g² − 2gh/d]."""
    p = IsotropicParams(d, fidelity)
    return 2 * d * (d - 1) * (p.h**2 / d**2 - d * p.g**2 - 2 * p.g * p.h / d)


def isotropic_Valpha_sum_closed_form(d: int, fidelity: float) -> float:
    """Σ_α tr(ρ_F⊗ρ_F V_α) sobre los α con x=p, y=q: 2d(d−1)[h²/d² − 2g² − 2gh/d]."""
    p = IsotropicParams(d, fidelity)
    return 2 * d * (d - 1) * (p.h**2 / d**2 - 2 * p.g**2 - 2 * p.g * p.h / d)
