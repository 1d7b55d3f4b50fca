"""
Concurrencia exacta de dos qubits (fórmula cerrada), usada como oráculo.
"""

import numpy as np
from scipy.linalg import eigh, svdvals

from src.models.states import ModelParameterError
from src.qstate.models import DensityOperator

_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


def wootters_concurrence(rho: DensityOperator) -> float:
    """
    C = max{0, λ₁ − λ₂ − λ₃ − λ₄}.

    λ_i son los valores singulares de √ρ (σ_y⊗σ_y) √ρ*, iguales a las raíces
    de los autovalores de √ρ ρ̃ √ρ.
    """
    if rho.space.factor_dims != (2, 2):
        raise ModelParameterError(f"Solo definida para 2×2, recibido {rho.space}")
    eigvals, eigvecs = eigh(rho.matrix)
    sqrt_rho = (eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))) @ eigvecs.conj().T
    lam = svdvals(sqrt_rho @ _YY @ sqrt_rho.conj())
    return max(0.0, float(lam[0] - np.sum(lam[1:])))
