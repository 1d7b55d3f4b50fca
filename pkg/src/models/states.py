"""
Estados de referencia: |φ⁺⟩, GHZ, W y productos de la base computacional.
"""

import numpy as np

from src.qstate.models import HilbertSpace, PureState


class ModelParameterError(ValueError):
    """Parámetro de un modelo fuera de rango."""

    pass


def phi_plus(d: int) -> PureState:
    """|φ⁺⟩ = Σ_i |ii⟩ / √d."""
    if d < 2:
        raise ModelParameterError(f"d debe ser >= 2, recibido {d}")
    amplitudes = np.zeros(d * d, dtype=np.complex128)
    amplitudes[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(HilbertSpace((d, d)), amplitudes)


def basis_state(dims: tuple[int, ...], digits: tuple[int, ...]) -> PureState:
    """Producto |i₁ i₂ ... i_N⟩ de la base computacional."""
    if len(dims) != len(digits) or any(not 0 <= i < d for i, d in zip(digits, dims, strict=True)):
        raise ModelParameterError(f"Índices {digits} incompatibles con dimensiones {dims}")
    space = HilbertSpace(dims)
    amplitudes = np.zeros(space.total_dim, dtype=np.complex128)
    amplitudes[int(np.ravel_multi_index(digits, dims))] = 1.0
    return PureState(space, amplitudes)


def ghz_state(n: int, d: int = 2) -> PureState:
    """(|0…0⟩ + … + |d−1…d−1⟩) / √d sobre n factores."""
    if n < 2:
        raise ModelParameterError(f"GHZ necesita n >= 2, recibido {n}")
    dims = (d,) * n
    amplitudes = sum(basis_state(dims, (k,) * n).amplitudes for k in range(d)) / np.sqrt(d)
    return PureState(HilbertSpace(dims), amplitudes)


def w_state(n: int) -> PureState:
    """(|10…0⟩ + |01…0⟩ + … + |0…01⟩) / √n para n qubits."""
    if n < 2:
        raise ModelParameterError(f"W necesita n >= 2, recibido {n}")
    dims = (2,) * n
    excitations = [tuple(int(j == k) for j in range(n)) for k in range(n)]
    amplitudes = sum(basis_state(dims, e).amplitudes for e in excitations) / np.sqrt(n)
    return PureState(HilbertSpace(dims), amplitudes)
