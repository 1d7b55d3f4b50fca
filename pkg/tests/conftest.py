"""
Configuración global de pytest y fixtures compartidos.
"""

import os
from pathlib import Path

import numpy as np
import pytest

# Establecer variables de entorno para tests antes de importar config
os.environ.setdefault("CONCURRENCE_BOUNDS_SEED", "42")
os.environ.setdefault("CONCURRENCE_BOUNDS_THREADS", "2")
os.environ.setdefault("CONCURRENCE_BOUNDS_WEIGHT_C1", "0.5")
os.environ.setdefault("CONCURRENCE_BOUNDS_LOG_LEVEL", "DEBUG")
os.environ.setdefault("CONCURRENCE_BOUNDS_LOG_FORMAT", "text")

from src.models.qutrit import phi_me  # noqa: E402
from src.models.states import basis_state, phi_plus  # noqa: E402
from src.qstate.models import DensityOperator, HilbertSpace, PureState  # noqa: E402
from src.utils.sampling import random_density_matrix, stream_rng  # noqa: E402


@pytest.fixture
def fixtures_dir() -> Path:
    """Directorio de fixtures para tests."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    """Generador reproducible para cada test."""
    return stream_rng(20240601)


@pytest.fixture
def two_qubits() -> HilbertSpace:
    return HilbertSpace((2, 2))


@pytest.fixture
def two_qutrits() -> HilbertSpace:
    return HilbertSpace((3, 3))


@pytest.fixture
def bell() -> PureState:
    """|φ⁺⟩ de dos qubits."""
    return phi_plus(2)


@pytest.fixture
def phi_me_state() -> PureState:
    """|Φ_ME⟩ = (|01⟩ + |12⟩ + |20⟩)/√3."""
    return phi_me()


@pytest.fixture
def product_qutrits() -> PureState:
    """|0⟩|1⟩, separable."""
    return basis_state((3, 3), (0, 1))


@pytest.fixture
def random_rho():
    """Fábrica de operadores densidad aleatorios: random_rho(dims, rank=None, seed=0)."""

    def make(dims: tuple[int, ...], rank: int | None = None, seed: int = 0) -> DensityOperator:
        space = HilbertSpace(dims)
        matrix = random_density_matrix(stream_rng(seed, 99), space.total_dim, rank)
        return DensityOperator(space, matrix)

    return make
