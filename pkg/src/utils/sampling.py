"""
Muestreo aleatorio reproducible: unitarias de Haar, isometrías, estados.

Todas las funciones reciben un numpy.random.Generator explícito; los flujos
independientes se derivan con stream_rng(seed, índice).
"""

import numpy as np
import numpy.typing as npt
from scipy.linalg import qr

ComplexArray = npt.NDArray[np.complex128]


def stream_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Crea un generador independiente para (seed, índices...).

    Dos llamadas con los mismos argumentos producen la misma secuencia.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, *stream]))


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> ComplexArray:
    """Matriz compleja gaussiana estándar (entradas con varianza 1)."""
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return ((real + 1j * imag) / np.sqrt(2)).astype(np.complex128)


def haar_isometry(rng: np.random.Generator, rows: int, cols: int) -> ComplexArray:
    """
    Isometría rows×cols distribuida según Haar (columnas ortonormales).

    QR de una matriz de Ginibre con la fase de la diagonal de R absorbida
    en Q; con rows == cols es una unitaria de Haar.
    """
    if cols > rows:
        raise ValueError(f"Una isometría necesita rows >= cols ({rows} < {cols})")
    q, r = qr(ginibre(rng, rows, cols), mode="economic")
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return np.asarray(q * phases, dtype=np.complex128)


def haar_unitary(rng: np.random.Generator, n: int) -> ComplexArray:
    """Unitaria n×n distribuida según Haar."""
    return haar_isometry(rng, n, n)


def random_pure_vector(rng: np.random.Generator, dim: int) -> ComplexArray:
    """Vector de estado normalizado uniforme en la esfera de dimensión dim."""
    v = ginibre(rng, dim, 1)[:, 0]
    return np.asarray(v / np.linalg.norm(v), dtype=np.complex128)


def random_density_matrix(
    rng: np.random.Generator,
    dim: int,
    rank: int | None = None,
) -> ComplexArray:
    """
    Matriz densidad aleatoria (medida inducida de Hilbert-Schmidt).

    Args:
        rng: Generador
        dim: Dimensión total
        rank: Rango deseado (por defecto rango completo)

    Returns:
        Matriz hermítica, semidefinida positiva y de traza 1
    """
    g = ginibre(rng, dim, rank or dim)
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return np.asarray(rho / np.trace(rho).real, dtype=np.complex128)


def restricted_unitary(
    rng: np.random.Generator,
    dim: int,
    support: tuple[int, int],
) -> ComplexArray:
    """
    Isometría parcial u con soporte en span{|a⟩, |b⟩}.

    Cumple M u M = u y u u† = u† u = M con M = |a⟩⟨a| + |b⟩⟨b|.
    """
    a, b = support
    u = np.zeros((dim, dim), dtype=np.complex128)
    block = haar_unitary(rng, 2)
    idx = np.array([a, b])
    u[np.ix_(idx, idx)] = block
    return u
