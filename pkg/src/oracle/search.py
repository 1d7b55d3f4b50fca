"""
Búsqueda aleatoria de descomposiciones óptimas (cotas superiores).

Cada descomposición {|ψ_i⟩} de ρ se obtiene de la espectral {|φ_j⟩} con una
isometría U (m×r): |ψ_i⟩ = Σ_j U_ij |φ_j⟩. Se minimiza sobre U con reinicios
de Haar y perturbaciones locales exp(iεH)U aceptadas solo si mejoran.
"""

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import numpy.typing as npt
from scipy.linalg import expm

from src.bounds.algebraic import t_matrix
from src.bounds.models import BoundsError
from src.config import settings
from src.multipartite.bounds import (
    check_desk_scale,
    enumerate_bipartitions,
    induced_space,
    prefactor,
)
from src.oracle.models import RestartResult, SearchConfig, SearchResult
from src.qstate.models import ComplexArray, DensityOperator, HilbertSpace
from src.qstate.operations import eigen_decomposition, subsystem_permutation
from src.twocopy.models import ChiIndex
from src.utils.logging import context_logger, timed
from src.utils.sampling import ginibre, haar_isometry, stream_rng

CostFunction = Callable[[ComplexArray], float]


def column_concurrences(vectors: ComplexArray, space: HilbertSpace) -> npt.NDArray[np.float64]:
    """
    Concurrencia de cada columna (estado subnormalizado) de una matriz D×m.

    Con N > 2 factores usa 2^{1−N/2} √(Σ_l C_l²) sobre las biparticiones.
    """
    norms_sq = np.sum(np.abs(vectors) ** 2, axis=0)
    squares = np.zeros(vectors.shape[1])
    for bip in enumerate_bipartitions(space):
        d_left, d_right = induced_space(space, bip).factor_dims
        perm = subsystem_permutation(space.factor_dims, bip.order)
        blocks = vectors[perm, :].T.reshape(-1, d_left, d_right)
        reduced = blocks @ blocks.conj().transpose(0, 2, 1)
        purity = np.sum(np.abs(reduced) ** 2, axis=(1, 2))
        squares += np.clip(2.0 * (norms_sq**2 - purity), 0.0, None)
    return np.asarray(prefactor(space.n_factors) * np.sqrt(squares), dtype=np.float64)


def _random_hermitian(rng: np.random.Generator, n: int) -> ComplexArray:
    g = ginibre(rng, n, n)
    return np.asarray(0.5 * (g + g.conj().T), dtype=np.complex128)


def _initial_isometry(rng: np.random.Generator, m: int, r: int, index: int) -> ComplexArray:
    """El reinicio 0 parte de la descomposición espectral; el resto de Haar."""
    if index == 0:
        return np.eye(m, r, dtype=np.complex128)
    return haar_isometry(rng, m, r)


def _greedy_restart(
    cost: CostFunction,
    rank: int,
    cfg: SearchConfig,
    index: int,
) -> RestartResult:
    rng = stream_rng(cfg.seed, index)
    m = cfg.columns_for(rank)
    u = _initial_isometry(rng, m, rank, index)
    best = cost(u)
    history = [best]
    scale = cfg.perturbation_scale
    stall = 0

    for _ in range(cfg.n_iterations):
        candidate = expm(1j * scale * _random_hermitian(rng, m)) @ u
        value = cost(candidate)
        if value < best:
            u, best, stall = candidate, value, 0
        else:
            stall += 1
            if stall >= cfg.stall_iterations:
                scale *= 0.5
                stall = 0
        history.append(best)

    return RestartResult(index, best, tuple(history))


def _run_restarts(cost: CostFunction, rank: int, cfg: SearchConfig, what: str) -> SearchResult:
    """Reinicios en paralelo; el orden de los resultados es el de sus índices."""
    log = context_logger(__name__, seed=cfg.seed, search=what)
    with timed(log, f"{cfg.n_restarts} reinicios"), ThreadPoolExecutor(max_workers=settings.worker_count) as executor:
        restarts = tuple(
            executor.map(lambda k: _greedy_restart(cost, rank, cfg, k), range(cfg.n_restarts))
        )
    value = min(r.value for r in restarts)
    log.debug(f"{cfg.n_restarts} reinicios, mejor valor {value:.12g}")
    return SearchResult(value, restarts)


def min_search_concurrence(rho: DensityOperator, cfg: SearchConfig | None = None) -> SearchResult:
    """
    Cota superior de C(ρ): el menor Σ_i C(ψ_i) encontrado.

    Para N > 2 factores el coste es la concurrencia multipartita de cada
    estado de la descomposición.

    Args:
        rho: Operador densidad con al menos dos factores
        cfg: Parámetros de búsqueda (por defecto SearchConfig())

    Returns:
        SearchResult con el mínimo y el historial de cada reinicio
    """
    cfg = cfg or SearchConfig()
    if rho.space.n_factors < 2:
        raise BoundsError(f"Se necesitan al menos 2 factores, hay {rho.space.n_factors}")
    check_desk_scale(rho.space)
    x = eigen_decomposition(rho).vectors

    def cost(u: ComplexArray) -> float:
        return float(np.sum(column_concurrences(x @ u.T, rho.space)))

    return _run_restarts(cost, x.shape[1], cfg, "concurrencia")


def min_search_alb(rho: DensityOperator, chi: ChiIndex, cfg: SearchConfig | None = None) -> SearchResult:
    """
    Mínimo aleatorio de Σ_i |[U T Uᵀ]_ii| sobre isometrías U.

    Nunca queda por debajo de ALB_α(ρ) (salvo redondeo); si la fórmula
    cerrada es el mínimo, la búsqueda converge a ella.
    """
    cfg = cfg or SearchConfig()
    t = t_matrix(eigen_decomposition(rho), chi)
    return _run_restarts(t.diagonal_sum, t.rank, cfg, f"ALB {chi.label}")
