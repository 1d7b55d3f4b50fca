"""
Concurrencia multipartita y sus cotas.

Cada bipartición l induce un sistema bipartito (left, right) con factores
compuestos; ρ se permuta a ese orden y se reutiliza el código bipartito.

- C(Ψ) = 2^{1−N/2} √(Σ_l C_l²(Ψ))
- LB_γ(ρ) = 2^{1−N/2} ALB_α(ρ_l)
- C²(ρ) >= 2^{2−N} Σ_γ tr(ρ⊗ρ V_γ)
"""

from collections.abc import Mapping
from math import prod

import numpy as np

from src.bounds.algebraic import pure_concurrence, t_matrix
from src.bounds.models import (
    TAU_NORM_TOL,
    AlphaTerm,
    BoundKind,
    BoundReport,
    BoundsError,
    TMatrix,
)
from src.bounds.two_copy import real_trace, two_copy_expectation
from src.config import settings
from src.multipartite.models import Bipartition, ChiGamma, DeskScaleError
from src.qstate.models import Decomposition, DensityOperator, HilbertSpace, PureState
from src.qstate.operations import eigen_decomposition, permute_matrix, permute_vector
from src.twocopy.operators import build_V_alpha, chi_indices, chi_vector, resolve_weights
from src.utils.logging import get_logger
from src.witness.builder import NORMALIZER_TOL
from src.witness.models import UnusableWitnessError

logger = get_logger(__name__)


def enumerate_bipartitions(space: HilbertSpace) -> list[Bipartition]:
    """
    Las 2^{N−1} − 1 biparticiones, ordenadas por máscara (left contiene el
    factor 0).
    """
    n = space.n_factors
    if n < 2:
        raise BoundsError(f"Se necesitan al menos 2 factores, hay {n}")
    full = (1 << n) - 1
    return [Bipartition(mask, n) for mask in range(1, full) if mask & 1]


def prefactor(n_factors: int) -> float:
    """2^{1−N/2}."""
    return float(2.0 ** (1 - n_factors / 2))


def check_desk_scale(space: HilbertSpace) -> None:
    """Rechaza espacios cuyo operador de dos copias supera max_two_copy_dim."""
    two_copy_dim = space.total_dim**2
    if two_copy_dim > settings.max_two_copy_dim:
        raise DeskScaleError(
            f"Dimensión de dos copias {two_copy_dim} > {settings.max_two_copy_dim} "
            f"para {space} (ajustar CONCURRENCE_BOUNDS_MAX_TWO_COPY_DIM)"
        )


def induced_space(space: HilbertSpace, bip: Bipartition) -> HilbertSpace:
    """Espacio bipartito (d_left, d_right) de una bipartición."""
    dims = space.factor_dims
    return HilbertSpace(
        (prod(dims[k] for k in bip.left), prod(dims[k] for k in bip.right)),
        check_scale=False,
    )


def induced_state(rho: DensityOperator, bip: Bipartition) -> DensityOperator:
    """ρ con los factores en orden (left, right) sobre el espacio inducido."""
    matrix = permute_matrix(rho.matrix, rho.space.factor_dims, bip.order)
    return DensityOperator(induced_space(rho.space, bip), matrix)


def induced_pure(psi: PureState, bip: Bipartition) -> PureState:
    vector = permute_vector(psi.amplitudes, psi.space.factor_dims, bip.order)
    return PureState(induced_space(psi.space, bip), vector)


def gamma_indices(space: HilbertSpace) -> list[ChiGamma]:
    """Todos los γ: biparticiones por máscara y α lexicográfico dentro de cada una."""
    return [
        ChiGamma(bip, index)
        for bip in enumerate_bipartitions(space)
        for index in chi_indices(induced_space(space, bip))
    ]


def chi_gamma_overlap(psi: PureState, gamma: ChiGamma) -> complex:
    """⟨χ_γ|ΨΨ⟩ en el espacio inducido."""
    induced = induced_pure(psi, gamma.bipartition)
    return chi_vector(induced.space, gamma.index).overlap(induced.amplitudes)


def multipartite_pure_concurrence(psi: PureState) -> float:
    """C(Ψ) = 2^{1−N/2} √(Σ_l C_l²(Ψ)); para N = 2 es la concurrencia bipartita."""
    bips = enumerate_bipartitions(psi.space)
    total = sum(pure_concurrence(induced_pure(psi, bip)) ** 2 for bip in bips)
    return prefactor(psi.space.n_factors) * float(np.sqrt(total))


def multipartite_lb_tau(rho: DensityOperator, z: Mapping[ChiGamma, complex]) -> BoundReport:
    """
    LB_τ(ρ) = 2^{1−N/2} max{0, S₁ − Σ_{l>1} S_l} con |τ⟩ = Σ_γ z*_γ |χ_γ⟩.

    La T-matrix se suma por γ: 𝓣 = Σ_γ z_γ T^γ, cada T^γ calculada sobre la
    misma descomposición espectral permutada a su bipartición.

    Raises:
        BoundsError: Σ|z_γ|² != 1 o γ ajeno al espacio
    """
    check_desk_scale(rho.space)
    norm_sq = float(sum(abs(v) ** 2 for v in z.values()))
    if abs(norm_sq - 1.0) > TAU_NORM_TOL:
        raise BoundsError(f"Σ|z_γ|² debe ser 1, es {norm_sq!r}")

    dec = eigen_decomposition(rho)
    total = np.zeros((dec.rank, dec.rank), dtype=np.complex128)
    for gamma, coefficient in z.items():
        if gamma.bipartition.n_factors != rho.space.n_factors:
            raise BoundsError(f"γ {gamma.label} no corresponde a {rho.space}")
        induced = _permuted_decomposition(dec, rho.space, gamma.bipartition)
        total += coefficient * t_matrix(induced, gamma.index).entries

    raw = prefactor(rho.space.n_factors) * TMatrix(total, None).raw_bound
    return BoundReport(max(0.0, raw), raw, BoundKind.MULTI_LB_TAU)


def _permuted_decomposition(
    dec: Decomposition,
    space: HilbertSpace,
    bip: Bipartition,
) -> Decomposition:
    """La misma descomposición con los factores en orden (left, right)."""
    target = induced_space(space, bip)
    states = tuple(
        PureState(target, permute_vector(s.amplitudes, space.factor_dims, bip.order))
        for s in dec.states
    )
    return Decomposition(states, target)


def multipartite_sum_sq_bound(rho: DensityOperator) -> BoundReport:
    """2^{1−N/2} √(Σ_γ ALB_γ(ρ)²) sobre todos los γ."""
    check_desk_scale(rho.space)
    terms: list[AlphaTerm] = []
    for bip in enumerate_bipartitions(rho.space):
        induced = induced_state(rho, bip)
        dec = eigen_decomposition(induced)
        for index in chi_indices(induced.space):
            terms.append(AlphaTerm(index, t_matrix(dec, index).raw_bound, cut=bip.mask))

    detected = tuple(t for t in terms if t.raw > 0)
    value = prefactor(rho.space.n_factors) * float(np.sqrt(sum(t.raw**2 for t in detected)))
    return BoundReport(value, value, BoundKind.MULTI_SUM_SQ, per_alpha=tuple(terms), detected=detected)


def multipartite_two_copy_bound(
    rho: DensityOperator,
    weights: tuple[float, float] | None = None,
) -> BoundReport:
    """
    C²(ρ) >= 2^{2−N} Σ_γ tr(ρ⊗ρ V_γ), sumando solo los γ con traza >= 0.
    """
    check_desk_scale(rho.space)
    c = resolve_weights(weights=weights)
    terms: list[AlphaTerm] = []
    for bip in enumerate_bipartitions(rho.space):
        induced = induced_state(rho, bip)
        for index in chi_indices(induced.space):
            raw = two_copy_expectation(build_V_alpha(induced.space, index, weights=c), induced)
            terms.append(AlphaTerm(index, raw, cut=bip.mask))

    counted = [t for t in terms if t.raw >= 0]
    total = prefactor(rho.space.n_factors) ** 2 * sum(t.raw for t in counted)
    return BoundReport(
        float(np.sqrt(total)),
        total,
        BoundKind.MULTI_TWO_COPY,
        per_alpha=tuple(terms),
        detected=tuple(t for t in counted if t.raw > 0),
    )


def multipartite_witness_bound(
    rho: DensityOperator,
    sigma: DensityOperator | PureState,
    weights: tuple[float, float] | None = None,
) -> BoundReport:
    """
    Cota con testigos W_σγ = −2^{2−N} tr₂(I⊗σ V_γ) / ALB_γ(σ).

    value = √(Σ_{tr(ρW_σγ) <= 0} tr(ρW_σγ)²).

    Raises:
        UnusableWitnessError: Ningún γ con ALB_γ(σ) > 0
    """
    check_desk_scale(rho.space)
    sigma_rho = sigma.to_density() if isinstance(sigma, PureState) else sigma
    if sigma_rho.space != rho.space:
        raise BoundsError(f"ρ en {rho.space} y σ en {sigma_rho.space}")
    c = resolve_weights(weights=weights)
    n = rho.space.n_factors

    terms: list[AlphaTerm] = []
    for bip in enumerate_bipartitions(rho.space):
        rho_l = induced_state(rho, bip)
        sigma_l = induced_state(sigma_rho, bip)
        sigma_dec = eigen_decomposition(sigma_l)
        for index in chi_indices(sigma_l.space):
            alb_gamma = prefactor(n) * max(0.0, t_matrix(sigma_dec, index).raw_bound)
            if alb_gamma <= NORMALIZER_TOL:
                continue
            v = build_V_alpha(sigma_l.space, index, weights=c)
            w = -(2.0 ** (2 - n)) * v.reduce_second_copy(sigma_l.matrix) / alb_gamma
            trace = real_trace(complex(np.sum(rho_l.matrix.T * w)), f"tr(ρ W_σγ) {index.label}")
            terms.append(AlphaTerm(index, trace, cut=bip.mask))

    if not terms:
        raise UnusableWitnessError(f"Ningún γ con ALB_γ(σ) > 0 en {rho.space}")
    counted = tuple(t for t in terms if t.raw <= 0)
    total = float(sum(t.raw**2 for t in counted))
    logger.debug(f"Testigos multipartitos: {len(terms)} γ utilizables")
    return BoundReport(
        float(np.sqrt(total)),
        total,
        BoundKind.MULTI_WITNESS,
        per_alpha=tuple(terms),
        detected=tuple(t for t in counted if t.raw < 0),
    )
