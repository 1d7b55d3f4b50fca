"""
Constructores de operadores de dos copias.

- Proyectores simétrico / antisimétrico P± = (I ± SWAP)/2
- 𝓐 = 4 P₋^A ⊗ P₋^B y su descomposición en la familia |χ_α⟩
- V_(1) = 4(P₋^A − P₊^A) ⊗ P₋^B, V_(2) = 4 P₋^A ⊗ (P₋^B − P₊^B)
- V_α = c₁ 𝓜V_(1)𝓜 + c₂ 𝓜V_(2)𝓜 y el proyector de máscara 𝓜
- Submatriz de dos qubits ϱ y transformaciones por isometrías restringidas

Los operadores sobre A₁A₂ ⊗ B₁B₂ se construyen con np.kron y se llevan al
orden canónico (A₁, B₁, A₂, B₂) con una única permutación cacheada.
"""

from functools import lru_cache
from itertools import combinations, product

import numpy as np

from src.config import settings
from src.qstate.models import ComplexArray, DensityOperator, HilbertSpace, _frozen
from src.qstate.operations import permute_matrix
from src.twocopy.models import (
    ChiIndex,
    ChiVector,
    TwoCopyError,
    TwoCopyOperator,
    _require_bipartite,
)
from src.utils.logging import get_logger

logger = get_logger(__name__)

WEIGHT_TOL = 1e-12
PARTIAL_ISOMETRY_TOL = 1e-10

# (A₁, A₂, B₁, B₂) -> (A₁, B₁, A₂, B₂)
_TO_CANONICAL = (0, 2, 1, 3)


@lru_cache(maxsize=32)
def _swap(d: int) -> ComplexArray:
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for i, j in product(range(d), repeat=2):
        swap[j * d + i, i * d + j] = 1.0
    return _frozen(swap)


def projector_sym_antisym(d: int, sign: int) -> ComplexArray:
    """
    Proyector sobre el subespacio simétrico (sign=+1) o antisimétrico
    (sign=−1) de C^d ⊗ C^d.
    """
    if d < 2:
        raise TwoCopyError(f"Dimensión inválida: {d}")
    if sign not in (1, -1):
        raise TwoCopyError(f"sign debe ser +1 o −1, recibido {sign}")
    return np.asarray((np.eye(d * d) + sign * _swap(d)) / 2, dtype=np.complex128)


def _to_canonical(matrix_aabb: ComplexArray, d_a: int, d_b: int) -> ComplexArray:
    """Reordena un operador sobre (A₁, A₂, B₁, B₂) al orden canónico."""
    return permute_matrix(matrix_aabb, (d_a, d_a, d_b, d_b), _TO_CANONICAL)


@lru_cache(maxsize=32)
def _a_matrix(d_a: int, d_b: int) -> ComplexArray:
    aabb = 4 * np.kron(projector_sym_antisym(d_a, -1), projector_sym_antisym(d_b, -1))
    return _frozen(_to_canonical(aabb, d_a, d_b))


@lru_cache(maxsize=64)
def _v_matrix(d_a: int, d_b: int, which: int) -> ComplexArray:
    if which == 1:
        aabb = 4 * np.kron(
            projector_sym_antisym(d_a, -1) - projector_sym_antisym(d_a, 1),
            projector_sym_antisym(d_b, -1),
        )
    else:
        aabb = 4 * np.kron(
            projector_sym_antisym(d_a, -1),
            projector_sym_antisym(d_b, -1) - projector_sym_antisym(d_b, 1),
        )
    return _frozen(_to_canonical(aabb, d_a, d_b))


def _check_which(which: int) -> None:
    if which not in (1, 2):
        raise TwoCopyError(f"which debe ser 1 o 2, recibido {which}")


def build_A(space: HilbertSpace) -> TwoCopyOperator:
    """𝓐 = 4 P₋^A ⊗ P₋^B; ⟨ψψ|𝓐|ψψ⟩ = C²(ψ)."""
    _require_bipartite(space)
    d_a, d_b = space.factor_dims
    return TwoCopyOperator(space, _a_matrix(d_a, d_b), name="A")


def chi_vector(space: HilbertSpace, index: ChiIndex) -> ChiVector:
    """|χ_α⟩ en el orden canónico; componentes ε(a₁,a₂)·ε(b₁,b₂)."""
    index.validate_for(space)
    d_a, d_b = space.factor_dims
    chi = np.zeros((d_a, d_b, d_a, d_b), dtype=np.complex128)
    x, y, p, q = index.x, index.y, index.p, index.q
    chi[x, p, y, q] = 1.0
    chi[x, q, y, p] = -1.0
    chi[y, p, x, q] = -1.0
    chi[y, q, x, p] = 1.0
    return ChiVector(index, space, chi.reshape(-1))


def chi_indices(space: HilbertSpace) -> list[ChiIndex]:
    """Todos los α en orden lexicográfico de (x, y, p, q)."""
    _require_bipartite(space)
    d_a, d_b = space.factor_dims
    return [
        ChiIndex(x, y, p, q)
        for (x, y), (p, q) in product(combinations(range(d_a), 2), combinations(range(d_b), 2))
    ]


def enumerate_chi(space: HilbertSpace) -> list[ChiVector]:
    """
    Familia {|χ_α⟩} que descompone 𝓐 = Σ_α |χ_α⟩⟨χ_α|.

    Hay [d_A(d_A−1)/2]·[d_B(d_B−1)/2] vectores, mutuamente ortogonales.
    """
    return [chi_vector(space, index) for index in chi_indices(space)]


def build_V(space: HilbertSpace, which: int) -> TwoCopyOperator:
    """
    Observable de dos copias V_(1) o V_(2).

    C²(ρ) >= tr(ρ⊗ρ V_(i)) para todo ρ.
    """
    _require_bipartite(space)
    _check_which(which)
    d_a, d_b = space.factor_dims
    return TwoCopyOperator(space, _v_matrix(d_a, d_b, which), name=f"V{which}")


def mask_projector(space: HilbertSpace, index: ChiIndex) -> tuple[ComplexArray, ComplexArray]:
    """(𝓜_A, 𝓜_B) con 𝓜_A = |x⟩⟨x| + |y⟩⟨y| y 𝓜_B = |p⟩⟨p| + |q⟩⟨q|."""
    index.validate_for(space)
    d_a, d_b = space.factor_dims
    m_a = np.zeros((d_a, d_a), dtype=np.complex128)
    m_b = np.zeros((d_b, d_b), dtype=np.complex128)
    m_a[index.x, index.x] = m_a[index.y, index.y] = 1.0
    m_b[index.p, index.p] = m_b[index.q, index.q] = 1.0
    return m_a, m_b


def _mask_diagonal(space: HilbertSpace, index: ChiIndex) -> ComplexArray:
    """Diagonal de 𝓜 = 𝓜_A⊗𝓜_B⊗𝓜_A⊗𝓜_B en el orden canónico."""
    m_a, m_b = mask_projector(space, index)
    single = np.kron(np.diag(m_a), np.diag(m_b))
    return np.asarray(np.kron(single, single), dtype=np.complex128)


def resolve_weights(
    which: int | None = None,
    weights: tuple[float, float] | None = None,
) -> tuple[float, float]:
    """
    Pesos (c₁, c₂) de la combinación convexa de V_(1)α y V_(2)α.

    which=1|2 selecciona un único término; sin nada se usan los pesos por
    defecto de la configuración.
    """
    if which is not None and weights is not None:
        raise TwoCopyError("Indicar which o weights, no ambos")
    if which is not None:
        _check_which(which)
        return (1.0, 0.0) if which == 1 else (0.0, 1.0)
    c1, c2 = weights if weights is not None else settings.default_weights
    if c1 < -WEIGHT_TOL or c2 < -WEIGHT_TOL or abs(c1 + c2 - 1.0) > WEIGHT_TOL:
        raise TwoCopyError(f"Pesos inválidos ({c1}, {c2}): se necesita c₁, c₂ >= 0 y c₁ + c₂ = 1")
    return float(c1), float(c2)


def build_V_alpha(
    space: HilbertSpace,
    index: ChiIndex,
    which: int | None = None,
    weights: tuple[float, float] | None = None,
) -> TwoCopyOperator:
    """
    V_α = c₁ 𝓜V_(1)𝓜 + c₂ 𝓜V_(2)𝓜.

    Su soporte es la submatriz de dos qubits span{x,y}×span{p,q} en ambas
    copias; |⟨χ_α|ψψ⟩|·|⟨χ_α|φφ⟩| >= ⟨ψφ|V_α|ψφ⟩.

    Args:
        space: Espacio bipartito de una copia
        index: α = (x, y, p, q)
        which: 1 o 2 para un único V_(i)α
        weights: (c₁, c₂) convexos; por defecto settings.default_weights

    Returns:
        TwoCopyOperator en el orden canónico
    """
    c1, c2 = resolve_weights(which, weights)
    mask = _mask_diagonal(space, index)
    d_a, d_b = space.factor_dims
    v = c1 * _v_matrix(d_a, d_b, 1) + c2 * _v_matrix(d_a, d_b, 2)
    masked = v * np.outer(mask, mask)
    return TwoCopyOperator(space, masked, name=f"V_{index.label}")


def masked_state(rho: DensityOperator, index: ChiIndex) -> DensityOperator:
    """
    Submatriz de dos qubits ϱ = (𝓜_A⊗𝓜_B) ρ (𝓜_A⊗𝓜_B).

    Subnormalizada; tr(ρ⊗ρ V_α) = tr(ϱ⊗ϱ V_α).
    """
    m_a, m_b = mask_projector(rho.space, index)
    return rho.transformed(np.kron(m_a, m_b))


def is_restricted_isometry(u: ComplexArray, mask: ComplexArray) -> bool:
    """True si 𝓜u𝓜 = u y u u† = u† u = 𝓜."""
    u = np.asarray(u)
    if u.shape != mask.shape:
        return False
    checks = (mask @ u @ mask - u, u @ u.conj().T - mask, u.conj().T @ u - mask)
    return all(float(np.max(np.abs(c))) <= PARTIAL_ISOMETRY_TOL for c in checks)


def restricted_isometry_transform(
    rho: DensityOperator,
    index: ChiIndex,
    u_a: ComplexArray,
    u_b: ComplexArray,
) -> DensityOperator:
    """
    ρ′ = (u_A⊗u_B) ρ (u_A⊗u_B)† con u_A, u_B isometrías parciales
    restringidas al soporte de 𝓜_A y 𝓜_B.

    tr(ρ⊗ρ V_α) es invariante y ALB_α no crece bajo esta transformación.

    Raises:
        TwoCopyError: Si u_A o u_B no cumplen las condiciones de soporte
    """
    m_a, m_b = mask_projector(rho.space, index)
    if not is_restricted_isometry(u_a, m_a):
        raise TwoCopyError(f"u_A no es una isometría restringida a span{{{index.x},{index.y}}}")
    if not is_restricted_isometry(u_b, m_b):
        raise TwoCopyError(f"u_B no es una isometría restringida a span{{{index.p},{index.q}}}")
    return rho.transformed(np.kron(u_a, u_b))


def chi_operator_matrix(
    space: HilbertSpace,
    coefficients: dict[ChiIndex, complex],
) -> ComplexArray:
    """
    Forma matricial K_τ de |τ⟩ = Σ_α z*_α |χ_α⟩.

    K_τ[i, j] = ⟨i|⟨j|τ⟩; la T-matrix es Xᵀ conj(K_τ) X.
    """
    dim = space.total_dim
    k = np.zeros((dim, dim), dtype=np.complex128)
    for index, z in coefficients.items():
        k += np.conj(z) * chi_vector(space, index).matrix_form()
    return k
