"""
Concurrencia de estados puros y cotas algebraicas por valores singulares.
"""

from dataclasses import dataclass

import numpy as np

from src.bounds.models import (
    AlphaTerm,
    BoundKind,
    BoundReport,
    BoundsError,
    TauVector,
    TMatrix,
)
from src.qstate.models import ComplexArray, Decomposition, DensityOperator, PureState
from src.qstate.operations import eigen_decomposition
from src.twocopy.models import ChiIndex, ChiVector
from src.twocopy.operators import chi_indices, chi_operator_matrix, chi_vector, masked_state
from src.utils.logging import get_logger

logger = get_logger(__name__)

ChiLike = ChiIndex | ChiVector | TauVector


def _require_bipartite_state(obj: DensityOperator | PureState) -> None:
    if not obj.space.is_bipartite:
        raise BoundsError(f"Se necesita un estado bipartito, recibido {obj.space}")


def pure_concurrence(psi: PureState) -> float:
    """
    C(ψ) = √(2[⟨ψ|ψ⟩² − tr ρ_r²]) para ψ bipartito (posiblemente subnormalizado).
    """
    _require_bipartite_state(psi)
    m = psi.as_matrix()
    reduced = m @ m.conj().T
    purity = float(np.real(np.vdot(reduced, reduced)))
    return float(np.sqrt(max(0.0, 2.0 * (psi.norm_sq**2 - purity))))


def _chi_kernel(dec: Decomposition, chi: ChiLike) -> tuple[ComplexArray, ChiIndex | TauVector]:
    """Matriz K del vector de dos copias y la fuente para la T-matrix."""
    space = dec.parent_space
    if isinstance(chi, TauVector):
        if chi.joint_space != space:
            raise BoundsError(f"τ definido sobre {chi.joint_space}, descomposición sobre {space}")
        return chi_operator_matrix(space, chi.as_dict()), chi
    if isinstance(chi, ChiVector):
        if chi.joint_space != space:
            raise BoundsError(f"χ definido sobre {chi.joint_space}, descomposición sobre {space}")
        return chi.matrix_form(), chi.index
    return chi_vector(space, chi).matrix_form(), chi


def t_matrix(dec: Decomposition, chi: ChiLike) -> TMatrix:
    """
    T_jk = ⟨χ|φ_j⟩|φ_k⟩ (o con |τ⟩ en lugar de |χ⟩).

    Args:
        dec: Descomposición {|φ_j⟩} de un ρ bipartito
        chi: α, |χ_α⟩ o coeficientes de |τ⟩

    Returns:
        TMatrix simétrica r×r
    """
    if not dec.parent_space.is_bipartite:
        raise BoundsError(f"Se necesita un espacio bipartito, recibido {dec.parent_space}")
    kernel, source = _chi_kernel(dec, chi)
    x = dec.vectors
    return TMatrix(x.T @ kernel.conj() @ x, source)


def algebraic_lower_bound(
    rho: DensityOperator,
    chi: ChiLike,
    dec: Decomposition | None = None,
) -> BoundReport:
    """
    Cota algebraica max{0, S_1 − Σ_{l>1} S_l} de la T-matrix.

    Con un α da ALB_α(ρ); con |τ⟩ da LB_τ(ρ). No depende de la
    descomposición usada.

    Args:
        rho: Operador densidad bipartito
        chi: α, |χ_α⟩ o TauVector
        dec: Descomposición de ρ (por defecto la espectral)
    """
    _require_bipartite_state(rho)
    dec = dec or eigen_decomposition(rho)
    t = t_matrix(dec, chi)
    raw = t.raw_bound
    if isinstance(t.source, TauVector):
        return BoundReport(max(0.0, raw), raw, BoundKind.LB_TAU)
    term = AlphaTerm(t.source, raw)
    return BoundReport(
        max(0.0, raw),
        raw,
        BoundKind.ALB_ALPHA,
        per_alpha=(term,),
        detected=(term,) if raw > 0 else (),
    )


def sum_sq_algebraic_bound(rho: DensityOperator) -> BoundReport:
    """
    √(Σ_α ALB_α(ρ)²), cota inferior de C(ρ).

    Una misma descomposición espectral sirve para todos los α.
    """
    _require_bipartite_state(rho)
    dec = eigen_decomposition(rho)
    terms = tuple(
        AlphaTerm(index, t_matrix(dec, index).raw_bound) for index in chi_indices(rho.space)
    )
    detected = tuple(t for t in terms if t.raw > 0)
    value = float(np.sqrt(sum(t.raw**2 for t in detected)))
    logger.debug(f"Suma de cuadrados ALB: {len(detected)}/{len(terms)} términos positivos")
    return BoundReport(value, value, BoundKind.SUM_SQ_ALGEBRAIC, per_alpha=terms, detected=detected)


def generator_overlap(psi: PureState, index: ChiIndex) -> float:
    """
    |⟨ψ|L_xy ⊗ L_pq|ψ*⟩| con L_ab = |a⟩⟨b| − |b⟩⟨a| (generadores de SO(d)).

    Coincide con |⟨χ_α|ψψ⟩|.
    """
    _require_bipartite_state(psi)
    index.validate_for(psi.space)
    d_a, d_b = psi.space.factor_dims
    l_a = np.zeros((d_a, d_a))
    l_b = np.zeros((d_b, d_b))
    l_a[index.x, index.y], l_a[index.y, index.x] = 1.0, -1.0
    l_b[index.p, index.q], l_b[index.q, index.p] = 1.0, -1.0
    amp = psi.amplitudes
    return float(abs(np.vdot(amp, np.kron(l_a, l_b) @ amp.conj())))


def negativity(rho: DensityOperator) -> float:
    """Suma de |autovalores negativos| de la transpuesta parcial ρ^{T_B}."""
    _require_bipartite_state(rho)
    d_a, d_b = rho.space.factor_dims
    pt = rho.matrix.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(d_a * d_b, -1)
    eigvals = np.linalg.eigvalsh(pt)
    return float(-np.sum(eigvals[eigvals < 0]))


@dataclass(frozen=True)
class DetectionCheck:
    """Requisitos para que V_α o W_σα puedan detectar ρ."""

    index: ChiIndex
    alb: float
    masked_negativity: float

    @property
    def possible(self) -> bool:
        return self.alb > 0 and self.masked_negativity > 0


def detection_prerequisites(rho: DensityOperator, index: ChiIndex) -> DetectionCheck:
    """
    ALB_α(ρ) y la negatividad de la submatriz de dos qubits ϱ.

    Una detección positiva con V_α o W_σα exige ambas > 0.
    """
    alb = algebraic_lower_bound(rho, index).value
    masked = masked_state(rho, index)
    return DetectionCheck(index, alb, negativity(masked))
