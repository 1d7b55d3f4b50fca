"""
Cotas medibles sobre dos copias: tr(ρ⊗ρ V_(i)) y la suma selectiva de
tr(ρ⊗ρ V_α).
"""

import numpy as np

from src.bounds.models import (
    IMAG_RESIDUE_TOL,
    AlphaTerm,
    BoundKind,
    BoundReport,
    BoundsError,
    ConsistencyError,
)
from src.qstate.models import DensityOperator
from src.twocopy.models import TwoCopyOperator
from src.twocopy.operators import build_V, build_V_alpha, chi_indices, resolve_weights
from src.utils.logging import get_logger

logger = get_logger(__name__)


def real_trace(value: complex, what: str) -> float:
    """Parte real de una traza que debe ser real; residuo grande es un error interno."""
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise ConsistencyError(f"{what}: residuo imaginario {value.imag:.3e}")
    return float(value.real)


def _require_bipartite(rho: DensityOperator) -> None:
    if not rho.space.is_bipartite:
        raise BoundsError(f"Se necesita un estado bipartito, recibido {rho.space}")


def two_copy_expectation(op: TwoCopyOperator, rho: DensityOperator) -> float:
    """tr(ρ⊗ρ V) real."""
    return real_trace(op.expectation(rho), f"tr(ρ⊗ρ {op.name})")


def two_copy_bound_Vi(rho: DensityOperator, which: int) -> BoundReport:
    """C(ρ) >= √max(0, tr(ρ⊗ρ V_(i)))."""
    _require_bipartite(rho)
    raw = two_copy_expectation(build_V(rho.space, which), rho)
    return BoundReport(float(np.sqrt(max(0.0, raw))), raw, BoundKind.TWO_COPY_VI)


def two_copy_bound_Valpha_sum(
    rho: DensityOperator,
    weights: tuple[float, float] | None = None,
) -> BoundReport:
    """
    C²(ρ) >= Σ_α tr(ρ⊗ρ V_α), sumando solo los α con traza no negativa.

    Args:
        rho: Operador densidad bipartito
        weights: (c₁, c₂); por defecto settings.default_weights

    Returns:
        BoundReport con value = √(Σ términos >= 0) y todos los crudos
    """
    _require_bipartite(rho)
    c = resolve_weights(weights=weights)
    terms = tuple(
        AlphaTerm(index, two_copy_expectation(build_V_alpha(rho.space, index, weights=c), rho))
        for index in chi_indices(rho.space)
    )
    counted = tuple(t for t in terms if t.raw >= 0)
    total = sum(t.raw for t in counted)
    logger.debug(f"Suma V_α con pesos {c}: {len(counted)}/{len(terms)} términos >= 0")
    return BoundReport(
        float(np.sqrt(total)),
        total,
        BoundKind.TWO_COPY_VALPHA_SUM,
        per_alpha=terms,
        detected=tuple(t for t in counted if t.raw > 0),
    )


def cross_expectation(rho: DensityOperator, sigma: DensityOperator, which: int) -> float:
    """tr(ρ⊗σ V_(i)); C(ρ)C(σ) >= este valor."""
    _require_bipartite(rho)
    if sigma.space != rho.space:
        raise BoundsError(f"ρ en {rho.space} y σ en {sigma.space}")
    op = build_V(rho.space, which)
    return real_trace(op.expectation(rho, sigma), f"tr(ρ⊗σ {op.name})")
