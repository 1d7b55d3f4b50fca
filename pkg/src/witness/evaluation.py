"""
Evaluación de testigos: cota individual y suma de cuadrados selectiva.
"""

from collections.abc import Sequence

import numpy as np

from src.bounds.models import AlphaTerm, BoundKind, BoundReport, BoundsError
from src.qstate.models import DensityOperator
from src.witness.models import WitnessOperator


def _check_space(rho: DensityOperator, w: WitnessOperator) -> None:
    if rho.space != w.space:
        raise BoundsError(f"ρ en {rho.space} y testigo {w.name} en {w.space}")


def witness_bound(rho: DensityOperator, w: WitnessOperator) -> BoundReport:
    """
    C(ρ) >= max(0, −tr(ρW)).

    raw_value es −tr(ρW); el término por α guarda tr(ρW) tal cual.
    """
    _check_space(rho, w)
    trace = w.expectation(rho)
    per_alpha = (AlphaTerm(w.alpha, trace),) if w.alpha else ()
    return BoundReport(
        max(0.0, -trace),
        -trace,
        BoundKind.WITNESS,
        per_alpha=per_alpha,
        detected=per_alpha if trace < 0 else (),
    )


def witness_sq_sum_bound(rho: DensityOperator, witnesses: Sequence[WitnessOperator]) -> BoundReport:
    """
    C²(ρ) >= Σ_α [tr(ρW_σα)]², sumando solo los α con tr(ρW_σα) <= 0.

    Args:
        rho: Estado a acotar
        witnesses: Testigos W_σα de un mismo σ

    Returns:
        BoundReport con value = √(Σ seleccionados) y las trazas por α
    """
    if not witnesses:
        raise BoundsError("Se necesita al menos un testigo")
    refs = {w.sigma_ref for w in witnesses}
    if len(refs) > 1:
        raise BoundsError(f"Testigos de σ distintos: {sorted(refs)}")

    terms: list[AlphaTerm] = []
    for w in witnesses:
        _check_space(rho, w)
        if w.alpha is None:
            raise BoundsError("La suma de cuadrados necesita testigos W_σα, no W_σ")
        terms.append(AlphaTerm(w.alpha, w.expectation(rho)))

    counted = tuple(t for t in terms if t.raw <= 0)
    total = float(sum(t.raw**2 for t in counted))
    return BoundReport(
        float(np.sqrt(total)),
        total,
        BoundKind.WITNESS_SQ_SUM,
        per_alpha=tuple(terms),
        detected=tuple(t for t in counted if t.raw < 0),
    )
