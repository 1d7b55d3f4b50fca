"""
Descomposición de testigos en observables locales.

Base local (ortogonal en Hilbert-Schmidt) de cada factor de dimensión d:
- P{a} = |a⟩⟨a|                         (norma² 1)
- X{a}{b} = σ₁^{ab} = |a⟩⟨b| + |b⟩⟨a|     (norma² 2)
- Y{a}{b} = σ₂^{ab} = −i|a⟩⟨b| + i|b⟩⟨a|  (norma² 2)

Todas las proyecciones de la base computacional se miden con un mismo
ajuste ("Z"); cada par σ⊗σ es un ajuste propio.
"""

import csv
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from src.qstate.models import ComplexArray
from src.utils.logging import get_logger
from src.witness.models import MeasurementSchedule, MeasurementTerm, UnusableWitnessError, WitnessOperator

logger = get_logger(__name__)

COEFFICIENT_CUTOFF = 1e-12
RECONSTRUCTION_TOL = 1e-12
SCHEDULE_COLUMNS = (
    "term_id",
    "coefficient",
    "factor_A_observable",
    "factor_B_observable",
    "setting_group",
)


@lru_cache(maxsize=16)
def local_basis(d: int) -> tuple[tuple[str, str, ComplexArray], ...]:
    """Base local (etiqueta, ajuste, matriz) para un factor de dimensión d."""
    basis: list[tuple[str, str, ComplexArray]] = []
    for a in range(d):
        p = np.zeros((d, d), dtype=np.complex128)
        p[a, a] = 1.0
        basis.append((f"P{a}", "Z", p))
    for a, b in combinations(range(d), 2):
        x = np.zeros((d, d), dtype=np.complex128)
        x[a, b] = x[b, a] = 1.0
        y = np.zeros((d, d), dtype=np.complex128)
        y[a, b], y[b, a] = -1j, 1j
        basis.append((f"X{a}{b}", f"X{a}{b}", x))
        basis.append((f"Y{a}{b}", f"Y{a}{b}", y))
    return tuple(basis)


def observable_matrix(label: str, d: int) -> ComplexArray:
    """Matriz del observable local con esa etiqueta."""
    for name, _, matrix in local_basis(d):
        if name == label:
            return matrix
    raise ValueError(f"Observable local desconocido: {label!r} (d={d})")


def local_decomposition(w: WitnessOperator) -> MeasurementSchedule:
    """
    Descompone W = Σ c · O_A ⊗ O_B en la base local.

    c = tr(W · O_A⊗O_B) / (‖O_A‖² ‖O_B‖²); se descartan |c| < 1e-12.

    Returns:
        MeasurementSchedule cuyos términos reconstruyen W con error <= 1e-12

    Raises:
        UnusableWitnessError: Si la reconstrucción no alcanza esa tolerancia
    """
    d_a, d_b = w.space.factor_dims
    terms: list[MeasurementTerm] = []
    for label_a, set_a, o_a in local_basis(d_a):
        norm_a = float(np.real(np.vdot(o_a, o_a)))
        for label_b, set_b, o_b in local_basis(d_b):
            norm_b = float(np.real(np.vdot(o_b, o_b)))
            coefficient = float(np.real(np.sum(w.matrix.T * np.kron(o_a, o_b)))) / (norm_a * norm_b)
            if abs(coefficient) < COEFFICIENT_CUTOFF:
                continue
            terms.append(
                MeasurementTerm(
                    term_id=f"{w.name}:{len(terms)}",
                    coefficient=coefficient,
                    observable_a=label_a,
                    observable_b=label_b,
                    setting_group=f"{set_a}-{set_b}",
                )
            )

    schedule = MeasurementSchedule(tuple(terms))
    residual = float(np.max(np.abs(reconstruct(schedule, d_a, d_b) - w.matrix)))
    if residual > RECONSTRUCTION_TOL:
        raise UnusableWitnessError(
            f"{w.name}: los términos locales no reconstruyen W (residuo {residual:.3e})"
        )
    logger.debug(f"{w.name}: {len(terms)} términos locales")
    return schedule


def reconstruct(schedule: MeasurementSchedule, d_a: int, d_b: int) -> ComplexArray:
    """Σ c · O_A ⊗ O_B."""
    out = np.zeros((d_a * d_b, d_a * d_b), dtype=np.complex128)
    for t in schedule.terms:
        out += t.coefficient * np.kron(
            observable_matrix(t.observable_a, d_a), observable_matrix(t.observable_b, d_b)
        )
    return out


def write_schedule_csv(schedule: MeasurementSchedule, path: str | Path) -> None:
    """CSV con columnas term_id, coefficient, factor_A/B_observable, setting_group."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCHEDULE_COLUMNS)
        for t in schedule.terms:
            writer.writerow(
                [t.term_id, f"{t.coefficient:.15g}", t.observable_a, t.observable_b, t.setting_group]
            )
