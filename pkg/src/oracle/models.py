"""
Modelos del oráculo: configuración de búsqueda, resultados e informes.

Los informes se renderizan como texto y como CSV de márgenes por caso; dos
ejecuciones con la misma semilla producen exactamente los mismos bytes.
"""

import csv
import io
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

from src.config import settings


class SearchConfig(BaseModel):
    """Parámetros de la búsqueda aleatoria sobre descomposiciones."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = Field(default_factory=lambda: settings.seed, ge=0)
    n_restarts: int = Field(default=8, gt=0)
    n_iterations: int = Field(default=400, gt=0)
    # None: rango(ρ) + 2 columnas
    decomposition_size: int | None = Field(default=None, gt=0)
    perturbation_scale: float = Field(default=0.2, gt=0.0)
    stall_iterations: int = Field(default=50, gt=0)

    def columns_for(self, rank: int) -> int:
        """Tamaño m de la descomposición para un ρ de rango r (m >= r)."""
        return max(rank, self.decomposition_size or rank + 2)


@dataclass(frozen=True)
class RestartResult:
    """Mejor valor de un reinicio y su historial (no creciente)."""

    index: int
    value: float
    history: tuple[float, ...]


@dataclass(frozen=True)
class SearchResult:
    """Resultado de una búsqueda: el mínimo sobre todos los reinicios."""

    value: float
    restarts: tuple[RestartResult, ...]

    @property
    def best_restart(self) -> int:
        return min(self.restarts, key=lambda r: (r.value, r.index)).index


@dataclass(frozen=True)
class CaseMargin:
    """Margen de una comprobación en un caso concreto (negativo = violación)."""

    check: str
    case: str
    margin: float


@dataclass(frozen=True)
class CheckResult:
    """Resultado agregado de una comprobación del oráculo."""

    name: str
    cases: tuple[CaseMargin, ...]
    tolerance: float
    failure: str | None = None

    @property
    def n_cases(self) -> int:
        return len(self.cases)

    @property
    def violations(self) -> tuple[CaseMargin, ...]:
        return tuple(c for c in self.cases if c.margin < -self.tolerance)

    @property
    def passed(self) -> bool:
        return self.failure is None and not self.violations

    @property
    def worst_margin(self) -> float:
        return min((c.margin for c in self.cases), default=0.0)


@dataclass(frozen=True)
class OracleReport:
    """Conjunto ordenado de comprobaciones."""

    seed: int
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)

    def render_text(self) -> str:
        lines = [f"Autoverificación (semilla {self.seed})"]
        for check in self.checks:
            status = "OK" if check.passed else "FALLO"
            lines.append(
                f"  [{status}] {check.name}: {check.n_cases} casos, "
                f"margen mínimo {check.worst_margin:.6e}, "
                f"{len(check.violations)} violaciones (tolerancia {check.tolerance:g})"
            )
            if check.failure:
                lines.extend(f"      {line}" for line in check.failure.splitlines())
        verdict = "todas las comprobaciones pasan" if self.passed else "hay comprobaciones fallidas"
        lines.append(f"Resultado: {verdict}")
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["check", "case", "margin"])
        for check in self.checks:
            for case in check.cases:
                writer.writerow([case.check, case.case, f"{case.margin:.15g}"])
        return buffer.getvalue()
