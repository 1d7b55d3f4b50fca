"""
Comandos de la CLI.

Cada cmd_* recibe un RunConfig ya validado y devuelve el código de salida.
Los errores de la librería se propagan; main.py los traduce a códigos.
"""

import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.bounds.algebraic import algebraic_lower_bound, sum_sq_algebraic_bound
from src.bounds.models import BoundKind, BoundReport
from src.bounds.two_copy import two_copy_bound_Valpha_sum, two_copy_bound_Vi
from src.cli.output import BOUND_COLUMNS, bound_rows, write_csv, write_gnuplot_script
from src.config import settings
from src.models.isotropic import (
    isotropic_exact_concurrence,
    isotropic_Valpha_sum_closed_form,
    isotropic_Vi_closed_form,
)
from src.models.qutrit import LindbladModel, TrajectoryPoint, evolve, phi_me, qutrit_initial_state
from src.multipartite.bounds import (
    multipartite_sum_sq_bound,
    multipartite_two_copy_bound,
    multipartite_witness_bound,
)
from src.oracle.verification import run_selftest
from src.qstate.io import read_state, write_operator
from src.qstate.models import DensityOperator, PureState
from src.twocopy.models import ChiIndex
from src.utils.logging import get_logger
from src.witness.builder import build_witness_family, build_witness_sigma, build_witness_sigma_alpha
from src.witness.evaluation import witness_bound, witness_sq_sum_bound
from src.witness.models import MeasurementSchedule, WitnessOperator
from src.witness.schedule import local_decomposition, write_schedule_csv

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Límite de escritorio del barrido isótropo
MAX_ISOTROPIC_D = 4

BOUND_METHODS = ("alb", "sumsq", "two-copy", "two-copy-alpha", "witness", "multi")
ISOTROPIC_COLUMNS = ("F", "C_exact", "bound_Vi", "bound_Valpha_sum")

Command = Literal["isotropic", "qutrit-decay", "bounds", "witness-export", "selftest"]
Method = Literal["alb", "sumsq", "two-copy", "two-copy-alpha", "witness", "multi"]


class RunConfig(BaseModel):
    """
    Argumentos de una invocación, validados antes de calcular nada.

    Un valor inválido o una combinación incompleta es un error de uso.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    seed: int = Field(ge=0)
    verbose: bool = False
    out: Path | None = None
    emit_plot: bool = False

    # isotropic
    d: int | None = Field(default=None, ge=2, le=MAX_ISOTROPIC_D)
    f_min: float = Field(default=0.0, ge=0.0, le=1.0)
    f_max: float = Field(default=1.0, ge=0.0, le=1.0)
    steps: int = Field(default=200, gt=0)

    # qutrit-decay
    lambdas: tuple[float, float, float] | None = None
    gamma: float = Field(default=1.0, gt=0.0)
    t_max: float = Field(default=3.0, ge=0.0)
    dt: float | None = Field(default=None, gt=0.0)
    record_every: int = Field(default=30, gt=0)
    which: Literal[1, 2] = 1

    # bounds / witness-export
    state: Path | None = None
    method: Method | None = None
    sigma: Path | None = None
    c_sigma: float | None = Field(default=None, gt=0.0)
    weights: tuple[float, float] | None = None
    alpha: str | None = None
    out_prefix: Path | None = None

    # selftest
    full: bool = False
    report: Path | None = None
    csv: Path | None = None

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: str | None) -> str | None:
        if v is not None and v != "all":
            ChiIndex.parse(v)
        return v

    @model_validator(mode="after")
    def validate_combination(self) -> "RunConfig":
        if self.f_min > self.f_max:
            raise ValueError(f"--f-min ({self.f_min}) mayor que --f-max ({self.f_max})")
        if self.emit_plot and self.out is None:
            raise ValueError("--emit-plot necesita --out")
        if self.method == "witness" and self.sigma is None:
            raise ValueError("El método witness necesita --sigma")
        if self.c_sigma is not None and self.method != "witness":
            raise ValueError("--c-sigma solo se usa con el método witness")
        return self

    @property
    def alpha_index(self) -> ChiIndex | None:
        return ChiIndex.parse(self.alpha) if self.alpha not in (None, "all") else None

    @property
    def integration_dt(self) -> float:
        return self.dt if self.dt is not None else settings.rk4_dt


def cmd_isotropic(cfg: RunConfig) -> int:
    """Barrido en F de la concurrencia exacta y de las dos cotas de dos copias."""
    assert cfg.d is not None
    d = cfg.d
    rows = [
        [
            float(f),
            isotropic_exact_concurrence(d, float(f)),
            float(np.sqrt(max(0.0, isotropic_Vi_closed_form(d, float(f))))),
            float(np.sqrt(max(0.0, isotropic_Valpha_sum_closed_form(d, float(f))))),
        ]
        for f in np.linspace(cfg.f_min, cfg.f_max, cfg.steps + 1)
    ]
    logger.info(f"Barrido isótropo d={d}: {len(rows)} puntos en [{cfg.f_min}, {cfg.f_max}]")
    write_csv(ISOTROPIC_COLUMNS, rows, cfg.out)
    if cfg.emit_plot and cfg.out is not None:
        write_gnuplot_script(cfg.out, ISOTROPIC_COLUMNS, xlabel="F")
    return EXIT_OK


def cmd_qutrit_decay(cfg: RunConfig) -> int:
    """
    Cotas con W_σ y con la familia W_σα (σ = Φ_ME) a lo largo de la
    desintegración del par de qutrits.
    """
    assert cfg.lambdas is not None
    model = LindbladModel(cfg.gamma)
    rho0 = qutrit_initial_state(cfg.lambdas).to_density()
    sigma = phi_me()
    w_sigma = build_witness_sigma(sigma, which=cfg.which)
    family = build_witness_family(sigma, which=cfg.which).witnesses

    # t_max y dt llegan en unidades de 1/Γ
    trajectory = evolve(
        model,
        rho0,
        cfg.t_max / cfg.gamma,
        cfg.integration_dt / cfg.gamma,
        cfg.record_every,
    )

    def evaluate(point: TrajectoryPoint) -> list[float]:
        sq = witness_sq_sum_bound(point.rho, family)
        return [
            point.gamma_t,
            witness_bound(point.rho, w_sigma).value,
            sq.value,
            *(term.raw for term in sq.per_alpha),
        ]

    with ThreadPoolExecutor(max_workers=settings.worker_count) as executor:
        rows = list(executor.map(evaluate, trajectory))

    header = ("t", "bound_Wsigma", "bound_Wsq", *(f"tr_{w.name}" for w in family))
    logger.info(f"Desintegración λ={cfg.lambdas}: {len(rows)} instantes hasta Γt={cfg.t_max}")
    write_csv(header, rows, cfg.out)
    if cfg.emit_plot and cfg.out is not None:
        write_gnuplot_script(cfg.out, header[:3], xlabel="Γt")
    return EXIT_OK


def _load_density(path: Path) -> DensityOperator:
    state = read_state(path)
    return state.to_density() if isinstance(state, PureState) else state


def _best_alpha_report(rho: DensityOperator) -> BoundReport:
    """max_α ALB_α(ρ) con el desglose completo."""
    terms = sum_sq_algebraic_bound(rho).per_alpha
    raw = max(t.raw for t in terms)
    return BoundReport(
        max(0.0, raw),
        raw,
        BoundKind.ALB_ALPHA,
        per_alpha=terms,
        detected=tuple(t for t in terms if t.raw > 0),
    )


def _witness_reports(cfg: RunConfig, rho: DensityOperator) -> list[BoundReport]:
    assert cfg.sigma is not None
    sigma = read_state(cfg.sigma)
    if cfg.alpha == "all":
        family = build_witness_family(sigma, weights=cfg.weights)
        return [witness_sq_sum_bound(rho, family.witnesses)]
    index = cfg.alpha_index
    if index is not None:
        return [witness_bound(rho, build_witness_sigma_alpha(sigma, index, weights=cfg.weights))]
    return [witness_bound(rho, build_witness_sigma(sigma, c_sigma=cfg.c_sigma, weights=cfg.weights))]


def cmd_bounds(cfg: RunConfig) -> int:
    """Evalúa el método pedido sobre el estado del fichero."""
    assert cfg.state is not None
    rho = _load_density(cfg.state)
    logger.info(f"Estado {rho.space} leído de {cfg.state}, método {cfg.method}")

    reports: list[BoundReport]
    match cfg.method:
        case "alb":
            index = cfg.alpha_index
            reports = [algebraic_lower_bound(rho, index) if index is not None else _best_alpha_report(rho)]
        case "sumsq":
            reports = [sum_sq_algebraic_bound(rho)]
        case "two-copy":
            reports = [two_copy_bound_Vi(rho, 1), two_copy_bound_Vi(rho, 2)]
        case "two-copy-alpha":
            reports = [two_copy_bound_Valpha_sum(rho, cfg.weights)]
        case "witness":
            reports = _witness_reports(cfg, rho)
        case "multi":
            reports = [
                multipartite_sum_sq_bound(rho),
                multipartite_two_copy_bound(rho, cfg.weights),
            ]
            if cfg.sigma is not None:
                reports.append(multipartite_witness_bound(rho, read_state(cfg.sigma), cfg.weights))
        case _:
            raise ValueError(f"Método desconocido: {cfg.method}")

    write_csv(BOUND_COLUMNS, bound_rows(reports), cfg.out)
    return EXIT_OK


def cmd_witness_export(cfg: RunConfig) -> int:
    """
    Escribe cada W_σα en formato "qop 1" y el plan de medidas combinado.

    Ficheros: {prefijo}_{nombre}.qop y {prefijo}_schedule.csv.
    """
    assert cfg.sigma is not None and cfg.out_prefix is not None
    sigma = read_state(cfg.sigma)
    index = cfg.alpha_index
    skipped: tuple[ChiIndex, ...] = ()
    witnesses: tuple[WitnessOperator, ...]
    if index is None:
        family = build_witness_family(sigma, which=cfg.which)
        witnesses, skipped = family.witnesses, family.skipped
    else:
        witnesses = (build_witness_sigma_alpha(sigma, index, which=cfg.which),)

    schedule = MeasurementSchedule.combine([local_decomposition(w) for w in witnesses])
    prefix = cfg.out_prefix
    prefix.parent.mkdir(parents=True, exist_ok=True)
    for w in witnesses:
        write_operator(w.matrix, w.space.factor_dims, Path(f"{prefix}_{w.name}.qop"))
    write_schedule_csv(schedule, Path(f"{prefix}_schedule.csv"))

    lines = [
        f"testigos: {len(witnesses)}",
        f"descartados: {len(skipped)}",
        f"observables: {schedule.n_observables}",
        f"ajustes: {schedule.n_settings}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    logger.info(f"{len(witnesses)} testigos exportados con prefijo {prefix}")
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    """Ejecuta los oráculos; 0 solo si todas las comprobaciones pasan."""
    report = run_selftest(seed=cfg.seed, full=cfg.full)
    text = report.render_text()
    sys.stdout.write(text)
    if cfg.report is not None:
        cfg.report.write_text(text, encoding="utf-8")
    if cfg.csv is not None:
        cfg.csv.write_text(report.render_csv(), encoding="utf-8")

    failed = report.first_failure
    if failed is not None:
        logger.error(f"Autoverificación fallida: {failed.name}")
        return EXIT_FAILURE
    return EXIT_OK
