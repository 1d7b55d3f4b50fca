"""
Par de qutrits con desintegración espontánea local.

ρ̇ = ℒ_A⊗1 + 1⊗ℒ_B, con ℒ(ρ) = (Γ/2)(2γργ† − ργ†γ − γ†γρ) y
γ = √2|1⟩⟨0| + |2⟩⟨1| (el nivel 2 es el estado final de la cadena).

Integración RK4 de paso fijo, sin renormalizar la traza.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.config import settings
from src.models.states import ModelParameterError
from src.qstate.models import ComplexArray, DensityOperator, HilbertSpace, PureState
from src.utils.logging import get_logger

logger = get_logger(__name__)

SIMPLEX_TOL = 1e-12
TRACE_DRIFT_TOL = 1e-6

QUTRIT_PAIR = HilbertSpace((3, 3))


class IntegrationDriftError(RuntimeError):
    """La traza deriva durante la integración (paso demasiado grande)."""

    pass


def qutrit_initial_state(lambdas: tuple[float, float, float]) -> PureState:
    """√λ₀|01⟩ + √λ₁|12⟩ + √λ₂|20⟩."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (3,) or np.any(lam < 0) or abs(float(lam.sum()) - 1.0) > SIMPLEX_TOL:
        raise ModelParameterError(f"λ debe ser un punto del símplex, recibido {tuple(lambdas)}")
    amplitudes = np.zeros(9, dtype=np.complex128)
    for i in range(3):
        amplitudes[3 * i + (i + 1) % 3] = np.sqrt(lam[i])
    return PureState(QUTRIT_PAIR, amplitudes)


def phi_me() -> PureState:
    """|Φ_ME⟩ = (|01⟩ + |12⟩ + |20⟩)/√3, máximamente entrelazado."""
    return qutrit_initial_state((1 / 3, 1 / 3, 1 / 3))


@dataclass(frozen=True)
class LindbladModel:
    """Desintegración local con tasa Γ sobre cada qutrit."""

    gamma_rate: float = 1.0

    def __post_init__(self) -> None:
        if not self.gamma_rate > 0:
            raise ModelParameterError(f"Γ debe ser > 0, recibido {self.gamma_rate}")

    @cached_property
    def coupling(self) -> ComplexArray:
        """Matriz γ de bajada (nilpotente, γ³ = 0)."""
        return np.array(
            [[0, 0, 0], [np.sqrt(2), 0, 0], [0, 1, 0]],
            dtype=np.complex128,
        )

    @cached_property
    def jump_operators(self) -> tuple[ComplexArray, ComplexArray]:
        eye = np.eye(3, dtype=np.complex128)
        return (np.kron(self.coupling, eye), np.kron(eye, self.coupling))


def lindblad_rhs(model: LindbladModel, rho: ComplexArray) -> ComplexArray:
    """ℒ(ρ) sobre la matriz conjunta 9×9; sin traza y hermítico si ρ lo es."""
    out = np.zeros_like(rho, dtype=np.complex128)
    for c in model.jump_operators:
        cd = c.conj().T
        cdc = cd @ c
        out += 2 * c @ rho @ cd - rho @ cdc - cdc @ rho
    return 0.5 * model.gamma_rate * out


def _rk4_step(model: LindbladModel, rho: ComplexArray, dt: float) -> ComplexArray:
    k1 = lindblad_rhs(model, rho)
    k2 = lindblad_rhs(model, rho + 0.5 * dt * k1)
    k3 = lindblad_rhs(model, rho + 0.5 * dt * k2)
    k4 = lindblad_rhs(model, rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass(frozen=True)
class TrajectoryPoint:
    """Instantánea de la evolución: t físico, Γt adimensional y ρ(t)."""

    t: float
    gamma_t: float
    rho: DensityOperator


def evolve(
    model: LindbladModel,
    rho0: DensityOperator,
    t_max: float,
    dt: float | None = None,
    record_every: int = 1,
) -> list[TrajectoryPoint]:
    """
    Integra la ecuación maestra con RK4 de paso fijo.

    Args:
        model: Modelo de desintegración
        rho0: Estado inicial del par de qutrits
        t_max: Tiempo final
        dt: Paso (por defecto settings.rk4_dt)
        record_every: Guardar una instantánea cada tantos pasos

    Returns:
        Trayectoria incluyendo t = 0 (exactamente ρ₀) y t = t_max

    Raises:
        IntegrationDriftError: Si la traza deriva más de 1e-6
    """
    dt = settings.rk4_dt if dt is None else dt
    if dt <= 0 or t_max < 0 or record_every < 1:
        raise ModelParameterError(
            f"Parámetros de integración inválidos (dt={dt}, t_max={t_max}, record_every={record_every})"
        )
    if rho0.space != QUTRIT_PAIR:
        raise ModelParameterError(f"El modelo actúa sobre 3×3, recibido {rho0.space}")

    n_steps = int(round(t_max / dt))
    trace0 = rho0.trace
    rho = np.array(rho0.matrix)
    trajectory = [TrajectoryPoint(0.0, 0.0, rho0)]
    logger.debug(f"Evolución RK4: {n_steps} pasos de dt={dt}, Γ={model.gamma_rate}")

    for step in range(1, n_steps + 1):
        rho = _rk4_step(model, rho, dt)
        rho = 0.5 * (rho + rho.conj().T)
        drift = abs(float(np.trace(rho).real) - trace0)
        if drift > TRACE_DRIFT_TOL:
            raise IntegrationDriftError(
                f"Deriva de traza {drift:.3e} en t={step * dt:.4g}: reducir dt (actual {dt})"
            )
        if step % record_every == 0 or step == n_steps:
            t = step * dt
            trajectory.append(TrajectoryPoint(t, model.gamma_rate * t, DensityOperator(QUTRIT_PAIR, rho)))

    return trajectory
