"""
Construcción de testigos de una copia a partir de un estado de referencia σ.

W_σ  = −tr₂((I⊗σ) V) / C(σ)
W_σα = −tr₂((I⊗σ) V_α) / ALB_α(σ)

La traza parcial es sobre la segunda copia (factores A₂, B₂).
"""

from src.bounds.algebraic import algebraic_lower_bound, pure_concurrence
from src.qstate.models import DensityOperator, PureState
from src.qstate.operations import eigen_decomposition
from src.twocopy.models import ChiIndex, TwoCopyOperator
from src.twocopy.operators import build_V, build_V_alpha, chi_indices, resolve_weights
from src.utils.logging import get_logger
from src.witness.models import UnusableWitnessError, WitnessFamily, WitnessOperator

logger = get_logger(__name__)

# Por debajo de esto C(σ) o ALB_α(σ) se consideran nulos
NORMALIZER_TOL = 1e-12


def _as_density(sigma: DensityOperator | PureState) -> DensityOperator:
    return sigma.to_density() if isinstance(sigma, PureState) else sigma


def _describe(sigma: DensityOperator | PureState) -> str:
    kind = "puro" if isinstance(sigma, PureState) else "mixto"
    return f"σ {kind} en {sigma.space}"


def _sigma_concurrence(sigma: DensityOperator | PureState) -> float | None:
    """C(σ) si σ es puro (o de rango 1), None si es mixto."""
    if isinstance(sigma, PureState):
        return pure_concurrence(sigma)
    dec = eigen_decomposition(sigma)
    if dec.rank == 1:
        return pure_concurrence(dec.states[0])
    return None


def _combined_V(sigma_rho: DensityOperator, c: tuple[float, float]) -> TwoCopyOperator:
    space = sigma_rho.space
    c1, c2 = c
    if c2 == 0.0:
        return build_V(space, 1)
    if c1 == 0.0:
        return build_V(space, 2)
    return build_V(space, 1).scaled(c1) + build_V(space, 2).scaled(c2)


def build_witness_sigma(
    sigma: DensityOperator | PureState,
    which: int | None = None,
    c_sigma: float | None = None,
    weights: tuple[float, float] | None = None,
) -> WitnessOperator:
    """
    Testigo W_σ: C(ρ) >= −tr(ρW_σ).

    Args:
        sigma: Estado entrelazado de referencia
        which: 1 o 2 para usar V_(1) o V_(2)
        c_sigma: Cota superior de C(σ); obligatoria para σ mixto
        weights: (c₁, c₂) para una combinación de V_(1) y V_(2)

    Raises:
        UnusableWitnessError: σ separable o σ mixto sin c_sigma
    """
    rho_sigma = _as_density(sigma)
    c = resolve_weights(which, weights)
    normalizer = c_sigma if c_sigma is not None else _sigma_concurrence(sigma)
    if normalizer is None:
        raise UnusableWitnessError(
            "σ es mixto: C(σ) no es calculable, indicar una cota superior con c_sigma"
        )
    if normalizer <= NORMALIZER_TOL:
        raise UnusableWitnessError(f"C(σ) = {normalizer:.3e}: σ no está entrelazado")

    reduced = _combined_V(rho_sigma, c).reduce_second_copy(rho_sigma.matrix)
    return WitnessOperator(
        space=rho_sigma.space,
        matrix=-reduced / normalizer,
        sigma_ref=_describe(sigma),
        normalizer=float(normalizer),
        alpha=None,
        weights=c,
    )


def build_witness_sigma_alpha(
    sigma: DensityOperator | PureState,
    alpha: ChiIndex,
    which: int | None = None,
    weights: tuple[float, float] | None = None,
) -> WitnessOperator:
    """
    Testigo W_σα: ALB_α(ρ) >= −tr(ρW_σα).

    ALB_α(σ) es siempre calculable, también para σ mixto.

    Raises:
        UnusableWitnessError: ALB_α(σ) = 0
    """
    rho_sigma = _as_density(sigma)
    c = resolve_weights(which, weights)
    alb = algebraic_lower_bound(rho_sigma, alpha).value
    if alb <= NORMALIZER_TOL:
        raise UnusableWitnessError(f"ALB_α(σ) = 0 para α = {alpha.label}")

    v_alpha = build_V_alpha(rho_sigma.space, alpha, weights=c)
    reduced = v_alpha.reduce_second_copy(rho_sigma.matrix)
    return WitnessOperator(
        space=rho_sigma.space,
        matrix=-reduced / alb,
        sigma_ref=_describe(sigma),
        normalizer=alb,
        alpha=alpha,
        weights=c,
    )


def build_witness_family(
    sigma: DensityOperator | PureState,
    which: int | None = None,
    weights: tuple[float, float] | None = None,
    alphas: list[ChiIndex] | None = None,
) -> WitnessFamily:
    """
    Todos los W_σα utilizables (por defecto sobre todos los α).

    Raises:
        UnusableWitnessError: Ningún α tiene ALB_α(σ) > 0
    """
    candidates = alphas if alphas is not None else chi_indices(sigma.space)
    witnesses: list[WitnessOperator] = []
    skipped: list[ChiIndex] = []
    for alpha in candidates:
        try:
            witnesses.append(build_witness_sigma_alpha(sigma, alpha, which, weights))
        except UnusableWitnessError:
            skipped.append(alpha)

    if skipped:
        logger.info(
            f"{len(skipped)} α descartados por ALB_α(σ) = 0: "
            + ", ".join(a.label for a in skipped)
        )
    if not witnesses:
        raise UnusableWitnessError(f"Ningún α utilizable para {_describe(sigma)}")
    return WitnessFamily(tuple(witnesses), tuple(skipped))
