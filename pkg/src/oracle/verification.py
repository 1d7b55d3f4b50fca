"""
Verificadores independientes de las cotas.

Cada verificador devuelve un CheckResult con el margen de cada caso; una
violación nunca lanza excepción, queda en el informe con el caso culpable.
"""

from collections.abc import Sequence

import numpy as np

from src.bounds.algebraic import algebraic_lower_bound, pure_concurrence, sum_sq_algebraic_bound
from src.bounds.two_copy import two_copy_bound_Valpha_sum, two_copy_bound_Vi
from src.config import settings
from src.models.isotropic import (
    isotropic_exact_concurrence,
    isotropic_state,
    isotropic_Valpha_sum_closed_form,
    isotropic_Vi_closed_form,
)
from src.models.qutrit import phi_me
from src.models.states import ghz_state, phi_plus, w_state
from src.models.wootters import wootters_concurrence
from src.multipartite.bounds import multipartite_pure_concurrence
from src.oracle.models import CaseMargin, CheckResult, OracleReport, SearchConfig
from src.oracle.search import min_search_concurrence
from src.qstate.io import format_complex, format_state
from src.qstate.models import ComplexArray, DensityOperator, HilbertSpace
from src.twocopy.models import ChiIndex
from src.twocopy.operators import build_V_alpha, chi_indices, chi_vector
from src.utils.logging import get_logger, timed
from src.utils.sampling import random_density_matrix, random_pure_vector, stream_rng
from src.witness.builder import build_witness_family, build_witness_sigma
from src.witness.evaluation import witness_bound, witness_sq_sum_bound

logger = get_logger(__name__)

# Holguras: desigualdades exactas solo admiten redondeo
INEQUALITY_TOL = 1e-12
CLOSED_FORM_TOL = 1e-10
SANDWICH_SLACK = 1e-6
ORDERING_TOL = 1e-9

# Flujos aleatorios independientes por tipo de muestra
_CORPUS_STREAM = 1
_PAIR_STREAM = 2

DEFAULT_PAIR_SPACES: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 3))
DEFAULT_CORPUS_SPACES: tuple[tuple[int, int], ...] = ((2, 2), (3, 3))
CHAIN_CHECKS = ("cadena_suma", "cadena_producto", "cadena_real")


def random_corpus(
    seed: int,
    n_states: int,
    spaces: Sequence[tuple[int, ...]] = DEFAULT_CORPUS_SPACES,
) -> list[DensityOperator]:
    """Operadores densidad de rango aleatorio, reproducibles por (seed, k)."""
    corpus = []
    for k in range(n_states):
        rng = stream_rng(seed, _CORPUS_STREAM, k)
        space = HilbertSpace(tuple(spaces[k % len(spaces)]))
        rank = int(rng.integers(1, space.total_dim + 1))
        corpus.append(DensityOperator(space, random_density_matrix(rng, space.total_dim, rank)))
    return corpus


def _amplitude_chain(
    psi: ComplexArray,
    phi: ComplexArray,
    index: ChiIndex,
    d_b: int,
) -> tuple[float, float, float]:
    """
    Márgenes de la cadena escalar que prueba |⟨χ|ψψ⟩||⟨χ|φφ⟩| >= ⟨ψφ|V_α|ψφ⟩.

    Con a..e las amplitudes de ψ y A..E las de φ en el bloque {x,y}×{p,q}:
        AA/2 = Re z,  z = (aE − cB)(e*A* − b*C*)
        BB − CC = (aE − cB)(eA − bC)
    y AA/2 <= |z| <= |BB| + |CC| implica AA <= 2|BB| + |u|² + |v|².
    """

    def block(v: ComplexArray) -> tuple[complex, complex, complex, complex]:
        m = v.reshape(-1, d_b)
        return m[index.x, index.p], m[index.x, index.q], m[index.y, index.p], m[index.y, index.q]

    a, b, c, e = block(psi)
    A, B, C, E = block(phi)
    aa = 2.0 * float(
        -np.real(a * E * np.conj(b) * np.conj(C))
        - np.real(c * B * np.conj(e) * np.conj(A))
        + np.real(a * E * np.conj(e) * np.conj(A))
        + np.real(b * C * np.conj(c) * np.conj(B))
    )
    bb = abs((a * e - b * c) * (A * E - B * C))
    u = b * E - e * B
    v = a * C - c * A
    cc = abs(u * v)
    z = abs((a * E - c * B) * (np.conj(e) * np.conj(A) - np.conj(b) * np.conj(C)))
    return (
        2 * bb + abs(u) ** 2 + abs(v) ** 2 - aa,
        2 * bb + 2 * cc - aa,
        z - aa / 2,
    )


def verify_inequality_21(
    n_samples: int,
    spaces: Sequence[tuple[int, int]] = DEFAULT_PAIR_SPACES,
    seed: int | None = None,
) -> CheckResult:
    """
    Monte Carlo de |⟨χ_α|ψψ⟩||⟨χ_α|φφ⟩| − ⟨ψφ|V_α|ψφ⟩ >= 0.

    Para cada muestra (ψ, φ, α, c₁) se comprueban V_(1)α, V_(2)α, la mezcla
    convexa y los tres pasos de la cadena escalar. Una de cada diez
    muestras usa φ = ψ y otra ψ producto.
    """
    seed = settings.seed if seed is None else seed
    cases: list[CaseMargin] = []
    failure: str | None = None

    for k in range(n_samples):
        rng = stream_rng(seed, _PAIR_STREAM, k)
        dims = spaces[int(rng.integers(len(spaces)))]
        space = HilbertSpace(dims)
        indices = chi_indices(space)
        index = indices[int(rng.integers(len(indices)))]
        c1 = float(rng.uniform())
        psi = random_pure_vector(rng, space.total_dim)
        phi = random_pure_vector(rng, space.total_dim)
        if k % 10 == 0:
            phi = psi
        elif k % 10 == 1:
            psi = np.kron(random_pure_vector(rng, dims[0]), random_pure_vector(rng, dims[1]))

        chi = chi_vector(space, index)
        lhs = abs(chi.overlap(psi)) * abs(chi.overlap(phi))
        case = f"{k}:{space}:{index.label}"
        for label, weights in (("V1α", (1.0, 0.0)), ("V2α", (0.0, 1.0)), ("Vα_mezcla", (c1, 1.0 - c1))):
            rhs = build_V_alpha(space, index, weights=weights).pure_expectation(psi, phi).real
            cases.append(CaseMargin(label, case, lhs - rhs))
        chain = _amplitude_chain(psi, phi, index, dims[1])
        for label, margin in zip(CHAIN_CHECKS, chain, strict=True):
            cases.append(CaseMargin(label, case, margin))

        if failure is None and any(c.margin < -INEQUALITY_TOL for c in cases[-6:]):
            failure = (
                f"Violación en la muestra {case} (c₁={c1!r})\n"
                f"ψ = {' '.join(format_complex(z) for z in psi)}\n"
                f"φ = {' '.join(format_complex(z) for z in phi)}"
            )
            logger.error(f"Desigualdad de dos copias violada en la muestra {case}")

    logger.info(f"Desigualdad de dos copias: {n_samples} muestras verificadas")
    return CheckResult("desigualdad_chi_V_alpha", tuple(cases), INEQUALITY_TOL, failure)


def verify_theorem_14(
    corpus: Sequence[DensityOperator],
    cfg: SearchConfig | None = None,
) -> CheckResult:
    """
    min_search_concurrence(ρ)² + 1e-6 >= Σ_α ALB_α(ρ)² sobre el corpus.
    """
    cfg = cfg or SearchConfig()
    cases: list[CaseMargin] = []
    failure: str | None = None
    for k, rho in enumerate(corpus):
        upper = min_search_concurrence(rho, cfg).value
        lower = sum_sq_algebraic_bound(rho).value
        margin = upper**2 + SANDWICH_SLACK - lower**2
        cases.append(CaseMargin("cota_suma_cuadrados", f"{k}:{rho.space}", margin))
        if failure is None and margin < 0:
            failure = f"C² buscado {upper**2!r} < Σ ALB² {lower**2!r} para\n{format_state(rho)}"
    return CheckResult("suma_cuadrados_vs_busqueda", tuple(cases), 0.0, failure)


def verify_bound_ordering(
    corpus: Sequence[DensityOperator],
    cfg: SearchConfig | None = None,
) -> CheckResult:
    """
    Ordenación entre cotas: ALB_α <= suma de cuadrados, suma V_α <= suma de
    cuadrados, y toda cota inferior <= cota superior buscada.
    """
    cfg = cfg or SearchConfig()
    cases: list[CaseMargin] = []
    for k, rho in enumerate(corpus):
        case = f"{k}:{rho.space}"
        upper = min_search_concurrence(rho, cfg).value
        sum_sq = sum_sq_algebraic_bound(rho)
        lowers = {
            "suma_cuadrados": sum_sq.value,
            "suma_V_alpha": two_copy_bound_Valpha_sum(rho).value,
            "V1": two_copy_bound_Vi(rho, 1).value,
            "V2": two_copy_bound_Vi(rho, 2).value,
        }
        for name, value in lowers.items():
            cases.append(CaseMargin(f"{name}<=busqueda", case, upper - value))
        cases.append(CaseMargin("suma_V_alpha<=suma_cuadrados", case, sum_sq.value - lowers["suma_V_alpha"]))
        for term in sum_sq.per_alpha:
            cases.append(CaseMargin(f"ALB_{term.label}<=suma_cuadrados", case, sum_sq.value - max(0.0, term.raw)))
    return CheckResult("ordenacion_de_cotas", tuple(cases), ORDERING_TOL)


def _equality(check: str, case: str, got: float, expected: float) -> CaseMargin:
    return CaseMargin(check, case, -abs(got - expected))


def verify_closed_forms(
    d_values: Sequence[int] = (2, 3, 4),
    n_points: int = 21,
    n_two_qubit: int = 20,
    seed: int | None = None,
) -> tuple[CheckResult, ...]:
    """
    Fórmulas cerradas frente al cálculo matricial.

    - Estados isótropos: trazas de dos copias y testigos con σ = φ⁺
    - Dos qubits: ALB del único α frente a la fórmula de Wootters
    - Estados de referencia: Φ_ME, GHZ₃ y W₃
    """
    seed = settings.seed if seed is None else seed
    grid = np.linspace(0.0, 1.0, n_points)

    traces: list[CaseMargin] = []
    witnesses: list[CaseMargin] = []
    for d in d_values:
        sigma = phi_plus(d)
        w_sigma = build_witness_sigma(sigma, which=1)
        family = build_witness_family(sigma, which=1).witnesses
        for f in grid:
            case = f"d={d}:F={f:.6g}"
            rho = isotropic_state(d, float(f))
            vi = isotropic_Vi_closed_form(d, float(f))
            for which in (1, 2):
                traces.append(_equality(f"traza_V{which}", case, two_copy_bound_Vi(rho, which).raw_value, vi))
            diagonal = [t.raw for t in two_copy_bound_Valpha_sum(rho).per_alpha if t.index.is_diagonal]
            traces.append(_equality("suma_V_alpha_diagonal", case, sum(diagonal), isotropic_Valpha_sum_closed_form(d, float(f))))
            exact = isotropic_exact_concurrence(d, float(f))
            witnesses.append(_equality("testigo_sigma", case, witness_bound(rho, w_sigma).value, exact))
            witnesses.append(_equality("testigos_cuadrados", case, witness_sq_sum_bound(rho, family).value, exact))

    two_qubit: list[CaseMargin] = []
    alpha = ChiIndex(0, 1, 0, 1)
    for k, rho in enumerate(random_corpus(seed, n_two_qubit, spaces=((2, 2),))):
        two_qubit.append(
            _equality("alb_vs_wootters", str(k), algebraic_lower_bound(rho, alpha).value, wootters_concurrence(rho))
        )

    reference = [
        _equality("phi_me_suma_cuadrados", "Φ_ME", sum_sq_algebraic_bound(phi_me().to_density()).value, 2 / np.sqrt(3)),
        _equality("phi_me_pura", "Φ_ME", pure_concurrence(phi_me()), 2 / np.sqrt(3)),
        _equality("ghz3", "GHZ₃", multipartite_pure_concurrence(ghz_state(3)), np.sqrt(1.5)),
        _equality("w3", "W₃", multipartite_pure_concurrence(w_state(3)), 2 / np.sqrt(3)),
    ]

    return (
        CheckResult("isotropos_trazas", tuple(traces), CLOSED_FORM_TOL),
        CheckResult("isotropos_testigos", tuple(witnesses), CLOSED_FORM_TOL),
        CheckResult("dos_qubits_wootters", tuple(two_qubit), CLOSED_FORM_TOL),
        CheckResult("estados_de_referencia", tuple(reference), CLOSED_FORM_TOL),
    )


def run_selftest(seed: int | None = None, full: bool = False) -> OracleReport:
    """
    Ejecuta todas las comprobaciones del oráculo.

    El modo rápido reduce el número de muestras; el completo usa los tamaños
    de aceptación (10⁴ muestras, corpus de 200 estados, malla de 101 puntos).
    """
    seed = settings.seed if seed is None else seed
    if full:
        n_pairs, n_corpus, n_points, cfg = 10_000, 200, 101, SearchConfig(seed=seed)
    else:
        n_pairs, n_corpus, n_points = 500, 12, 11
        cfg = SearchConfig(seed=seed, n_restarts=4, n_iterations=200)

    logger.info(f"Autoverificación {'completa' if full else 'rápida'} con semilla {seed}")
    corpus: list[DensityOperator] = [phi_me().to_density(), *random_corpus(seed, n_corpus)]
    with timed(logger, "formas cerradas"):
        closed = verify_closed_forms(n_points=n_points, seed=seed)
    with timed(logger, "desigualdad de dos copias"):
        inequality = verify_inequality_21(n_pairs, seed=seed)
    with timed(logger, "búsquedas sobre el corpus"):
        theorem = verify_theorem_14(corpus, cfg)
        ordering = verify_bound_ordering(corpus[: max(4, n_corpus // 4)], cfg)
    checks = (*closed, inequality, theorem, ordering)
    report = OracleReport(seed, tuple(checks))
    failed = report.first_failure
    if failed is not None:
        logger.warning(f"Primera comprobación fallida: {failed.name}")
    return report
