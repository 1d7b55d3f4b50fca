"""
Tests de las cotas algebraicas y de dos copias.
"""

import numpy as np
import pytest

from src.bounds.algebraic import (
    algebraic_lower_bound,
    detection_prerequisites,
    generator_overlap,
    negativity,
    pure_concurrence,
    sum_sq_algebraic_bound,
    t_matrix,
)
from src.bounds.models import (
    BoundKind,
    BoundReport,
    BoundsError,
    ConsistencyError,
    TauVector,
)
from src.bounds.two_copy import (
    cross_expectation,
    real_trace,
    two_copy_bound_Valpha_sum,
    two_copy_bound_Vi,
)
from src.models.isotropic import isotropic_state
from src.models.states import phi_plus
from src.models.wootters import wootters_concurrence
from src.oracle.verification import random_corpus
from src.qstate.models import DensityOperator, HilbertSpace, PureState
from src.qstate.operations import eigen_decomposition, rotate_decomposition
from src.twocopy.models import ChiIndex
from src.twocopy.operators import chi_indices, chi_vector
from src.utils.sampling import haar_isometry, random_pure_vector, stream_rng

TWO_QUBIT_ALPHA = ChiIndex(0, 1, 0, 1)


def _random_pure(dims: tuple[int, int], seed: int) -> PureState:
    space = HilbertSpace(dims)
    return PureState(space, random_pure_vector(stream_rng(seed), space.total_dim))


class TestPureConcurrence:
    """Tests de la concurrencia de estados puros."""

    def test_bell(self, bell):
        """Test que |φ⁺⟩ de dos qubits tiene C = 1."""
        assert pure_concurrence(bell) == pytest.approx(1.0)

    def test_phi_me(self, phi_me_state):
        """Test que |Φ_ME⟩ tiene C = 2/√3."""
        assert pure_concurrence(phi_me_state) == pytest.approx(2 / np.sqrt(3))

    def test_product(self, product_qutrits):
        """Test que un producto tiene C = 0."""
        assert pure_concurrence(product_qutrits) == pytest.approx(0.0, abs=1e-12)

    def test_subnormalized_scales_linearly(self, bell):
        """Test que C(√p ψ) = p C(ψ)."""
        scaled = PureState(bell.space, np.sqrt(0.3) * bell.amplitudes)
        assert pure_concurrence(scaled) == pytest.approx(0.3)

    def test_requires_bipartite(self):
        """Test que la concurrencia bipartita rechaza tres factores."""
        psi = PureState(HilbertSpace((2, 2, 2)), np.eye(8)[0])
        with pytest.raises(BoundsError):
            pure_concurrence(psi)


class TestAlgebraicBound:
    """Tests de ALB_α y de la suma de cuadrados."""

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_pure_alb_is_chi_overlap(self, dims):
        """Test que ALB_α(ψ) = |⟨χ_α|ψψ⟩| para estados puros."""
        psi = _random_pure(dims, seed=1)
        rho = psi.to_density()
        for index in chi_indices(psi.space):
            expected = abs(chi_vector(psi.space, index).overlap(psi.amplitudes))
            assert algebraic_lower_bound(rho, index).value == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_pure_sum_sq_is_concurrence(self, dims):
        """Test que Σ_α ALB_α(ψ)² = C²(ψ) para estados puros."""
        psi = _random_pure(dims, seed=2)
        bound = sum_sq_algebraic_bound(psi.to_density())
        assert bound.value == pytest.approx(pure_concurrence(psi), abs=1e-10)
        assert bound.kind is BoundKind.SUM_SQ_ALGEBRAIC

    def test_independent_of_decomposition(self, random_rho):
        """Test que ALB_α no depende de la descomposición usada."""
        rho = random_rho((3, 3), rank=3, seed=4)
        dec = eigen_decomposition(rho)
        rotated = rotate_decomposition(dec, haar_isometry(stream_rng(4), 6, 3))
        for index in chi_indices(rho.space):
            a = algebraic_lower_bound(rho, index, dec).raw_value
            b = algebraic_lower_bound(rho, index, rotated).raw_value
            assert a == pytest.approx(b, abs=1e-10)

    def test_t_matrix_is_symmetric(self, random_rho):
        """Test que T_jk = T_kj y su tamaño es el rango."""
        rho = random_rho((2, 3), rank=4, seed=5)
        t = t_matrix(eigen_decomposition(rho), ChiIndex(0, 1, 0, 2))
        assert t.rank == 4
        np.testing.assert_allclose(t.entries, t.entries.T, atol=1e-12)
        assert list(t.singular_values) == sorted(t.singular_values, reverse=True)

    def test_each_alb_below_sum_sq(self, random_rho):
        """Test que cada ALB_α es <= la suma de cuadrados."""
        rho = random_rho((3, 3), rank=2, seed=6)
        total = sum_sq_algebraic_bound(rho)
        for term in total.per_alpha:
            assert max(0.0, term.raw) <= total.value + 1e-12

    def test_detected_terms_are_positive(self, phi_me_state):
        """Test que solo los α con término positivo se marcan como detectados."""
        bound = sum_sq_algebraic_bound(phi_me_state.to_density())
        assert len(bound.per_alpha) == 9
        useful = [t for t in bound.detected if t.raw > 1e-9]
        assert len(useful) == 3
        assert all(t.raw == pytest.approx(2 / 3) for t in useful)

    def test_maximally_mixed_gives_zero(self, two_qutrits):
        """Test que I/9 no tiene cota positiva."""
        bound = sum_sq_algebraic_bound(DensityOperator.maximally_mixed(two_qutrits))
        assert bound.value == 0.0
        assert not bound.is_detected

    def test_two_qubit_matches_wootters(self):
        """Test que ALB del único α coincide con la concurrencia de Wootters."""
        for rho in random_corpus(7, 20, spaces=((2, 2),)):
            alb = algebraic_lower_bound(rho, TWO_QUBIT_ALPHA).value
            assert alb == pytest.approx(wootters_concurrence(rho), abs=1e-10)

    @pytest.mark.slow
    def test_two_qubit_matches_wootters_full(self):
        """Test de equivalencia con Wootters sobre 500 estados."""
        for rho in random_corpus(8, 500, spaces=((2, 2),)):
            alb = algebraic_lower_bound(rho, TWO_QUBIT_ALPHA).value
            assert alb == pytest.approx(wootters_concurrence(rho), abs=1e-10)


class TestTauVector:
    """Tests de LB_τ con combinaciones de |χ_α⟩."""

    def test_single_equals_alb(self, random_rho):
        """Test que τ concentrado en α da ALB_α."""
        rho = random_rho((3, 3), rank=2, seed=9)
        index = ChiIndex(1, 2, 0, 2)
        lb = algebraic_lower_bound(rho, TauVector.single(rho.space, index))
        assert lb.kind is BoundKind.LB_TAU
        assert lb.raw_value == pytest.approx(algebraic_lower_bound(rho, index).raw_value, abs=1e-12)

    def test_pure_state_overlap(self):
        """Test que LB_τ(ψ) = |Σ_α z_α ⟨χ_α|ψψ⟩|."""
        psi = _random_pure((2, 3), seed=10)
        rng = stream_rng(10, 1)
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        z /= np.linalg.norm(z)
        tau = TauVector(psi.space, z)
        overlaps = [chi_vector(psi.space, i).overlap(psi.amplitudes) for i in chi_indices(psi.space)]
        expected = abs(np.dot(z, overlaps))
        assert algebraic_lower_bound(psi.to_density(), tau).value == pytest.approx(expected, abs=1e-12)

    def test_normalization_required(self, two_qubits):
        """Test que Σ|z_α|² != 1 es un error."""
        with pytest.raises(BoundsError):
            TauVector(two_qubits, np.array([0.5]))

    def test_wrong_length(self, two_qutrits):
        """Test que el número de coeficientes debe ser el de α."""
        with pytest.raises(BoundsError):
            TauVector(two_qutrits, np.array([1.0, 0.0]))


class TestDiagnostics:
    """Tests de solapamientos con generadores, negatividad y detección."""

    def test_generator_overlap_matches_chi(self):
        """Test que |⟨ψ|L⊗L|ψ*⟩| = |⟨χ_α|ψψ⟩|."""
        psi = _random_pure((3, 3), seed=12)
        for index in chi_indices(psi.space):
            chi = abs(chi_vector(psi.space, index).overlap(psi.amplitudes))
            assert generator_overlap(psi, index) == pytest.approx(chi, abs=1e-12)

    def test_negativity_bell(self, bell):
        """Test que la negatividad de |φ⁺⟩ es 1/2."""
        assert negativity(bell.to_density()) == pytest.approx(0.5)

    def test_negativity_separable_isotropic(self):
        """Test que un isótropo con F <= 1/d tiene negatividad nula."""
        assert negativity(isotropic_state(3, 0.3)) == pytest.approx(0.0, abs=1e-12)

    def test_detection_possible_for_phi_me(self, phi_me_state):
        """Test que los α útiles de Φ_ME cumplen los requisitos de detección."""
        check = detection_prerequisites(phi_me_state.to_density(), ChiIndex(0, 1, 1, 2))
        assert check.possible
        assert check.alb == pytest.approx(2 / 3)

    def test_detection_impossible_for_product(self, product_qutrits):
        """Test que un estado producto no cumple los requisitos."""
        check = detection_prerequisites(product_qutrits.to_density(), ChiIndex(0, 1, 0, 1))
        assert not check.possible


class TestTwoCopyBounds:
    """Tests de las cotas medibles con dos copias."""

    def test_valpha_sum_below_sum_sq(self, random_rho):
        """Test que √Σ tr(ρ⊗ρ V_α) <= suma de cuadrados ALB."""
        for seed in range(5):
            rho = random_rho((3, 3), rank=2, seed=seed)
            upper = sum_sq_algebraic_bound(rho).value
            assert two_copy_bound_Valpha_sum(rho).value <= upper + 1e-10

    def test_valpha_sum_counts_nonnegative_terms(self, random_rho):
        """Test que la suma V_α solo cuenta términos >= 0."""
        rho = random_rho((3, 3), rank=1, seed=13)
        report = two_copy_bound_Valpha_sum(rho)
        counted = sum(t.raw for t in report.per_alpha if t.raw >= 0)
        assert report.raw_value == pytest.approx(counted)
        assert report.value == pytest.approx(np.sqrt(counted))

    def test_bell_is_exact(self, bell):
        """Test que para |φ⁺⟩ ambas cotas de dos copias valen 1."""
        rho = bell.to_density()
        assert two_copy_bound_Vi(rho, 1).value == pytest.approx(1.0)
        assert two_copy_bound_Valpha_sum(rho).value == pytest.approx(1.0)

    def test_cross_expectation_below_product(self):
        """Test que tr(ρ⊗σ V_(i)) <= C(ρ)C(σ) en estados puros."""
        psi = _random_pure((2, 3), seed=14)
        phi = _random_pure((2, 3), seed=15)
        bound = pure_concurrence(psi) * pure_concurrence(phi)
        for which in (1, 2):
            assert cross_expectation(psi.to_density(), phi.to_density(), which) <= bound + 1e-12

    @pytest.mark.parametrize("which", [1, 2])
    def test_cross_expectation_bell(self, bell, which):
        """Test que con ρ = σ = |φ⁺⟩ de dos qubits el valor es 1."""
        rho = bell.to_density()
        assert cross_expectation(rho, rho, which) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("which", [1, 2])
    def test_cross_expectation_pure_isotropic(self, which):
        """Test que ρ_F con F = 1 frente a |φ⁺⟩ (d = 3) da C(φ⁺)² = 4/3."""
        rho = isotropic_state(3, 1.0)
        sigma = phi_plus(3).to_density()
        assert cross_expectation(rho, sigma, which) == pytest.approx(4 / 3, abs=1e-10)

    def test_cross_expectation_space_mismatch(self, bell, phi_me_state):
        """Test que ρ y σ deben compartir espacio."""
        with pytest.raises(BoundsError):
            cross_expectation(bell.to_density(), phi_me_state.to_density(), 1)


class TestReports:
    """Tests de BoundReport y de las comprobaciones internas."""

    def test_negative_value_is_inconsistent(self):
        """Test que una cota negativa es un error interno."""
        with pytest.raises(ConsistencyError):
            BoundReport(-0.1, -0.1, BoundKind.WITNESS)

    def test_imaginary_residue(self):
        """Test que un residuo imaginario > 1e-10 es un error interno."""
        assert real_trace(complex(0.5, 1e-12), "traza") == 0.5
        with pytest.raises(ConsistencyError):
            real_trace(complex(0.5, 1e-6), "traza")
