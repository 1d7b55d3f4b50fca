"""
Tests de concurrencia multipartita y de sus cotas por biparticiones.
"""

import numpy as np
import pytest

from src.bounds.algebraic import algebraic_lower_bound, pure_concurrence, sum_sq_algebraic_bound
from src.bounds.models import BoundKind, BoundsError
from src.bounds.two_copy import two_copy_bound_Valpha_sum
from src.models.states import basis_state, ghz_state, w_state
from src.multipartite.bounds import (
    chi_gamma_overlap,
    check_desk_scale,
    enumerate_bipartitions,
    gamma_indices,
    induced_state,
    multipartite_lb_tau,
    multipartite_pure_concurrence,
    multipartite_sum_sq_bound,
    multipartite_two_copy_bound,
    multipartite_witness_bound,
    prefactor,
)
from src.multipartite.models import Bipartition, ChiGamma, DeskScaleError
from src.qstate.models import HilbertSpace, PureState
from src.utils.sampling import random_pure_vector, stream_rng
from src.witness.models import UnusableWitnessError


def _random_pure(dims: tuple[int, ...], seed: int) -> PureState:
    space = HilbertSpace(dims)
    return PureState(space, random_pure_vector(stream_rng(seed, 5), space.total_dim))


class TestBipartitions:
    """Tests de enumeración de biparticiones."""

    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 3), (4, 7)])
    def test_count(self, n, expected):
        """Test que hay 2^{N−1} − 1 biparticiones."""
        assert len(enumerate_bipartitions(HilbertSpace((2,) * n))) == expected

    def test_labels_and_order(self):
        """Test que left siempre contiene el factor 0."""
        bips = enumerate_bipartitions(HilbertSpace((2, 2, 2)))
        assert [b.label for b in bips] == ["1|23", "12|3", "13|2"]
        assert bips[2].order == (0, 2, 1)

    def test_invalid_mask(self):
        """Test que una máscara sin el factor 0 es inválida."""
        with pytest.raises(ValueError):
            Bipartition(2, 3)

    def test_single_factor_rejected(self):
        """Test que un solo factor no tiene biparticiones."""
        with pytest.raises(BoundsError):
            enumerate_bipartitions(HilbertSpace((3,)))

    def test_induced_dims(self, random_rho):
        """Test que el espacio inducido agrupa los factores de cada lado."""
        rho = random_rho((2, 3, 2), seed=1)
        induced = induced_state(rho, enumerate_bipartitions(rho.space)[1])
        assert induced.space.factor_dims == (6, 2)
        assert induced.trace == pytest.approx(1.0)

    def test_gamma_count(self):
        """Test que tres qubits dan 3 biparticiones × 6 α."""
        assert len(gamma_indices(HilbertSpace((2, 2, 2)))) == 18

    def test_prefactor(self):
        """Test que el prefactor vale 1 para N = 2 y 1/√2 para N = 3."""
        assert prefactor(2) == 1.0
        assert prefactor(3) == pytest.approx(1 / np.sqrt(2))

    def test_desk_scale(self):
        """Test que siete qubits superan el límite de dos copias."""
        check_desk_scale(HilbertSpace((2, 2, 2)))
        with pytest.raises(DeskScaleError):
            check_desk_scale(HilbertSpace((2,) * 7))


class TestPureConcurrence:
    """Tests de C(Ψ) multipartita."""

    def test_ghz(self):
        """Test que GHZ de tres qubits tiene C = √1.5."""
        assert multipartite_pure_concurrence(ghz_state(3)) == pytest.approx(np.sqrt(1.5))

    def test_w(self):
        """Test que W de tres qubits tiene C = 2/√3."""
        assert multipartite_pure_concurrence(w_state(3)) == pytest.approx(2 / np.sqrt(3))

    def test_product_is_zero(self):
        """Test que un producto de N factores tiene C = 0."""
        psi = basis_state((2, 3, 2), (1, 2, 0))
        assert multipartite_pure_concurrence(psi) == pytest.approx(0.0, abs=1e-12)

    def test_two_factors_reduce_to_bipartite(self):
        """Test que con N = 2 coincide con la concurrencia bipartita."""
        psi = _random_pure((3, 3), seed=2)
        assert multipartite_pure_concurrence(psi) == pytest.approx(pure_concurrence(psi), abs=1e-12)

    def test_chi_gamma_overlaps(self):
        """Test que 2^{2−N} Σ_γ |⟨χ_γ|ΨΨ⟩|² = C²(Ψ)."""
        psi = _random_pure((2, 2, 2), seed=3)
        total = sum(abs(chi_gamma_overlap(psi, g)) ** 2 for g in gamma_indices(psi.space))
        assert prefactor(3) ** 2 * total == pytest.approx(multipartite_pure_concurrence(psi) ** 2, abs=1e-10)


class TestMultipartiteBounds:
    """Tests de las cotas multipartitas."""

    @pytest.mark.parametrize("state", [ghz_state(3), w_state(3)], ids=["ghz", "w"])
    def test_exact_on_pure_states(self, state):
        """Test que suma de cuadrados, dos copias y testigo con σ = Ψ dan C(Ψ)."""
        rho = state.to_density()
        exact = multipartite_pure_concurrence(state)
        assert multipartite_sum_sq_bound(rho).value == pytest.approx(exact, abs=1e-10)
        assert multipartite_two_copy_bound(rho).value == pytest.approx(exact, abs=1e-10)
        assert multipartite_witness_bound(rho, state).value == pytest.approx(exact, abs=1e-10)

    def test_two_factors_reduce_to_bipartite(self, random_rho):
        """Test que con N = 2 las cotas son las bipartitas."""
        rho = random_rho((3, 3), rank=2, seed=4)
        assert multipartite_sum_sq_bound(rho).value == pytest.approx(
            sum_sq_algebraic_bound(rho).value, abs=1e-12
        )
        assert multipartite_two_copy_bound(rho).value == pytest.approx(
            two_copy_bound_Valpha_sum(rho).value, abs=1e-12
        )

    def test_terms_carry_cut(self, random_rho):
        """Test que cada término guarda la máscara de su bipartición."""
        rho = random_rho((2, 2, 2), rank=2, seed=5)
        report = multipartite_sum_sq_bound(rho)
        assert report.kind is BoundKind.MULTI_SUM_SQ
        assert len(report.per_alpha) == 18
        assert {t.cut for t in report.per_alpha} == {1, 3, 5}

    def test_lb_tau_single_gamma(self, random_rho):
        """Test que LB_τ concentrado en γ es 2^{1−N/2} ALB_α(ρ_l)."""
        rho = random_rho((2, 2, 2), rank=2, seed=6)
        gamma = gamma_indices(rho.space)[7]
        report = multipartite_lb_tau(rho, {gamma: 1.0})
        alb = algebraic_lower_bound(induced_state(rho, gamma.bipartition), gamma.index).raw_value
        assert report.raw_value == pytest.approx(prefactor(3) * alb, abs=1e-10)

    def test_lb_tau_normalization(self, random_rho):
        """Test que Σ|z_γ|² != 1 es un error."""
        rho = random_rho((2, 2, 2), seed=7)
        gamma = gamma_indices(rho.space)[0]
        with pytest.raises(BoundsError):
            multipartite_lb_tau(rho, {gamma: 0.5})

    def test_lb_tau_foreign_gamma(self, random_rho):
        """Test que un γ de otro número de factores es un error."""
        rho = random_rho((2, 2, 2), seed=8)
        foreign = gamma_indices(HilbertSpace((2, 2, 2, 2)))[0]
        assert isinstance(foreign, ChiGamma)
        with pytest.raises(BoundsError):
            multipartite_lb_tau(rho, {foreign: 1.0})

    def test_witness_needs_entangled_sigma(self, random_rho):
        """Test que un σ producto no da ningún testigo."""
        rho = random_rho((2, 2, 2), seed=9)
        with pytest.raises(UnusableWitnessError):
            multipartite_witness_bound(rho, basis_state((2, 2, 2), (0, 1, 1)))

    def test_witness_space_mismatch(self, random_rho):
        """Test que ρ y σ deben compartir espacio."""
        rho = random_rho((2, 2, 2), seed=10)
        with pytest.raises(BoundsError):
            multipartite_witness_bound(rho, ghz_state(4))

    def test_rejects_large_space(self):
        """Test que las cotas aplican el límite de escritorio."""
        space = HilbertSpace((2,) * 7)
        psi = PureState(space, np.eye(space.total_dim)[0])
        with pytest.raises(DeskScaleError):
            multipartite_sum_sq_bound(psi.to_density())

    @pytest.mark.slow
    def test_pure_state_identity(self):
        """Test de C(Ψ) = cotas multipartitas sobre 200 estados puros."""
        for seed in range(200):
            psi = _random_pure((2, 2, 3), seed=seed)
            rho = psi.to_density()
            exact = multipartite_pure_concurrence(psi)
            assert multipartite_sum_sq_bound(rho).value == pytest.approx(exact, abs=1e-9)
            assert multipartite_two_copy_bound(rho).value == pytest.approx(exact, abs=1e-9)
