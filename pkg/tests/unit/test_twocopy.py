"""
Tests de los operadores de dos copias y de sus invariancias.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.bounds.algebraic import algebraic_lower_bound, pure_concurrence
from src.bounds.two_copy import two_copy_expectation
from src.qstate.models import DensityOperator, HilbertSpace, PureState
from src.twocopy.models import ChiIndex, TwoCopyError, TwoCopyOperator
from src.twocopy.operators import (
    build_A,
    build_V,
    build_V_alpha,
    chi_indices,
    enumerate_chi,
    mask_projector,
    masked_state,
    projector_sym_antisym,
    resolve_weights,
    restricted_isometry_transform,
)
from src.utils.sampling import haar_unitary, random_pure_vector, restricted_unitary, stream_rng

SPACES = [(2, 2), (2, 3), (3, 3)]


def _local_unitary_trials(n_trials: int, seed: int) -> list[float]:
    """Diferencias |tr(ρ′⊗ρ′ V) − tr(ρ⊗ρ V)| bajo U_A⊗U_B aleatorias."""
    diffs = []
    for k in range(n_trials):
        rng = stream_rng(seed, k)
        dims = SPACES[k % len(SPACES)]
        space = HilbertSpace(dims)
        g = rng.standard_normal((space.total_dim,) * 2) + 1j * rng.standard_normal((space.total_dim,) * 2)
        rho_matrix = g @ g.conj().T
        rho = DensityOperator(space, rho_matrix / np.trace(rho_matrix).real)
        u = np.kron(haar_unitary(rng, dims[0]), haar_unitary(rng, dims[1]))
        rotated = rho.transformed(u)
        for which in (1, 2):
            v = build_V(space, which)
            diffs.append(abs(two_copy_expectation(v, rotated) - two_copy_expectation(v, rho)))
    return diffs


class TestChiIndex:
    """Tests del índice α = (x, y, p, q)."""

    def test_parse(self):
        """Test que 'x,y,p,q' se parsea en orden."""
        assert ChiIndex.parse("0,2,1,2") == ChiIndex(0, 2, 1, 2)

    @pytest.mark.parametrize("text", ["1,0,0,1", "0,1,1,1", "0,1", "a,b,c,d"])
    def test_parse_invalid(self, text):
        """Test que x >= y, p >= q o un formato incorrecto son errores."""
        with pytest.raises(TwoCopyError):
            ChiIndex.parse(text)

    def test_out_of_range_for_space(self, two_qubits):
        """Test que α debe caber en (d_A, d_B)."""
        with pytest.raises(TwoCopyError):
            ChiIndex(0, 2, 0, 1).validate_for(two_qubits)

    def test_label_and_order(self):
        """Test que la etiqueta es estable y el orden lexicográfico."""
        assert ChiIndex(0, 1, 1, 2).label == "x0y1p1q2"
        assert ChiIndex(0, 1, 1, 2) < ChiIndex(0, 2, 0, 1)

    @pytest.mark.parametrize("dims,expected", [((2, 2), 1), ((2, 3), 3), ((3, 3), 9), ((4, 3), 18)])
    def test_number_of_indices(self, dims, expected):
        """Test que hay [d_A(d_A−1)/2]·[d_B(d_B−1)/2] índices."""
        assert len(chi_indices(HilbertSpace(dims))) == expected


class TestProjectors:
    """Tests de P± y de 𝓐."""

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_projectors_complete(self, d):
        """Test que P₊ + P₋ = I y P₊P₋ = 0."""
        p_plus = projector_sym_antisym(d, 1)
        p_minus = projector_sym_antisym(d, -1)
        assert_allclose(p_plus + p_minus, np.eye(d * d), atol=1e-14)
        assert_allclose(p_plus @ p_minus, 0, atol=1e-14)
        assert np.trace(p_minus).real == pytest.approx(d * (d - 1) / 2)

    def test_invalid_sign(self):
        """Test que sign distinto de ±1 es un error."""
        with pytest.raises(TwoCopyError):
            projector_sym_antisym(3, 0)

    @pytest.mark.parametrize("dims", SPACES)
    def test_chi_family_decomposes_A(self, dims):
        """Test que 𝓐 = Σ_α |χ_α⟩⟨χ_α| con vectores ortogonales de norma² 4."""
        space = HilbertSpace(dims)
        family = enumerate_chi(space)
        total = sum(np.outer(c.vector, c.vector.conj()) for c in family)
        assert_allclose(total, build_A(space).matrix, atol=1e-12)
        gram = np.array([[np.vdot(a.vector, b.vector) for b in family] for a in family])
        assert_allclose(gram, 4 * np.eye(len(family)), atol=1e-12)

    @pytest.mark.parametrize("dims", SPACES)
    def test_A_gives_pure_concurrence(self, dims):
        """Test que ⟨ψψ|𝓐|ψψ⟩ = C²(ψ)."""
        space = HilbertSpace(dims)
        rng = stream_rng(11)
        psi = PureState(space, random_pure_vector(rng, space.total_dim))
        value = build_A(space).pure_expectation(psi.amplitudes).real
        assert value == pytest.approx(pure_concurrence(psi) ** 2, abs=1e-12)


class TestVOperators:
    """Tests de V_(i) y V_α."""

    def test_requires_bipartite(self):
        """Test que V_(i) solo existe para espacios bipartitos."""
        with pytest.raises(TwoCopyError):
            build_V(HilbertSpace((2, 2, 2)), 1)

    def test_invalid_which(self, two_qubits):
        """Test que which debe ser 1 o 2."""
        with pytest.raises(TwoCopyError):
            build_V(two_qubits, 3)

    def test_space_is_canonical(self, two_qutrits):
        """Test que el operador vive en (A₁, B₁, A₂, B₂)."""
        assert build_V(two_qutrits, 1).space.factor_dims == (3, 3, 3, 3)

    @pytest.mark.parametrize("dims", SPACES)
    def test_V_equals_C_squared_on_pure(self, dims):
        """Test que ⟨ψψ|V_(i)|ψψ⟩ = C²(ψ) para estados puros."""
        space = HilbertSpace(dims)
        for k in range(10):
            psi = PureState(space, random_pure_vector(stream_rng(k), space.total_dim))
            c2 = pure_concurrence(psi) ** 2
            for which in (1, 2):
                value = build_V(space, which).pure_expectation(psi.amplitudes).real
                assert value == pytest.approx(c2, abs=1e-12)

    def test_V_alpha_is_convex_combination(self, two_qutrits):
        """Test que V_α con pesos (c₁, c₂) es c₁V_(1)α + c₂V_(2)α."""
        index = ChiIndex(0, 2, 1, 2)
        v1 = build_V_alpha(two_qutrits, index, which=1).matrix
        v2 = build_V_alpha(two_qutrits, index, which=2).matrix
        mixed = build_V_alpha(two_qutrits, index, weights=(0.3, 0.7)).matrix
        assert_allclose(mixed, 0.3 * v1 + 0.7 * v2, atol=1e-14)

    def test_resolve_weights_defaults(self):
        """Test que sin argumentos se usan los pesos de la configuración."""
        assert resolve_weights() == (0.5, 0.5)
        assert resolve_weights(which=2) == (0.0, 1.0)

    @pytest.mark.parametrize("kwargs", [{"which": 1, "weights": (1.0, 0.0)}, {"weights": (0.7, 0.4)}, {"weights": (-0.1, 1.1)}])
    def test_resolve_weights_invalid(self, kwargs):
        """Test que which y weights a la vez o pesos no convexos son errores."""
        with pytest.raises(TwoCopyError):
            resolve_weights(**kwargs)

    def test_operator_must_be_hermitian(self, two_qubits):
        """Test que TwoCopyOperator rechaza matrices no hermíticas."""
        m = np.zeros((16, 16), dtype=complex)
        m[0, 1] = 1.0
        with pytest.raises(TwoCopyError):
            TwoCopyOperator(two_qubits, m)

    def test_expectation_space_mismatch(self, two_qubits, phi_me_state):
        """Test que el estado debe vivir en el espacio del operador."""
        with pytest.raises(TwoCopyError):
            build_V(two_qubits, 1).expectation(phi_me_state.to_density())

    def test_reduce_second_copy(self, random_rho):
        """Test que tr(ρ · tr₂((I⊗σ)V)) = tr(ρ⊗σ V)."""
        rho = random_rho((2, 3), seed=1)
        sigma = random_rho((2, 3), seed=2)
        v = build_V(rho.space, 2)
        reduced = v.reduce_second_copy(sigma.matrix)
        assert np.trace(rho.matrix @ reduced) == pytest.approx(v.expectation(rho, sigma), abs=1e-12)


class TestInvariances:
    """Tests de invariancias de las trazas de dos copias."""

    def test_local_unitary_invariance(self):
        """Test que tr(ρ⊗ρ V_(i)) no cambia bajo U_A⊗U_B."""
        assert max(_local_unitary_trials(12, seed=5)) < 1e-10

    @pytest.mark.slow
    def test_local_unitary_invariance_full(self):
        """Test de invariancia local con 100 ensayos."""
        assert max(_local_unitary_trials(100, seed=6)) < 1e-10

    @pytest.mark.parametrize("dims", SPACES)
    def test_masked_submatrix_reduction(self, dims, random_rho):
        """Test que tr(ρ⊗ρ V_α) = tr(ϱ⊗ϱ V_α) con ϱ la submatriz de dos qubits."""
        rho = random_rho(dims, seed=3)
        for index in chi_indices(rho.space):
            v = build_V_alpha(rho.space, index)
            full = two_copy_expectation(v, rho)
            masked = two_copy_expectation(v, masked_state(rho, index))
            assert masked == pytest.approx(full, abs=1e-12)

    def test_masked_state_support(self, random_rho):
        """Test que ϱ solo tiene entradas en span{x,y}×span{p,q}."""
        rho = random_rho((3, 3), seed=4)
        index = ChiIndex(0, 2, 1, 2)
        m_a, m_b = mask_projector(rho.space, index)
        mask = np.kron(m_a, m_b)
        sub = masked_state(rho, index).matrix
        assert_allclose(mask @ sub @ mask, sub, atol=1e-15)
        assert masked_state(rho, index).trace <= rho.trace

    @pytest.mark.parametrize("dims", SPACES)
    def test_restricted_isometry_invariance(self, dims, random_rho):
        """Test que tr(ρ⊗ρ V_α) es invariante y ALB_α no crece bajo isometrías restringidas."""
        rho = random_rho(dims, seed=8)
        rng = stream_rng(9)
        d_a, d_b = dims
        for index in chi_indices(rho.space):
            u_a = restricted_unitary(rng, d_a, (index.x, index.y))
            u_b = restricted_unitary(rng, d_b, (index.p, index.q))
            transformed = restricted_isometry_transform(rho, index, u_a, u_b)
            v = build_V_alpha(rho.space, index)
            assert two_copy_expectation(v, transformed) == pytest.approx(
                two_copy_expectation(v, rho), abs=1e-12
            )
            alb_before = algebraic_lower_bound(rho, index).value
            alb_after = algebraic_lower_bound(transformed, index).value
            assert alb_after <= alb_before + 1e-10

    def test_restricted_isometry_rejects_wrong_support(self, random_rho):
        """Test que u_A con soporte fuera de span{x,y} es un error."""
        rho = random_rho((3, 3), seed=10)
        rng = stream_rng(10)
        index = ChiIndex(0, 1, 0, 1)
        with pytest.raises(TwoCopyError):
            restricted_isometry_transform(
                rho, index, restricted_unitary(rng, 3, (1, 2)), restricted_unitary(rng, 3, (0, 1))
            )

    def test_chi_overlap_phase_invariance(self, two_qutrits):
        """Test que |⟨χ_α|ψψ⟩| no cambia con fases locales diagonales."""
        rng = stream_rng(12)
        psi = random_pure_vector(rng, 9)
        phases = np.kron(np.exp(1j * rng.uniform(0, 2 * np.pi, 3)), np.exp(1j * rng.uniform(0, 2 * np.pi, 3)))
        for chi in enumerate_chi(two_qutrits):
            assert abs(chi.overlap(phases * psi)) == pytest.approx(abs(chi.overlap(psi)), abs=1e-12)
