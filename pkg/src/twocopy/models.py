"""
Modelos de operadores de dos copias.

Orden canónico de los índices de dos copias: (A₁, B₁, A₂, B₂), aplanado en
row-major. Con ese orden ρ⊗σ es directamente np.kron(ρ, σ).
"""

from dataclasses import dataclass

import numpy as np

from src.qstate.models import (
    HERMITIAN_TOL,
    ComplexArray,
    DensityOperator,
    HilbertSpace,
    _frozen,
)


class TwoCopyError(ValueError):
    """Entrada inválida para un operador de dos copias."""

    pass


def _require_bipartite(space: HilbertSpace) -> None:
    if not space.is_bipartite:
        raise TwoCopyError(f"Se necesita un espacio bipartito, recibido {space}")


@dataclass(frozen=True, order=True)
class ChiIndex:
    """
    Índice α = (x, y, p, q) de |χ_α⟩ = (|xy⟩−|yx⟩)_A (|pq⟩−|qp⟩)_B.

    El orden natural de la dataclass es el lexicográfico en (x, y, p, q).
    """

    x: int
    y: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if not (0 <= self.x < self.y and 0 <= self.p < self.q):
            raise TwoCopyError(f"ChiIndex inválido: necesita x < y y p < q ({self.label})")

    def validate_for(self, space: HilbertSpace) -> None:
        """Comprueba que los índices caben en (d_A, d_B)."""
        _require_bipartite(space)
        d_a, d_b = space.factor_dims
        if self.y >= d_a or self.q >= d_b:
            raise TwoCopyError(f"ChiIndex {self.label} fuera de rango para {space}")

    @property
    def label(self) -> str:
        return f"x{self.x}y{self.y}p{self.p}q{self.q}"

    @property
    def witness_name(self) -> str:
        """Nombre del testigo W_σα usado en cabeceras CSV y ficheros."""
        return f"Wsa_{self.label}"

    @property
    def is_diagonal(self) -> bool:
        """True si {x = p, y = q} (los α útiles para |φ⁺⟩)."""
        return self.x == self.p and self.y == self.q

    @classmethod
    def parse(cls, text: str) -> "ChiIndex":
        """Parsea 'x,y,p,q'."""
        try:
            x, y, p, q = (int(t) for t in text.split(","))
        except ValueError as e:
            raise TwoCopyError(f"Índice α inválido: {text!r} (formato x,y,p,q)") from e
        return cls(x, y, p, q)


@dataclass(frozen=True, eq=False)
class ChiVector:
    """|χ_α⟩ en el espacio de dos copias; norma al cuadrado 4."""

    index: ChiIndex
    joint_space: HilbertSpace
    vector: ComplexArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", _frozen(self.vector))

    def matrix_form(self) -> ComplexArray:
        """K con K[i, j] = ⟨i|⟨j|χ⟩ (fila: copia 1, columna: copia 2)."""
        dim = self.joint_space.total_dim
        return self.vector.reshape(dim, dim)

    def overlap(self, psi: ComplexArray, phi: ComplexArray | None = None) -> complex:
        """⟨χ|ψφ⟩ (con φ = ψ por defecto)."""
        phi = psi if phi is None else phi
        return complex(psi @ self.matrix_form().conj() @ phi)


@dataclass(frozen=True, eq=False)
class TwoCopyOperator:
    """
    Operador hermítico sobre dos copias de un espacio bipartito.

    Attributes:
        joint_space: Espacio de una copia (d_A, d_B)
        matrix: Matriz D²×D² en el orden (A₁, B₁, A₂, B₂)
        name: Etiqueta para logs y exportación
    """

    joint_space: HilbertSpace
    matrix: ComplexArray
    name: str = ""

    def __post_init__(self) -> None:
        _require_bipartite(self.joint_space)
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.joint_space.total_dim ** 2
        if matrix.shape != (dim, dim):
            raise TwoCopyError(f"Se esperaba una matriz {dim}×{dim}, hay {matrix.shape}")
        asym = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asym > HERMITIAN_TOL:
            raise TwoCopyError(f"{self.name or 'Operador'} no hermítico (desviación {asym:.3e})")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def space(self) -> HilbertSpace:
        """Espacio de dos copias con factores (A₁, B₁, A₂, B₂)."""
        d_a, d_b = self.joint_space.factor_dims
        return HilbertSpace((d_a, d_b, d_a, d_b), check_scale=self.joint_space.check_scale)

    def expectation(self, rho: DensityOperator, sigma: DensityOperator | None = None) -> complex:
        """tr(ρ⊗σ M), con σ = ρ por defecto. Puede tener residuo imaginario."""
        sigma = rho if sigma is None else sigma
        for state in (rho, sigma):
            if state.space != self.joint_space:
                raise TwoCopyError(
                    f"Estado en {state.space} frente a operador sobre {self.joint_space}"
                )
        dim = self.joint_space.total_dim
        m4 = self.matrix.reshape(dim, dim, dim, dim)
        return complex(np.einsum("ijkl,ki,lj->", m4, rho.matrix, sigma.matrix, optimize=True))

    def pure_expectation(self, psi: ComplexArray, phi: ComplexArray | None = None) -> complex:
        """⟨ψφ|M|ψφ⟩ (φ = ψ por defecto)."""
        phi = psi if phi is None else phi
        v = np.kron(psi, phi)
        return complex(np.vdot(v, self.matrix @ v))

    def reduce_second_copy(self, sigma: ComplexArray) -> ComplexArray:
        """tr₂((I⊗σ) M): operador de una copia con tr(ρ·out) = tr(ρ⊗σ M)."""
        dim = self.joint_space.total_dim
        m4 = self.matrix.reshape(dim, dim, dim, dim)
        out = np.einsum("ijkl,lj->ik", m4, np.asarray(sigma))
        return np.asarray(0.5 * (out + out.conj().T), dtype=np.complex128)

    def __add__(self, other: "TwoCopyOperator") -> "TwoCopyOperator":
        if other.joint_space != self.joint_space:
            raise TwoCopyError("Suma de operadores sobre espacios distintos")
        return TwoCopyOperator(self.joint_space, self.matrix + other.matrix, self.name)

    def scaled(self, factor: float, name: str | None = None) -> "TwoCopyOperator":
        return TwoCopyOperator(self.joint_space, factor * self.matrix, name or self.name)
