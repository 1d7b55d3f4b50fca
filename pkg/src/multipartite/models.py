"""
Modelos para sistemas de N partes: biparticiones e índices colectivos γ.
"""

from dataclasses import dataclass

from src.twocopy.models import ChiIndex


class DeskScaleError(ValueError):
    """Dimensión de dos copias por encima del límite configurado."""

    pass


@dataclass(frozen=True, order=True)
class Bipartition:
    """
    División de N factores en (left | right).

    mask es la máscara de bits de left; siempre contiene el factor 0.
    """

    mask: int
    n_factors: int

    def __post_init__(self) -> None:
        full = (1 << self.n_factors) - 1
        if not (self.mask & 1) or self.mask <= 0 or self.mask >= full:
            raise ValueError(f"Máscara de bipartición inválida: {self.mask} (N={self.n_factors})")

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n_factors) if self.mask >> k & 1)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n_factors) if not self.mask >> k & 1)

    @property
    def order(self) -> tuple[int, ...]:
        """Orden de factores (left, right) usado para la permutación."""
        return self.left + self.right

    @property
    def label(self) -> str:
        def side(factors: tuple[int, ...]) -> str:
            return "".join(str(k + 1) for k in factors)

        return f"{side(self.left)}|{side(self.right)}"


@dataclass(frozen=True, order=True)
class ChiGamma:
    """γ = (bipartición, α) sobre el espacio bipartito inducido."""

    bipartition: Bipartition
    index: ChiIndex

    @property
    def label(self) -> str:
        return f"m{self.bipartition.mask}_{self.index.label}"
