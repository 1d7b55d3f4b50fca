"""
Configuración centralizada de la librería usando Pydantic Settings.

Carga las variables de entorno (prefijo CONCURRENCE_BOUNDS_) desde el entorno
o desde .env y valida los tipos.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuración de los cálculos de cotas de concurrencia."""

    model_config = SettingsConfigDict(
        env_prefix="CONCURRENCE_BOUNDS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Concurrencia
    threads: int = Field(default=0, ge=0, description="Máximo de workers (0 = automático)")

    # Aleatoriedad
    seed: int = Field(default=42, ge=0, description="Semilla por defecto de todas las búsquedas")

    # Numérica
    eigen_cutoff: float = Field(
        default=1e-12,
        ge=0.0,
        description="Autovalores por debajo de este valor se descartan en descomposiciones",
    )
    weight_c1: float = Field(
        default=0.5,
        ge=0.0,
        le=1.0,
        description="Peso c1 de V_(1)α en V_α (c2 = 1 - c1)",
    )
    rk4_dt: float = Field(default=1e-3, gt=0.0, description="Paso de RK4 en unidades de 1/Γ")

    # Límites de escala de escritorio
    max_two_copy_dim: int = Field(default=4096, gt=0)
    max_local_dim: int = Field(default=10, ge=2)

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(default="INFO")
    log_format: Literal["json", "text"] = Field(default="text")

    @property
    def worker_count(self) -> int | None:
        """Número de workers para ThreadPoolExecutor (None deja decidir al executor)."""
        return self.threads or None

    @property
    def default_weights(self) -> tuple[float, float]:
        """Pesos (c1, c2) por defecto de V_α."""
        return (self.weight_c1, 1.0 - self.weight_c1)

    @field_validator("rk4_dt")
    @classmethod
    def validate_rk4_dt(cls, v: float) -> float:
        """Valida que el paso de integración sea razonable para el modelo de decaimiento."""
        if v > 0.1:
            raise ValueError("RK4_DT debe ser <= 0.1 (en unidades de 1/Γ)")
        return v


@lru_cache
def get_settings() -> Settings:
    """
    Obtiene la configuración de la librería.

    Usa lru_cache para evitar cargar el archivo .env múltiples veces.
    """
    return Settings()


# Alias para acceso rápido
settings = get_settings()
