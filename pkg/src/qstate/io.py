"""
Lectura y escritura de estados y operadores en formato de texto.

Formato (UTF-8):
- línea 1: "qdm 1" (operador densidad), "qsv 1" (estado puro) o "qop 1"
  (operador hermítico general)
- línea 2: dimensiones de los factores separadas por espacios
- resto: entradas "re:im" separadas por un espacio, en orden row-major;
  una fila por línea para matrices, una sola línea para estados puros

Los números se escriben con 17 cifras significativas (ida y vuelta exacta).
"""

from pathlib import Path

import numpy as np

from src.qstate.models import (
    ComplexArray,
    DensityOperator,
    HilbertSpace,
    PureState,
    StateValidationError,
)
from src.utils.logging import get_logger

logger = get_logger(__name__)

DENSITY_HEADER = "qdm 1"
PURE_HEADER = "qsv 1"
OPERATOR_HEADER = "qop 1"


class StateFormatError(ValueError):
    """Archivo de estado con formato inválido."""

    pass


def format_complex(z: complex) -> str:
    """Token 're:im' con 17 cifras significativas."""
    return f"{z.real:.17g}:{z.imag:.17g}"


def parse_complex(token: str) -> complex:
    """Parsea un token 're:im' rechazando NaN e infinitos."""
    parts = token.split(":")
    if len(parts) != 2:
        raise StateFormatError(f"Token complejo inválido: {token!r}")
    try:
        re_part, im_part = float(parts[0]), float(parts[1])
    except ValueError as e:
        raise StateFormatError(f"Token complejo inválido: {token!r}") from e
    if not (np.isfinite(re_part) and np.isfinite(im_part)):
        raise StateFormatError(f"Entrada no finita: {token!r}")
    return complex(re_part, im_part)


def _format_row(values: ComplexArray) -> str:
    return " ".join(format_complex(complex(v)) for v in values)


def _parse_row(line: str, expected: int, line_no: int) -> list[complex]:
    tokens = line.split()
    if len(tokens) != expected:
        raise StateFormatError(
            f"Línea {line_no}: se esperaban {expected} entradas, hay {len(tokens)}"
        )
    return [parse_complex(t) for t in tokens]


def _parse_dims(line: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(t) for t in line.split())
    except ValueError as e:
        raise StateFormatError(f"Línea de dimensiones inválida: {line!r}") from e
    if not dims:
        raise StateFormatError("Línea de dimensiones vacía")
    return dims


def _read_lines(path: Path) -> list[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StateFormatError(f"{path}: no se puede leer ({e.strerror})") from e
    # "#" abre un comentario hasta el final de la línea
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise StateFormatError(f"{path}: archivo incompleto")
    return lines


def _parse_matrix(lines: list[str], dim: int) -> ComplexArray:
    if len(lines) != dim:
        raise StateFormatError(f"Se esperaban {dim} filas, hay {len(lines)}")
    rows = [_parse_row(line, dim, i + 3) for i, line in enumerate(lines)]
    return np.array(rows, dtype=np.complex128)


def _format_matrix(header: str, dims: tuple[int, ...], matrix: ComplexArray) -> str:
    lines = [header, " ".join(str(d) for d in dims)]
    lines.extend(_format_row(row) for row in matrix)
    return "\n".join(lines) + "\n"


def read_state(path: str | Path) -> DensityOperator | PureState:
    """
    Lee un estado desde archivo.

    Args:
        path: Ruta a un archivo "qdm 1" o "qsv 1"

    Returns:
        DensityOperator o PureState validados

    Raises:
        StateFormatError: Cabecera, dimensiones o entradas inválidas
        StateValidationError: El contenido no es un estado válido
    """
    path = Path(path)
    lines = _read_lines(path)
    header = lines[0]
    try:
        space = HilbertSpace(_parse_dims(lines[1]))
    except StateValidationError as e:
        raise StateFormatError(f"{path}: {e}") from e
    dim = space.total_dim

    if header == DENSITY_HEADER:
        matrix = _parse_matrix(lines[2:], dim)
        rho = DensityOperator(space, matrix)
        logger.debug(f"Leído operador densidad {space} desde {path}")
        return rho
    if header == PURE_HEADER:
        if len(lines) != 3:
            raise StateFormatError(f"{path}: un estado puro ocupa una sola línea de datos")
        psi = PureState(space, np.array(_parse_row(lines[2], dim, 3), dtype=np.complex128))
        logger.debug(f"Leído estado puro {space} desde {path}")
        return psi
    raise StateFormatError(f"{path}: cabecera desconocida {header!r}")


def format_state(obj: DensityOperator | PureState) -> str:
    """Texto "qdm 1" o "qsv 1" de un estado (también usado en volcados de errores)."""
    dims = obj.space.factor_dims
    if isinstance(obj, DensityOperator):
        return _format_matrix(DENSITY_HEADER, dims, obj.matrix)
    lines = [PURE_HEADER, " ".join(str(d) for d in dims), _format_row(obj.amplitudes)]
    return "\n".join(lines) + "\n"


def write_state(obj: DensityOperator | PureState, path: str | Path) -> None:
    """Escribe un estado en formato "qdm 1" o "qsv 1"."""
    path = Path(path)
    path.write_text(format_state(obj), encoding="utf-8")
    logger.debug(f"Estado {obj.space} escrito en {path}")


def write_operator(matrix: ComplexArray, dims: tuple[int, ...], path: str | Path) -> None:
    """
    Escribe un operador hermítico general en formato "qop 1".

    dims es la lista completa de factores (para un operador de dos copias,
    A₁ B₁ A₂ B₂).
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    dim = int(np.prod(dims))
    if matrix.shape != (dim, dim):
        raise StateFormatError(f"Matriz {matrix.shape} incompatible con dimensiones {dims}")
    Path(path).write_text(_format_matrix(OPERATOR_HEADER, dims, matrix), encoding="utf-8")
    logger.debug(f"Operador {dims} escrito en {path}")


def read_operator(path: str | Path) -> tuple[ComplexArray, tuple[int, ...]]:
    """Lee un operador "qop 1"; devuelve (matriz, dimensiones)."""
    path = Path(path)
    lines = _read_lines(path)
    if lines[0] != OPERATOR_HEADER:
        raise StateFormatError(f"{path}: cabecera {lines[0]!r}, se esperaba {OPERATOR_HEADER!r}")
    dims = _parse_dims(lines[1])
    return _parse_matrix(lines[2:], int(np.prod(dims))), dims
