"""
Logging de la librería y de la CLI.

- Formato texto para uso interactivo, JSON para ejecuciones por lotes
  (CONCURRENCE_BOUNDS_LOG_FORMAT).
- Todo va a stderr: stdout queda libre para el CSV de los comandos.
- Los RuntimeWarning de numpy pasan por logging (logger "py.warnings").
"""

import json
import logging
import sys
import time
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, TextIO

from src.config import settings

CONTEXT_ATTR = "calc_context"


def _context_of(record: logging.LogRecord) -> Mapping[str, Any]:
    return getattr(record, CONTEXT_ATTR, None) or {}


class JSONFormatter(logging.Formatter):
    """Una línea JSON por registro, con el contexto del cálculo como campos propios."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            **_context_of(record),
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


class TextFormatter(logging.Formatter):
    """Formato legible; colores solo si la salida es una terminal."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(self, use_color: bool = False) -> None:
        super().__init__()
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        level = f"{record.levelname:8s}"
        if self.use_color:
            level = f"{self.COLORS.get(record.levelname, '')}{level}{self.RESET}"
        timestamp = datetime.now().strftime("%H:%M:%S")
        message = f"[{timestamp}] {level} {record.name}: {record.getMessage()}"

        context = _context_of(record)
        if context:
            message += " [" + " ".join(f"{k}={v}" for k, v in context.items()) + "]"
        if record.exc_info:
            message += f"\n{self.formatException(record.exc_info)}"
        return message


def build_formatter(fmt: str, stream: TextIO) -> logging.Formatter:
    if fmt == "json":
        return JSONFormatter()
    return TextFormatter(use_color=stream.isatty())


def setup_logging(level: str | None = None, fmt: str | None = None) -> None:
    """
    Configura el logger raíz. Solo la CLI la llama; la librería únicamente obtiene loggers.

    Args:
        level: Nivel explícito (--verbose da DEBUG); por defecto settings.log_level
        fmt: "text" o "json"; por defecto settings.log_format
    """
    log_level = getattr(logging, level or settings.log_level)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(build_formatter(fmt or settings.log_format, sys.stderr))
    handler.setLevel(log_level)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers.clear()
    root_logger.addHandler(handler)

    logging.captureWarnings(True)


def get_logger(name: str) -> logging.Logger:
    """Logger del módulo (usar __name__)."""
    return logging.getLogger(name)


class ContextAdapter(logging.LoggerAdapter):  # type: ignore[type-arg]
    """Añade a cada registro el contexto del cálculo (semilla, α, búsqueda...)."""

    def process(self, msg: Any, kwargs: Any) -> tuple[Any, Any]:
        extra = dict(kwargs.get("extra") or {})
        extra[CONTEXT_ATTR] = {**(self.extra or {}), **extra.get(CONTEXT_ATTR, {})}
        kwargs["extra"] = extra
        return msg, kwargs


def context_logger(name: str, **context: Any) -> ContextAdapter:
    """
    Logger con contexto fijo.

    Ejemplo:
        log = context_logger(__name__, seed=7, search="concurrence")
        log.debug("reinicio terminado")   # ... [seed=7 search=concurrence]
    """
    return ContextAdapter(get_logger(name), context)


@contextmanager
def timed(logger: logging.Logger | ContextAdapter, what: str) -> Iterator[None]:
    """Registra inicio y duración de un bloque a nivel DEBUG."""
    start = time.perf_counter()
    logger.debug(f"Iniciando {what}")
    try:
        yield
    finally:
        logger.debug(f"{what} terminado en {time.perf_counter() - start:.3f} s")
