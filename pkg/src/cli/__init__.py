# Interfaz de línea de comandos
from src.cli.commands import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, RunConfig
from src.cli.parser import build_parser

__all__ = [
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "RunConfig",
    "build_parser",
]
