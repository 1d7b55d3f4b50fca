"""
Entry point principal de la CLI.

Configura el logging, valida los argumentos y despacha al comando.
Códigos de salida: 0 éxito, 1 fallo de cálculo o validación, 2 error de uso.
"""

import argparse
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src.cli.commands import EXIT_FAILURE, EXIT_USAGE, RunConfig
from src.cli.parser import build_parser
from src.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)


def _run_config(args: argparse.Namespace) -> RunConfig:
    data = {key: value for key, value in vars(args).items() if key != "handler"}
    return RunConfig.model_validate(data)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Ejecuta la CLI.

    Args:
        argv: Argumentos (por defecto sys.argv[1:])

    Returns:
        Código de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse sale con 2 en errores de uso y con 0 en --help
        return int(e.code or 0)

    setup_logging("DEBUG" if args.verbose else None)

    try:
        config = _run_config(args)
    except ValidationError as e:
        errors = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'args'}: {err['msg']}" for err in e.errors())
        logger.error(f"Argumentos inválidos para {args.command}: {errors}")
        return EXIT_USAGE

    logger.debug(f"Ejecutando {config.command} con semilla {config.seed}")
    try:
        return int(args.handler(config))
    except (ValueError, RuntimeError) as e:
        logger.error(f"{config.command} falló: {type(e).__name__}: {e}")
        return EXIT_FAILURE


def run() -> None:
    """Punto de entrada del script instalado."""
    sys.exit(main())
