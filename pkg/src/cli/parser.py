"""
Parser de argumentos de la CLI.

Cada subcomando registra su función cmd_* en `handler`; main.py la invoca
con el RunConfig ya validado.
"""

import argparse
from fractions import Fraction
from pathlib import Path

from src.cli.commands import (
    BOUND_METHODS,
    cmd_bounds,
    cmd_isotropic,
    cmd_qutrit_decay,
    cmd_selftest,
    cmd_witness_export,
)
from src.config import settings


def parse_reals(text: str) -> tuple[float, ...]:
    """'a,b,c' → (a, b, c); admite fracciones como 1/12."""
    try:
        return tuple(float(Fraction(token.strip())) for token in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"Lista de reales inválida: {text!r}") from e


def _which(text: str) -> int:
    if text not in ("1", "2"):
        raise argparse.ArgumentTypeError(f"which debe ser 1 o 2, recibido {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concurrence-bounds",
        description="Cotas inferiores de la concurrencia: barridos, evaluación y autoverificación",
    )
    parser.add_argument("--seed", type=int, default=settings.seed, help="Semilla global")
    parser.add_argument("-v", "--verbose", action="store_true", help="Logs en nivel DEBUG")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Barrido de estados isótropos
    iso = subparsers.add_parser("isotropic", help="Cotas de dos copias sobre estados isótropos")
    iso.add_argument("--d", type=int, required=True, help="Dimensión local (2..4)")
    iso.add_argument("--f-min", type=float, default=0.0)
    iso.add_argument("--f-max", type=float, default=1.0)
    iso.add_argument("--steps", type=int, default=200, help="Intervalos de la malla de F")
    iso.add_argument("--out", type=Path, help="CSV de salida (stdout por defecto)")
    iso.add_argument("--emit-plot", action="store_true", help="Escribir script de gnuplot")
    iso.set_defaults(handler=cmd_isotropic)

    # Desintegración del par de qutrits
    decay = subparsers.add_parser("qutrit-decay", help="Testigos a lo largo de la desintegración")
    decay.add_argument("--lambdas", type=parse_reals, required=True, help="λ₀,λ₁,λ₂")
    decay.add_argument("--gamma", type=float, default=1.0, help="Tasa Γ")
    decay.add_argument("--t-max", type=float, default=3.0, help="Γt final")
    decay.add_argument("--dt", type=float, default=None, help="Paso de RK4 (1/Γ)")
    decay.add_argument("--record-every", type=int, default=30, help="Pasos entre filas")
    decay.add_argument("--which", type=_which, default=1, help="V_(1) o V_(2)")
    decay.add_argument("--out", type=Path)
    decay.add_argument("--emit-plot", action="store_true")
    decay.set_defaults(handler=cmd_qutrit_decay)

    # Evaluación sobre un fichero de estado
    bounds = subparsers.add_parser("bounds", help="Evalúa una cota sobre un estado")
    bounds.add_argument("--state", type=Path, required=True)
    bounds.add_argument("--method", choices=BOUND_METHODS, required=True)
    bounds.add_argument("--sigma", type=Path, help="Estado de referencia para testigos")
    bounds.add_argument("--c-sigma", type=float, help="Cota superior de C(σ) para σ mixto (W_σ)")
    bounds.add_argument("--weights", type=parse_reals, help="c₁,c₂")
    bounds.add_argument("--alpha", help="x,y,p,q o 'all'")
    bounds.add_argument("--out", type=Path)
    bounds.set_defaults(handler=cmd_bounds)

    # Exportación de testigos
    export = subparsers.add_parser("witness-export", help="Exporta W_σα y su plan de medidas")
    export.add_argument("--sigma", type=Path, required=True)
    export.add_argument("--alpha", default="all", help="x,y,p,q o 'all'")
    export.add_argument("--which", type=_which, default=1)
    export.add_argument("--out-prefix", type=Path, required=True)
    export.set_defaults(handler=cmd_witness_export)

    # Autoverificación
    selftest = subparsers.add_parser("selftest", help="Ejecuta los oráculos")
    selftest.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Semilla del informe")
    mode = selftest.add_mutually_exclusive_group()
    mode.add_argument("--quick", dest="full", action="store_false", help="Tamaños reducidos (defecto)")
    mode.add_argument("--full", dest="full", action="store_true", help="Tamaños de aceptación")
    selftest.add_argument("--report", type=Path, help="Copia del informe en texto")
    selftest.add_argument("--csv", type=Path, help="Márgenes por caso")
    selftest.set_defaults(handler=cmd_selftest, full=False)

    return parser
