"""
Salida de la CLI: CSV con 15 cifras significativas y scripts de gnuplot.
"""

import csv
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TextIO

from src.bounds.models import BoundReport
from src.utils.logging import get_logger

logger = get_logger(__name__)

BOUND_COLUMNS = ("bound", "term", "value", "raw_value", "counted")

Cell = str | float | int


def format_cell(value: Cell) -> str:
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Cell]], out: Path | None = None) -> None:
    """Escribe el CSV en `out` o en stdout; la cabecera siempre va primero."""
    if out is None:
        _write_rows(sys.stdout, header, rows)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as f:
        _write_rows(f, header, rows)
    logger.info(f"CSV escrito en {out}")


def _write_rows(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])


def bound_rows(reports: Sequence[BoundReport]) -> list[list[Cell]]:
    """Una fila resumen por informe seguida de su desglose por α."""
    rows: list[list[Cell]] = []
    for report in reports:
        rows.append([report.kind.value, "total", report.value, report.raw_value, int(report.is_detected)])
        for term in report.per_alpha:
            rows.append([report.kind.value, term.label, max(0.0, term.raw), term.raw, int(term in report.detected)])
    return rows


def write_gnuplot_script(
    csv_path: Path,
    columns: Sequence[str],
    xlabel: str,
    ylabel: str = "cota",
) -> Path:
    """
    Script de gnuplot junto al CSV que dibuja las columnas 2.. frente a la 1.
    Los títulos salen de la cabecera del CSV.

    El CSV es la fuente de verdad; el script solo lo referencia.
    """
    script = csv_path.with_suffix(".gp")
    plots = ", \\\n     ".join(
        f"'{csv_path.name}' using 1:{k} with lines"
        for k in range(2, len(columns) + 1)
    )
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set yrange [0:*]",
        "set terminal pngcairo size 800,600",
        f"set output '{csv_path.with_suffix('.png').name}'",
        f"plot {plots}",
    ]
    script.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Script de gnuplot escrito en {script}")
    return script
