"""
Euler Factor UI

Deterministic JSON/CSV rendering for machine output and Rich tables for
human output.
"""
import csv
import json
import logging
import math
import sys
from typing import Any, Iterable, Optional, Sequence, TextIO

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table
from rich.text import Text

console = Console()
err_console = Console(stderr=True)

TRAJECTORY_HEADER = ("t", "x", "y", "z")


def setup_logging(verbose: bool = False):
    """Route library logging to stderr through Rich; DEBUG when verbose."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False, show_time=False)],
        force=True,
    )


# ============================================================
# NUMBERS AND JSON
# ============================================================

def format_number(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"Cannot render non-finite number {x}")
    return format(x, ".17g")


def to_plain(value: Any) -> Any:
    """Convert numpy scalars and arrays to plain Python values."""
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    return value


def _encode(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    raise TypeError(f"Cannot render {type(value).__name__} as JSON")


def dumps(document: Any) -> str:
    """JSON text with insertion-ordered keys and 17-significant-digit floats."""
    return _encode(to_plain(document))


def emit(document: Any, stream: Optional[TextIO] = None):
    """Write a document as one JSON line to stdout (or stream)."""
    stream = stream or sys.stdout
    stream.write(dumps(document) + "\n")


def complex_pairs(matrix: np.ndarray) -> list:
    """Complex array as nested [re, im] pairs."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in matrix]
    return [complex_pairs(row) for row in matrix]


# ============================================================
# CSV
# ============================================================

def write_csv(rows: Iterable[Sequence[float]], header: Sequence[str] = TRAJECTORY_HEADER,
              stream: Optional[TextIO] = None):
    """Write rows with the given header, numbers at full precision."""
    stream = stream or sys.stdout
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])


# ============================================================
# PRETTY OUTPUT
# ============================================================

def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        return _records_table(value)
    if isinstance(value, list):
        return Text(", ".join(str(_cell(v)) for v in value))
    return str(value)


def _records_table(records: list) -> Table:
    table = Table(show_header=True, header_style="bold")
    columns = list(records[0].keys())
    for col in columns:
        table.add_column(col, justify="right")
    for record in records:
        table.add_row(*[_cell(record.get(col)) for col in columns])
    return table


def show_document(title: str, document: Any):
    """Display a command result as a Rich table."""
    document = to_plain(document)
    if isinstance(document, list):
        for i, item in enumerate(document, 1):
            show_document(f"{title} [{i}]", item)
        return

    table = Table(title=title, show_header=True, header_style="bold cyan")
    table.add_column("Field", style="bold")
    table.add_column("Value")
    for key, value in document.items():
        table.add_row(key, _cell(value))
    console.print(table)


def show_config(config: dict, path: str):
    """Display the effective configuration."""
    console.print()
    console.rule("[bold cyan]Configuration[/bold cyan]")
    console.print(f"[dim]{path}[/dim]")
    for section, values in config.items():
        table = Table(title=section, show_header=True, header_style="bold")
        table.add_column("Key", width=20)
        table.add_column("Value", justify="right")
        for key, value in values.items():
            table.add_row(key, _cell(value) if not isinstance(value, float) else f"{value:g}")
        console.print(table)
    console.print()


def show_error(message: str):
    err_console.print(f"[red]Error:[/red] {escape(message)}")
