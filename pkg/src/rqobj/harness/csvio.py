"""Self-describing CSV tables.

Layout: ``#``-prefixed header comment lines, one column-name line, data rows,
then ``#``-prefixed footer lines.  Reals are written with 17 significant
digits so a double survives the round trip exactly.
"""

from __future__ import annotations

import io
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

import numpy as np


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    header: list[str] = field(default_factory=list)
    footer: list[str] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def complex_columns(names: list[str]) -> list[str]:
    return [f"{n}_{part}" for n in names for part in ("re", "im")]


def interleave_complex(values) -> list[float]:
    """``[z0, z1, ...] -> [z0.re, z0.im, z1.re, ...]`` (row-major for matrices)."""
    z = np.asarray(values, dtype=complex).ravel()
    out = np.empty(2 * z.size)
    out[0::2], out[1::2] = z.real, z.imag
    return out.tolist()


def dump(table: Table, stream: TextIO) -> None:
    for line in table.header:
        stream.write(f"# {line}\n")
    stream.write(",".join(table.columns) + "\n")
    for row in table.rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")
    for line in table.footer:
        stream.write(f"# {line}\n")


def dumps(table: Table) -> str:
    buf = io.StringIO()
    dump(table, buf)
    return buf.getvalue()


def write_table(table: Table, out: str | Path | None) -> None:
    """Write to ``out``, or to stdout when ``out`` is None or ``"-"``."""
    if out is None or str(out) == "-":
        dump(table, sys.stdout)
        return
    with open(out, "w", newline="\n", encoding="ascii") as fh:
        dump(table, fh)


def read_table(path: str | Path) -> Table:
    """Parse a file written by :func:`write_table` (values kept as strings)."""
    lines = Path(path).read_text(encoding="ascii").splitlines()
    header, footer, rows = [], [], []
    columns = None
    for line in lines:
        if line.startswith("#"):
            (footer if columns is not None else header).append(line[2:])
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append(tuple(line.split(",")))
    return Table(columns or [], rows, header, footer)
