"""Two-column CSV reading and writing.

Comma separated, '.' decimals, LF or CRLF line endings, and an optional
header line that is recognised by being non-numeric.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .errors import DomainError


class CSVFormatError(DomainError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_pairs(text: str):
    """Parse CSV text into ``(header or None, (n, 2) float array)``."""
    reader = csv.reader(io.StringIO(text, newline=""))
    header = None
    rows = []
    first = True
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = [cell.strip() for cell in row]
        if first:
            first = False
            if not all(_is_number(c) for c in cells):
                if len(cells) != 2:
                    raise CSVFormatError(f"expected 2 header columns, found {len(cells)}", lineno)
                header = tuple(cells)
                continue
        if len(cells) != 2:
            raise CSVFormatError(f"expected 2 columns, found {len(cells)}", lineno)
        try:
            x, y = float(cells[0]), float(cells[1])
        except ValueError:
            raise CSVFormatError(f"non-numeric value in {','.join(cells)!r}", lineno) from None
        if not (np.isfinite(x) and np.isfinite(y)):
            raise CSVFormatError("non-finite value", lineno)
        rows.append((x, y))
    data = np.array(rows, dtype=float).reshape(-1, 2)
    return header, data


def read_pairs(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_pairs(fh.read())


def format_pairs(data, header=("u", "v")) -> str:
    """CSV text with full-precision (round-trippable) floats."""
    lines = [",".join(header)]
    lines.extend(f"{x!r},{y!r}" for x, y in np.asarray(data, dtype=float).tolist())
    return "\n".join(lines) + "\n"
