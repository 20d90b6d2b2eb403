# polytransform/matrix_io.py

import re
import sys
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import MatrixFormatError

# A real literal as printed by the 'g' format: optional sign, digits, optional exponent.
_REAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"^([+-]?{_REAL})([+-])({_REAL})i$")

SEPARATOR = ", "


def render_entry(value: complex) -> str:
    """Renders a complex entry as '<re><sign><|im|>i' with 17 significant digits."""
    value = complex(value)
    real = value.real + 0.0
    sign = "-" if value.imag < 0 else "+"
    return f"{real:.17g}{sign}{abs(value.imag):.17g}i"


def parse_entry(text: str) -> complex:
    match = _ENTRY.match(text.strip())
    if not match:
        raise MatrixFormatError(f"Malformed complex entry '{text}'.")
    real, sign, imag = match.groups()
    return complex(float(real), float(imag) if sign == "+" else -float(imag))


def render_matrix(matrix) -> str:
    """One row per line, entries separated by ', ', terminated by a newline."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2:
        raise MatrixFormatError(f"Only 2-D matrices can be rendered, got shape {matrix.shape}.")
    return "".join(SEPARATOR.join(render_entry(v) for v in row) + "\n" for row in matrix)


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([parse_entry(token) for token in line.split(",")])
        except MatrixFormatError as e:
            raise MatrixFormatError(f"line {line_number}: {e}")
        if len(rows[-1]) != len(rows[0]):
            raise MatrixFormatError(f"line {line_number}: expected {len(rows[0])} entries, got {len(rows[-1])}.")
    if not rows:
        return np.zeros((0, 0), dtype=complex)
    return np.array(rows, dtype=complex)


def write_matrix(matrix, destination: Optional[Union[str, Path]] = None) -> None:
    """Writes a matrix to a file, or to stdout when destination is None or '-'."""
    text = render_matrix(matrix)
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(destination).write_text(text, encoding="utf-8")


def read_matrix(source: Union[str, Path]) -> np.ndarray:
    return parse_matrix(Path(source).read_text(encoding="utf-8"))
