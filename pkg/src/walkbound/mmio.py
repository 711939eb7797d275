"""Reading and writing matrices on disk.

Two formats: Matrix Market (.mtx or .mm; array and coordinate layouts,
real, integer, or complex fields, symmetric storage expanded on read) and
CSV (.csv) with complex literals written as a+bi.  Reading goes through
scipy's parser; writing is done here so the byte layout stays fixed:
array layout, column major, one value per line, shortest lossless float
representation.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .core import DenseMatrix
from .errors import InputFormatError


def _parse_complex(token: str, where: str) -> complex:
    text = token.strip().replace(" ", "")
    if not text:
        raise InputFormatError(f"empty cell at {where}")
    try:
        return complex(text.replace("i", "j").replace("I", "j"))
    except ValueError as exc:
        raise InputFormatError(f"cannot parse {token!r} at {where}") from exc


def _read_csv(path: Path) -> DenseMatrix:
    rows = []
    with open(path, newline="") as handle:
        for lineno, record in enumerate(csv.reader(handle), start=1):
            if not record:
                continue
            rows.append([
                _parse_complex(cell, f"{path.name}:{lineno}") for cell in record
            ])
    if not rows:
        raise InputFormatError(f"{path}: no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputFormatError(f"{path}: rows have inconsistent lengths")
    return DenseMatrix(rows)


def _read_matrix_market(path: Path) -> DenseMatrix:
    try:
        loaded = scipy.io.mmread(str(path))
    except Exception as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
    if scipy.sparse.issparse(loaded):
        loaded = loaded.toarray()
    return DenseMatrix(np.asarray(loaded))


def read_matrix(path) -> DenseMatrix:
    """Load a matrix, picking the format from the file extension."""
    p = Path(path)
    if not p.exists():
        raise InputFormatError(f"no such file: {p}")
    suffix = p.suffix.lower()
    if suffix in (".mtx", ".mm"):
        return _read_matrix_market(p)
    if suffix == ".csv":
        return _read_csv(p)
    raise InputFormatError(
        f"unsupported extension {suffix!r}; expected .mtx, .mm, or .csv"
    )


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _fmt_complex_csv(z: complex) -> str:
    if z.imag == 0.0:
        return _fmt_float(z.real)
    sign = "+" if z.imag >= 0.0 else "-"
    return f"{_fmt_float(z.real)}{sign}{_fmt_float(abs(z.imag))}i"


def _write_matrix_market(path: Path, a: DenseMatrix) -> None:
    data = a.data
    real = a.is_real()
    lines = [
        f"%%MatrixMarket matrix array {'real' if real else 'complex'} general",
        f"{a.m} {a.n}",
    ]
    for j in range(a.n):
        for i in range(a.m):
            z = data[i, j]
            if real:
                lines.append(_fmt_float(z.real))
            else:
                lines.append(f"{_fmt_float(z.real)} {_fmt_float(z.imag)}")
    path.write_text("\n".join(lines) + "\n")


def _write_csv(path: Path, a: DenseMatrix) -> None:
    data = a.data
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for i in range(a.m):
            writer.writerow([_fmt_complex_csv(complex(z)) for z in data[i]])


def write_matrix(path, a: DenseMatrix) -> None:
    """Write a matrix; same matrix and path suffix give identical bytes."""
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix in (".mtx", ".mm"):
        _write_matrix_market(p, a)
    elif suffix == ".csv":
        _write_csv(p, a)
    else:
        raise InputFormatError(
            f"unsupported extension {suffix!r}; expected .mtx, .mm, or .csv"
        )
