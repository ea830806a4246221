"""Text formats for spectra records and matrices.

Both formats are line-oriented and lossless: numbers are written with 17
significant digits so complex doubles survive a round trip, and parse errors
carry line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

MATRIX_MAGIC = "polarbounds-matrix 1"


class SpectraParseError(ValueError):
    """Malformed spectra file; message carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class SpectraRecord:
    id: str
    sigma: List[float] = field(default_factory=list)
    sigma_tilde: List[float] = field(default_factory=list)
    eigen: Optional[List[complex]] = None
    eigen_hat: Optional[List[complex]] = None


def parse_spectra_text(text: str) -> List[SpectraRecord]:
    """Parse records of the form::

        record <id>
        sigma 8.7559 6.1282 5.0602
        sigma_tilde 7.3693 5.7829 3.2958 2.5156
        eigen 1 -1j          # optional, complex tokens
        eigen_hat -1 -1      # optional

    A record runs until the next ``record`` line. Blank lines and ``#``
    comments are ignored.
    """
    records: List[SpectraRecord] = []
    current: Optional[SpectraRecord] = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key, rest = tokens[0], tokens[1:]
        if key == "record":
            if len(rest) != 1:
                raise SpectraParseError(line_no, "record needs exactly one id")
            current = SpectraRecord(id=rest[0])
            records.append(current)
            continue
        if current is None:
            raise SpectraParseError(line_no, f"field {key!r} before any record")
        if key in ("sigma", "sigma_tilde"):
            try:
                values = [float(tok) for tok in rest]
            except ValueError as exc:
                raise SpectraParseError(line_no, f"bad number in {key}: {exc}") from exc
            if not values:
                raise SpectraParseError(line_no, f"{key} needs at least one value")
            setattr(current, key, values)
        elif key in ("eigen", "eigen_hat"):
            try:
                values = [complex(tok) for tok in rest]
            except ValueError as exc:
                raise SpectraParseError(line_no, f"bad complex token in {key}: {exc}") from exc
            if not values:
                raise SpectraParseError(line_no, f"{key} needs at least one value")
            setattr(current, "eigen" if key == "eigen" else "eigen_hat", values)
        else:
            raise SpectraParseError(line_no, f"unknown field {key!r}")
    for rec in records:
        if not rec.sigma or not rec.sigma_tilde:
            raise SpectraParseError(0, f"record {rec.id!r} missing sigma or sigma_tilde")
        if (rec.eigen is None) != (rec.eigen_hat is None):
            raise SpectraParseError(0, f"record {rec.id!r} has only one eigen list")
    return records


def format_spectra(records: List[SpectraRecord]) -> str:
    lines = []
    for rec in records:
        lines.append(f"record {rec.id}")
        lines.append("sigma " + " ".join(f"{v:.17g}" for v in rec.sigma))
        lines.append("sigma_tilde " + " ".join(f"{v:.17g}" for v in rec.sigma_tilde))
        if rec.eigen is not None:
            lines.append("eigen " + " ".join(_format_complex(z) for z in rec.eigen))
            lines.append("eigen_hat " + " ".join(_format_complex(z) for z in rec.eigen_hat))
    return "\n".join(lines) + "\n"


def _format_complex(z: complex) -> str:
    return f"({z.real:.17g}{z.imag:+.17g}j)"


def write_matrix_text(a: np.ndarray) -> str:
    """Header plus row-major re/im pairs at 17 significant digits."""
    a = np.asarray(a, dtype=complex)
    m, n = a.shape
    lines = [MATRIX_MAGIC, f"{m} {n} complex"]
    for i in range(m):
        lines.append(" ".join(f"{a[i, j].real:.17g} {a[i, j].imag:.17g}"
                              for j in range(n)))
    return "\n".join(lines) + "\n"


def read_matrix_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != MATRIX_MAGIC:
        raise ValueError("not a matrix file (bad magic line)")
    header = lines[1].split()
    if len(header) != 3 or header[2] != "complex":
        raise ValueError(f"bad matrix header: {lines[1]!r}")
    m, n = int(header[0]), int(header[1])
    if len(lines) != 2 + m:
        raise ValueError(f"expected {m} data rows, found {len(lines) - 2}")
    out = np.zeros((m, n), dtype=complex)
    for i in range(m):
        toks = lines[2 + i].split()
        if len(toks) != 2 * n:
            raise ValueError(f"row {i}: expected {2 * n} numbers, found {len(toks)}")
        for j in range(n):
            out[i, j] = complex(float(toks[2 * j]), float(toks[2 * j + 1]))
    return out
