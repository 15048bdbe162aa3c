"""Matrix JSON format: ``{"n": n, "entries": [[re, im], ...]}`` with n*n row-major pairs."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DomainError


class MatrixFormatError(DomainError):
    """A matrix file does not follow the JSON format."""


def matrix_from_json(data) -> np.ndarray:
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise MatrixFormatError('expected an object with keys "n" and "entries"')
    n = data["n"]
    entries = data["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(entries, list) or len(entries) != n * n:
        raise MatrixFormatError(f'"entries" must hold n*n = {n * n} [re, im] pairs')
    values = []
    for i, pair in enumerate(entries):
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        )
        if not ok or not all(math.isfinite(x) for x in pair):
            raise MatrixFormatError(f"entry {i} is not a finite [re, im] pair: {pair!r}")
        values.append(complex(pair[0], pair[1]))
    return np.array(values, dtype=complex).reshape(n, n)


def read_matrix(path) -> np.ndarray:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: not valid JSON ({exc})") from None
    return matrix_from_json(data)


def _num(x: float) -> str:
    text = format(float(x), ".17g")
    # "-0" would parse back as the integer 0 and lose the sign
    return text if ("." in text or "e" in text) else text + ".0"


def matrix_to_json(a) -> str:
    """Serialize with 17 significant digits so every double round-trips exactly."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    pairs = ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in a.ravel())
    return f'{{"n": {a.shape[0]}, "entries": [{pairs}]}}'


def write_matrix(path, a) -> None:
    Path(path).write_text(matrix_to_json(a) + "\n")
