"""Mixed discriminants of Hermitian matrices and the inequalities they satisfy."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError
from .gaps import Gap
from .linalg import hermitian

MAX_N = 7
IMAG_RTOL = 1e-10


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    p = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    p.setflags(write=False)
    return p


def mixed_discriminant(mats: Sequence) -> float:
    """``D(A1, ..., An) = (1/n!) sum_sigma det[A_sigma(1)[:, 0], ..., A_sigma(n)[:, n-1]]``.

    Every permutation contributes the determinant of the matrix whose j-th
    column is the j-th column of ``A_sigma(j)``.  The result is real for
    Hermitian arguments; an imaginary part above ``1e-10`` times the largest
    term signals non-Hermitian input and is an error.
    """
    stack = np.asarray([hermitian(m) for m in mats])
    if stack.ndim != 3:
        raise DomainError("expected a list of square matrices")
    n = stack.shape[-1]
    if len(stack) != n:
        raise DomainError(f"need exactly n={n} matrices, got {len(stack)}")
    if n > MAX_N:
        raise ResourceLimitError(f"n={n} exceeds the mixed discriminant cap {MAX_N}")
    perms = _permutations(n)
    cols = np.arange(n)
    # advanced indices first: shape (n!, column j, row i) -> transpose to (n!, i, j)
    mixed = stack[perms, :, cols[None, :]].transpose(0, 2, 1)
    dets = np.linalg.det(mixed)
    re = math.fsum(dets.real.tolist()) / factorial(n)
    im = math.fsum(dets.imag.tolist()) / factorial(n)
    scale = max(float(np.max(np.abs(dets))), 1.0)
    if abs(im) > IMAG_RTOL * scale:
        raise DomainError(f"mixed discriminant has imaginary part {im:.3e}")
    return re


def repeated(*groups) -> list:
    """Expand ``(matrix, count)`` pairs into the argument list of :func:`mixed_discriminant`."""
    out = []
    for m, count in groups:
        out.extend([m] * count)
    return out


def trace_k_from_mixed(a, k: int) -> float:
    """``C(n, k) * D(A x k, I x (n-k))``, an independent route to ``trace_k(A)``."""
    a = hermitian(a)
    n = a.shape[0]
    if not 1 <= k <= n:
        raise DomainError(f"order k={k} out of range for dimension n={n}")
    eye = np.eye(n, dtype=complex)
    return comb(n, k) * mixed_discriminant(repeated((a, k), (eye, n - k)))


def af_gap(a, b, rest: Sequence) -> Gap:
    """Alexandrov-Fenchel gap ``D(A,B,R)^2 - D(A,A,R) D(B,B,R)``.

    Nonnegative for PD ``A`` and PD companions ``R``, with ``B`` any Hermitian
    matrix; zero when ``B`` is a real multiple of ``A``.
    """
    rest = list(rest)
    dab = mixed_discriminant([a, b] + rest)
    daa = mixed_discriminant([a, a] + rest)
    dbb = mixed_discriminant([b, b] + rest)
    lhs = dab * dab
    rhs = daa * dbb
    return Gap.between(rhs, lhs)
