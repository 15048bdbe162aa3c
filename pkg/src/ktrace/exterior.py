"""Operators on the k-th exterior power of C^n, written in the k-subset basis.

The basis vector ``e_{i1} ^ ... ^ e_{ik}`` with ``i1 < ... < ik`` is identified
with the strictly increasing tuple ``(i1, ..., ik)``; tuples are ordered
lexicographically (the order of :func:`itertools.combinations`).  Indices are
0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

COMPOUND_CAP = 10**4
MIXED_EXTERIOR_MAX_K = 6
_ENTRY_BUDGET = 1 << 22


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> np.ndarray:
    arr = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp).reshape(comb(n, k), k)
    arr.setflags(write=False)
    return arr


def k_subsets(n: int, k: int) -> np.ndarray:
    """All strictly increasing k-tuples of ``range(n)`` in lexicographic order."""
    if not 0 <= k <= n:
        raise DomainError(f"order k={k} out of range for dimension n={n}")
    return _subsets(n, k)


@lru_cache(maxsize=None)
def _subset_index(n: int, k: int) -> dict:
    return {tuple(s): i for i, s in enumerate(_subsets(n, k).tolist())}


@dataclass(frozen=True)
class KSubsetBasis:
    n: int
    k: int

    @property
    def subsets(self) -> np.ndarray:
        return k_subsets(self.n, self.k)

    def __len__(self) -> int:
        return comb(self.n, self.k)

    def index(self, subset: Sequence[int]) -> int:
        return _subset_index(self.n, self.k)[tuple(subset)]


def _check(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise DomainError(f"order k={k} out of range for dimension n={n}")
    size = comb(n, k)
    if size > COMPOUND_CAP:
        raise ResourceLimitError(f"C({n},{k}) = {size} exceeds the compound size cap {COMPOUND_CAP}")
    return size


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    return a


def compound(a, k: int) -> np.ndarray:
    """k-th compound matrix: entry (I, J) is the minor ``det A[I, J]``."""
    a = _square(a)
    n = a.shape[0]
    size = _check(n, k)
    s = k_subsets(n, k)
    out = np.empty((size, size), dtype=complex)
    rows_per_block = max(1, _ENTRY_BUDGET // (size * k * k))
    for start in range(0, size, rows_per_block):
        rows = s[start:start + rows_per_block]
        sub = a[rows[:, None, :, None], s[None, :, None, :]]
        out[start:start + len(rows)] = np.linalg.det(sub)
    return out


def _sort_with_parity(seq):
    """Sort ``seq`` and return (sorted tuple, +1/-1 parity of the sorting permutation)."""
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return tuple(sorted(seq)), (-1) ** inversions


def additive_compound(a, k: int) -> np.ndarray:
    """Matrix of ``v1^...^vk -> sum_j v1^...^(A vj)^...^vk`` in the k-subset basis.

    Equal to ``mixed_exterior([A, I, ..., I], k) / (k-1)!``; its exponential is
    the compound of ``exp(A)``.
    """
    a = _square(a)
    n = a.shape[0]
    size = _check(n, k)
    basis = KSubsetBasis(n, k)
    out = np.zeros((size, size), dtype=complex)
    for col, subset in enumerate(basis.subsets.tolist()):
        members = set(subset)
        for pos, j in enumerate(subset):
            for l in range(n):
                coef = a[l, j]
                if coef == 0:
                    continue
                if l != j and l in members:
                    continue  # repeated wedge factor vanishes
                replaced = list(subset)
                replaced[pos] = l
                target, sign = _sort_with_parity(replaced)
                out[basis.index(target), col] += sign * coef
    return out


def mixed_exterior(mats: Sequence, k: int | None = None) -> np.ndarray:
    """Symmetrized wedge operator ``M(A1, ..., Ak)``.

    Acts as ``v1^...^vk -> sum_sigma A_sigma(1) v1 ^ ... ^ A_sigma(k) vk``.
    Entry (I, J) for a fixed permutation is the determinant of the k x k
    matrix whose column c is column ``J[c]`` of ``A_sigma(c)`` restricted to
    rows ``I``.
    """
    stack = np.asarray([_square(m) for m in mats])
    if k is None:
        k = len(stack)
    if len(stack) != k:
        raise DomainError(f"expected {k} matrices, got {len(stack)}")
    if k > MIXED_EXTERIOR_MAX_K:
        raise ResourceLimitError(f"k={k} exceeds the mixed exterior cap {MIXED_EXTERIOR_MAX_K}")
    n = stack.shape[-1]
    size = _check(n, k)
    s = k_subsets(n, k)
    cols = np.arange(k)
    out = np.zeros((size, size), dtype=complex)
    for perm in itertools.permutations(range(k)):
        b = stack[list(perm)]
        sub = b[cols[None, None, None, :], s[:, None, :, None], s[None, :, None, :]]
        out += np.linalg.det(sub)
    return out


def compound_via_mixed(a, k: int) -> np.ndarray:
    """``mixed_exterior([A]*k) / k!``; an independent route to :func:`compound`."""
    return mixed_exterior([a] * k, k) / factorial(k)
