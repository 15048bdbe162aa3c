"""k-traces: elementary symmetric functions of the spectrum.

``trace_k(A, k)`` is the k-th elementary symmetric polynomial of the
eigenvalues of ``A``.  Three independent routes are provided:

* ``eigen``    e_k of the eigenvalues (the default, O(n^3)),
* ``minors``   sum of all k x k principal minors,
* ``compound`` trace of the k-th compound matrix.

``phi(A, k) = trace_k(A) ** (1/k)`` is the concave, order-one homogeneous
version used by every inequality in :mod:`ktrace.verify`.
"""

from __future__ import annotations

import math
from math import comb

import numpy as np

from .errors import DomainError, ResourceLimitError
from .exterior import compound, k_subsets
from .linalg import clip_psd, eigh, hermitian, singular_values

MINORS_CAP = 10**6
_MINOR_CHUNK = 1 << 15

METHODS = ("eigen", "minors", "compound")


def _check_order(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise DomainError(f"order k={k} out of range for dimension n={n}")


def elementary_symmetric(values, k: int):
    """k-th elementary symmetric polynomial of the last axis of ``values``.

    Uses the recurrence ``E[j][i] = E[j][i-1] + v_i * E[j-1][i-1]``, which
    never subtracts and so stays accurate for nonnegative inputs.
    """
    v = np.asarray(values)
    n = v.shape[-1]
    _check_order(n, k)
    e = np.zeros(v.shape[:-1] + (k + 1,), dtype=np.result_type(v, float))
    e[..., 0] = 1.0
    for i in range(n):
        e[..., 1:] = e[..., 1:] + v[..., i, None] * e[..., :-1]
    out = e[..., k]
    return out.item() if out.ndim == 0 else out


def log_elementary_symmetric(log_values, k: int):
    """``log e_k(exp(log_values))`` for nonnegative values given by their logs.

    Factors out the largest value so that e.g. ``e_k(exp(lam))`` can be taken
    for spectra far outside the range of ``exp``.
    """
    lv = np.asarray(log_values, dtype=float)
    top = np.max(lv, axis=-1, keepdims=True)
    finite_top = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(divide="ignore"):
        scaled = elementary_symmetric(np.exp(lv - finite_top), k)
        out = k * finite_top[..., 0] + np.log(scaled)
    out = np.where(np.isneginf(top[..., 0]), -np.inf, out)
    return out.item() if np.ndim(out) == 0 else out


def trace_k(a, k: int) -> float:
    """k-trace of a Hermitian matrix from its eigenvalues."""
    h = hermitian(a)
    _check_order(h.shape[-1], k)
    return float(elementary_symmetric(np.linalg.eigvalsh(h), k))


def _principal_minor_sum(x: np.ndarray, k: int) -> complex:
    n = x.shape[-1]
    _check_order(n, k)
    count = comb(n, k)
    if count > MINORS_CAP:
        raise ResourceLimitError(f"C({n},{k}) = {count} principal minors exceeds cap {MINORS_CAP}")
    idx = k_subsets(n, k)
    re, im = [], []
    for start in range(0, count, _MINOR_CHUNK):
        block = idx[start:start + _MINOR_CHUNK]
        dets = np.linalg.det(x[block[:, :, None], block[:, None, :]])
        re.extend(dets.real.tolist())
        im.extend(dets.imag.tolist())
    # fsum is exactly rounded, so the value does not depend on summation order
    return complex(math.fsum(re), math.fsum(im))


def trace_k_minors(a, k: int) -> float:
    """k-trace of a Hermitian matrix as the sum of its principal k x k minors."""
    return _principal_minor_sum(hermitian(a), k).real


def trace_k_compound(a, k: int) -> float:
    """k-trace of a Hermitian matrix as the trace of its k-th compound."""
    c = compound(hermitian(a), k)
    return math.fsum(np.diag(c).real.tolist())


def trace_k_general(x, k: int, method: str = "minors") -> complex:
    """k-trace of an arbitrary square matrix (e.g. a product ``A @ B``).

    No non-Hermitian eigensolver is involved: ``minors`` sums principal
    minors and ``compound`` takes the trace of the compound matrix.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {x.shape}")
    if method == "minors":
        return _principal_minor_sum(x, k)
    if method == "compound":
        d = np.diag(compound(x, k))
        return complex(math.fsum(d.real.tolist()), math.fsum(d.imag.tolist()))
    raise ValueError(f"unknown method {method!r}")


def ktrace(a, k: int, method: str = "eigen") -> float:
    """Dispatch to one of the three k-trace routes."""
    if method == "eigen":
        return trace_k(a, k)
    if method == "minors":
        return trace_k_minors(a, k)
    if method == "compound":
        return trace_k_compound(a, k)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def phi_from_eigenvalues(w, k: int):
    """``e_k(w) ** (1/k)`` for PSD spectra ``w`` (clipping applied, batched)."""
    w = clip_psd(np.sort(np.asarray(w, dtype=float), axis=-1)[..., ::-1])
    e = np.maximum(elementary_symmetric(w, k), 0.0)
    return e ** (1.0 / k)


def phi(a, k: int) -> float:
    """``trace_k(A) ** (1/k)`` for PSD ``A``; zero when rank(A) < k."""
    w = eigh(a).eigenvalues
    _check_order(w.shape[-1], k)
    return float(phi_from_eigenvalues(w, k))


def log_trace_k_exp(a, k: int):
    """``log trace_k(exp(A))`` for Hermitian ``A``, computed without overflow."""
    h = hermitian(a)
    return log_elementary_symmetric(np.linalg.eigvalsh(h), k)


def _log_singular_values(x):
    s = singular_values(x)
    with np.errstate(divide="ignore"):
        return np.log(s)


def phi_abs_power(x, p: float, k: int):
    """``phi(|X|**p)`` for square (or stacked square) ``X`` and finite ``p > 0``."""
    return np.exp(log_phi_abs_power(x, p, k))


def log_phi_abs_power(x, p: float, k: int):
    """``log phi(|X|**p) = log(e_k(sigma**p)) / k`` from the singular values of ``X``."""
    if not (p > 0 and np.isfinite(p)):
        raise DomainError(f"power must be finite and positive, got {p}")
    ls = _log_singular_values(x)
    _check_order(ls.shape[-1], k)
    return log_elementary_symmetric(p * ls, k) / k


def log_kschatten(x, p: float, k: int):
    """``log(trace_k(|X|**p) ** (1/(k p)))``.

    For ``p = inf`` this is the limit ``mean(log sigma_1..sigma_k)``, i.e. the
    log of the k-th root of the product of the k largest singular values.
    """
    if np.isinf(p):
        ls = _log_singular_values(x)
        _check_order(ls.shape[-1], k)
        return np.sum(ls[..., :k], axis=-1) / k
    return log_phi_abs_power(x, p, k) / p


def kschatten(x, p: float, k: int):
    """``trace_k(|X|**p) ** (1/p)``; the p = inf case is sigma_1 * ... * sigma_k."""
    return np.exp(k * log_kschatten(x, p, k))
