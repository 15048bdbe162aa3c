"""Dense Hermitian linear algebra: spectral calculus, powers, norms, Loewner order.

Matrices are plain ``numpy`` complex arrays.  Hermitian inputs are symmetrized
on entry with :func:`hermitian`, so every function here can be fed the output
of a floating point product without first cleaning it up.

Tolerance conventions used throughout the package:

* PSD clipping: eigenvalues in ``[-1e-10 * lam_max, 0)`` are set to zero before
  fractional powers; anything more negative is a :class:`DomainError`.
* PD predicate: ``lam_min > 1e-12 * max(lam_max, 1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError

PSD_CLIP_RTOL = 1e-10
PD_RTOL = 1e-12
MAX_DIM = 64

JACOBI_MAX_SWEEPS = 30
JACOBI_RTOL = 1e-14


def hermitian(m) -> np.ndarray:
    """Return ``(M + M*)/2`` as a complex array with an exactly real diagonal."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    h = 0.5 * (a + np.swapaxes(a.conj(), -1, -2))
    idx = np.arange(a.shape[-1])
    h[..., idx, idx] = h[..., idx, idx].real
    return h


def dagger(x: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.conj(x), -1, -2)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectrum sorted in descending order plus the matching unitary eigenbasis."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[-1]

    def apply(self, values) -> np.ndarray:
        """Assemble ``U diag(values) U*``.

        ``values`` may carry extra leading axes; the result then has shape
        ``values.shape[:-1] + (n, n)``.  This is what makes it cheap to
        evaluate ``A**z`` at every quadrature node at once.
        """
        v = np.asarray(values)
        u = self.eigenvectors
        return (u * v[..., None, :]) @ dagger(u)

    def reconstruct(self) -> np.ndarray:
        return self.apply(self.eigenvalues)

    def clipped(self) -> np.ndarray:
        """Eigenvalues with the PSD clipping rule applied."""
        return clip_psd(self.eigenvalues)

    def require_pd(self, what: str = "matrix") -> None:
        w = self.eigenvalues
        lam_max, lam_min = w[..., 0], w[..., -1]
        bad = lam_min <= PD_RTOL * np.maximum(lam_max, 1.0)
        if np.any(bad):
            raise DomainError(
                f"{what} is not positive definite (smallest eigenvalue {np.min(lam_min):.3e})"
            )


def _sorted_desc(w, v):
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, v


def eigh(a, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (or a stack of them).

    ``method="lapack"`` calls ``numpy.linalg.eigh``; ``method="jacobi"`` runs the
    self-contained cyclic Jacobi solver in :func:`jacobi_eigh`.
    """
    h = hermitian(a)
    if h.shape[-1] > MAX_DIM:
        raise DomainError(f"dimension {h.shape[-1]} exceeds the supported maximum {MAX_DIM}")
    if method == "jacobi":
        if h.ndim != 2:
            raise DomainError("the Jacobi solver does not take stacked input")
        return jacobi_eigh(h)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, v = np.linalg.eigh(h)
    w, v = _sorted_desc(w, v)
    return EigenDecomposition(w, v)


def jacobi_eigh(
    a, max_sweeps: int = JACOBI_MAX_SWEEPS, rtol: float = JACOBI_RTOL
) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver with complex plane rotations.

    Sweeps the upper triangle row by row, annihilating each off-diagonal
    entry with a unitary rotation.  Stops once the off-diagonal Frobenius
    norm drops below ``rtol * ||A||_F``; raises :class:`ConvergenceError` if
    that has not happened after ``max_sweeps`` sweeps.
    """
    h = hermitian(a).copy()
    n = h.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = rtol * np.linalg.norm(h)

    def off_norm(m):
        return np.linalg.norm(m - np.diag(np.diag(m)))

    for _ in range(max_sweeps):
        if off_norm(h) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (h[q, q].real - h[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # columns p, q of J: [c, -s conj(phase)]^T and [s phase, c]^T
                cp = h[:, p].copy()
                cq = h[:, q].copy()
                h[:, p] = c * cp - s * np.conj(phase) * cq
                h[:, q] = s * phase * cp + c * cq
                rp = h[p, :].copy()
                rq = h[q, :].copy()
                h[p, :] = c * rp - s * phase * rq
                h[q, :] = s * np.conj(phase) * rp + c * rq
                h[p, q] = 0.0
                h[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    else:
        if off_norm(h) > threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w, v = _sorted_desc(np.real(np.diag(h)).copy(), v)
    return EigenDecomposition(w, v)


def clip_psd(w) -> np.ndarray:
    """Apply the PSD clipping rule to descending eigenvalues ``w``."""
    w = np.asarray(w, dtype=float)
    lam_max = np.maximum(w[..., :1], 0.0)
    floor = -PSD_CLIP_RTOL * lam_max
    if np.any(w < floor):
        raise DomainError(
            f"matrix is not positive semidefinite (eigenvalue {np.min(w):.6e} "
            f"below clipping floor {np.min(floor):.3e})"
        )
    return np.where(w < 0.0, 0.0, w)


def is_psd(a) -> bool:
    try:
        clip_psd(eigh(a).eigenvalues)
    except DomainError:
        return False
    return True


def is_pd(a) -> bool:
    w = eigh(a).eigenvalues
    return bool(np.all(w[..., -1] > PD_RTOL * np.maximum(w[..., 0], 1.0)))


def matrix_function(a, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral extension ``sum_i f(lam_i) u_i u_i*`` of a real scalar map."""
    dec = eigh(a)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(dec.eigenvalues), dtype=float)
    if not np.all(np.isfinite(fw)):
        bad = dec.eigenvalues[~np.isfinite(fw)]
        raise DomainError(f"function is undefined at eigenvalue {bad.flat[0]!r}")
    return dec.apply(fw)


def _power_values(w, p):
    if p == 0:
        return np.ones_like(w)
    with np.errstate(divide="ignore"):
        return np.where(w > 0.0, np.power(np.where(w > 0.0, w, 1.0), p), 0.0)


def matrix_power(a, p: float) -> np.ndarray:
    """Real power of a PSD matrix with ``0**p = 0`` for ``p > 0`` and ``0**0 = 1``."""
    dec = eigh(a)
    if p < 0:
        dec.require_pd("matrix raised to a negative power")
    w = dec.clipped()
    return dec.apply(_power_values(w, p))


def complex_power(a, z) -> np.ndarray:
    """``A**z = U diag(lam**z) U*`` for PD ``A`` and complex ``z``.

    ``z`` may be a scalar or a 1-D array; in the latter case the result is a
    stack with one matrix per entry of ``z``.
    """
    dec = a if isinstance(a, EigenDecomposition) else eigh(a)
    dec.require_pd("matrix raised to a complex power")
    logw = np.log(dec.eigenvalues)
    z = np.asarray(z, dtype=complex)
    return dec.apply(np.exp(z[..., None] * logw))


def unitary_power(a, t) -> np.ndarray:
    """``A**(i t)`` for PD ``A``; unitary for every real ``t``."""
    return complex_power(a, 1j * np.asarray(t, dtype=float))


def matrix_exp(a) -> np.ndarray:
    dec = eigh(a)
    return dec.apply(np.exp(dec.eigenvalues))


def matrix_log(a) -> np.ndarray:
    dec = eigh(a)
    dec.require_pd("matrix logarithm argument")
    return dec.apply(np.log(dec.eigenvalues))


def abs_matrix(x) -> np.ndarray:
    """``|X| = (X* X)^(1/2)`` for a square matrix ``X``."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {x.shape}")
    return matrix_power(dagger(x) @ x, 0.5)


def singular_values(x) -> np.ndarray:
    """Singular values in descending order (batched over leading axes)."""
    return np.linalg.svd(np.asarray(x, dtype=complex), compute_uv=False)


def schatten_norm(x, p: float) -> float:
    """Schatten ``p``-norm, ``trace(|X|^p)^(1/p)``; ``p = inf`` is the spectral norm."""
    if not p >= 1:
        raise DomainError(f"Schatten norm needs p >= 1 or p = inf, got {p}")
    s = singular_values(x)
    if np.isinf(p):
        return float(s[0]) if s.size else 0.0
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return 0.0
    return float(smax * np.sum((s / smax) ** p) ** (1.0 / p))


class Loewner(enum.Enum):
    GEQ = "GEQ"
    LEQ = "LEQ"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


def loewner_cmp(a, b, tol: float = 1e-10) -> Loewner:
    """Classify ``A - B`` in the Loewner order.

    The extreme eigenvalues of ``A - B`` are compared against
    ``+-tol * max(||A||, ||B||, 1)``.
    """
    a = hermitian(a)
    b = hermitian(b)
    if a.shape != b.shape:
        raise DomainError(f"shape mismatch {a.shape} vs {b.shape}")
    scale = max(schatten_norm(a, np.inf), schatten_norm(b, np.inf), 1.0)
    w = np.linalg.eigvalsh(hermitian(a - b))
    lo, hi = w[0], w[-1]
    eps = tol * scale
    if lo >= -eps and hi <= eps:
        return Loewner.EQUAL
    if lo >= -eps:
        return Loewner.GEQ
    if hi <= eps:
        return Loewner.LEQ
    return Loewner.INCOMPARABLE
