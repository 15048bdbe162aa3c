"""Seeded random matrices for the verification suites.

Every trial draws from its own counter-based Philox stream keyed by
``(master seed, case id, trial index)``, so a trial can be replayed in
isolation and the suite gives the same numbers under any thread count.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..linalg import hermitian, schatten_norm

RANK_DEFICIENT_FRACTION = 0.1
HERMITIAN_NORM_CAP = 5.0
DEFAULT_TAU_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
MAX_SUITE_DIM = 8


@dataclass(frozen=True)
class TrialConfig:
    """Parameters shared by every case in one verification run.

    ``m`` is the second dimension used by cases with a rectangular
    coupling matrix (defaults to ``n``).  ``tol_rel=None`` means each case
    uses its own default tolerance.  ``quad_refinement`` doubles the
    quadrature nodes per panel that many times in the interpolation cases.
    """

    n: int = 4
    k: int = 2
    m: int | None = None
    trials: int = 100
    seed: int = 42
    tau_grid: tuple = DEFAULT_TAU_GRID
    cond_cap: float = 1e4
    tol_rel: float | None = None
    threads: int = 1
    fail_fast: bool = False
    quad_refinement: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tau_grid", tuple(float(t) for t in self.tau_grid))
        if not 1 <= self.n <= MAX_SUITE_DIM:
            raise DomainError(f"n={self.n} outside the supported range 1..{MAX_SUITE_DIM}")
        if not 1 <= self.k <= self.n:
            raise DomainError(f"k={self.k} must satisfy 1 <= k <= n={self.n}")
        if self.m is not None and not 1 <= self.m <= MAX_SUITE_DIM:
            raise DomainError(f"m={self.m} outside the supported range 1..{MAX_SUITE_DIM}")
        if self.trials < 0:
            raise DomainError("trials must be nonnegative")
        if not self.tau_grid or not all(0.0 < t < 1.0 for t in self.tau_grid):
            raise DomainError("tau grid must be a nonempty subset of (0, 1)")
        if not self.cond_cap >= 1.0:
            raise DomainError("cond_cap must be at least 1")
        if self.tol_rel is not None and not self.tol_rel >= 0.0:
            raise DomainError("tolerance must be nonnegative")
        if self.threads < 1:
            raise DomainError("threads must be at least 1")
        if self.quad_refinement < 0:
            raise DomainError("quad_refinement must be nonnegative")

    @property
    def cols(self) -> int:
        return self.n if self.m is None else self.m


def case_key(case_id: str) -> int:
    """Stable 32-bit key of a case id (independent of ``PYTHONHASHSEED``)."""
    return zlib.crc32(case_id.encode("utf-8"))


def trial_rng(seed: int, case_id: str, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed, case_key(case_id), trial])
    return np.random.Generator(np.random.Philox(ss))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    """Entries with independent real and imaginary parts of variance 1/2."""
    cols = rows if cols is None else cols
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def _rebuild(u, w):
    return hermitian((u * w[None, :]) @ u.conj().T)


def random_psd(rng: np.random.Generator, n: int, rank_deficient: bool | None = None) -> np.ndarray:
    """``G G* / n``; with probability 0.1 the smallest eigenvalue is set to exactly 0."""
    g = complex_gaussian(rng, n)
    a = hermitian(g @ g.conj().T / n)
    if rank_deficient is None:
        rank_deficient = rng.random() < RANK_DEFICIENT_FRACTION
    if rank_deficient:
        w, u = np.linalg.eigh(a)
        w[0] = 0.0
        a = _rebuild(u, w)
    return a


def random_pd(rng: np.random.Generator, n: int, cond_cap: float = 1e4) -> np.ndarray:
    """``G G* / n`` with the spectrum lifted to at least ``lam_max / cond_cap``."""
    g = complex_gaussian(rng, n)
    w, u = np.linalg.eigh(hermitian(g @ g.conj().T / n))
    w = np.maximum(w, w[-1] / cond_cap)
    return _rebuild(u, w)


def random_hermitian(rng: np.random.Generator, n: int, norm_cap: float = HERMITIAN_NORM_CAP) -> np.ndarray:
    """``(G + G*)/2`` rescaled so its spectral norm is at most ``norm_cap``."""
    h = hermitian(complex_gaussian(rng, n))
    norm = schatten_norm(h, np.inf)
    if norm > norm_cap:
        h = h * (norm_cap / norm)
    return h


def random_contraction(
    rng: np.random.Generator, n: int, m: int | None = None, smin: float = 0.0
) -> np.ndarray:
    """``U diag(s) V`` with Haar ``U``, ``V`` and singular values uniform in ``[smin, 1]``."""
    m = n if m is None else m
    r = min(n, m)
    s = rng.uniform(smin, 1.0, size=r)
    u = haar_unitary(rng, n)[:, :r]
    v = haar_unitary(rng, m)[:r, :]
    return (u * s[None, :]) @ v


def random_square(rng: np.random.Generator, n: int) -> np.ndarray:
    return complex_gaussian(rng, n)


def commuting_pair(rng: np.random.Generator, n: int, norm_cap: float = HERMITIAN_NORM_CAP):
    """Two Hermitian matrices diagonal in one shared random eigenbasis."""
    u = haar_unitary(rng, n)
    a = rng.uniform(-norm_cap, norm_cap, size=n)
    b = rng.uniform(-norm_cap, norm_cap, size=n)
    return _rebuild(u, a), _rebuild(u, b)


def psd_increment_pair(rng: np.random.Generator, n: int):
    """``(A, B)`` with ``A = B + D`` for independent PSD ``B`` and ``D``, so ``A >= B``."""
    b = random_psd(rng, n)
    d = random_psd(rng, n)
    return hermitian(b + d), b

