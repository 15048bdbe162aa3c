"""Boundary-line interpolation bounds for k-traces of holomorphic matrix families.

A holomorphic family ``G(z)`` on the strip ``0 <= Re z <= 1`` is evaluated only
on the two boundary lines ``z = i t`` and ``z = 1 + i t`` and at the interior
real point ``theta``.  The boundary integrals are weighted by the densities

    beta_theta(t) = sin(pi theta) / (2 theta (cosh(pi t) + cos(pi theta)))

and approximated by a fixed composite Gauss-Legendre rule (see
:func:`default_rule`).  Every gap function returns a :class:`~ktrace.gaps.Gap`
whose value is nonnegative exactly when the bound holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError, QuadratureError, UnsupportedDistributionError
from .gaps import Gap
from .linalg import EigenDecomposition, dagger, eigh, hermitian, matrix_exp, matrix_power
from .traces import (
    log_elementary_symmetric,
    log_kschatten,
    log_phi_abs_power,
    phi_from_eigenvalues,
)

TRUNCATION = 12.0
PANEL_ORDER = 16
GRADING_LEVELS = 9


# ---------------------------------------------------------------- densities


def beta_density(theta: float, t):
    """The density ``beta_theta(t)``; ``theta = 0`` uses its limit ``pi / (2 (cosh(pi t) + 1))``."""
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    if theta == 1.0:
        raise UnsupportedDistributionError("beta_1 is a point mass at t = 0 and has no density")
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        ch = np.cosh(np.pi * t)
        if theta == 0.0:
            out = np.pi / (2.0 * (ch + 1.0))
        else:
            out = np.sin(np.pi * theta) / (2.0 * theta * (ch + np.cos(np.pi * theta)))
    return out.item() if out.ndim == 0 else out


def beta_fourier(theta: float, omega):
    """Closed form of ``int beta_theta(t) cos(omega t) dt``: ``sinh(theta w) / (theta sinh w)``."""
    w = np.asarray(omega, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        if theta == 0.0:
            out = np.where(w == 0.0, 1.0, w / np.sinh(w))
        else:
            out = np.where(w == 0.0, 1.0, np.sinh(theta * w) / (theta * np.sinh(w)))
    return out.item() if out.ndim == 0 else out


# ---------------------------------------------------------------- quadrature


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule on ``[-truncation, truncation]``.

    ``breakpoints`` are the panel edges; every panel carries ``order`` nodes.
    """

    breakpoints: np.ndarray
    order: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        if bp.ndim != 1 or len(bp) < 2 or np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        x, w = leggauss(self.order)
        half = 0.5 * np.diff(bp)
        mid = 0.5 * (bp[1:] + bp[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        for name, arr in (("breakpoints", bp), ("nodes", nodes), ("weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def truncation(self) -> float:
        return float(max(-self.breakpoints[0], self.breakpoints[-1]))

    @property
    def panels(self) -> int:
        return len(self.breakpoints) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def refined(self) -> "QuadratureRule":
        """Same panels, twice the nodes per panel."""
        return QuadratureRule(self.breakpoints, 2 * self.order)

    def weighted(self, theta: float) -> np.ndarray:
        """Weights multiplied by ``beta_theta`` at the nodes."""
        return self.weights * beta_density(theta, self.nodes)


def default_breakpoints(
    truncation: float = TRUNCATION, grading_levels: int = GRADING_LEVELS
) -> np.ndarray:
    """Unit panels for ``|t| >= 1`` and panels halving geometrically towards 0 inside.

    ``beta_theta`` has poles at ``t = +-i (1 - theta)``, so its peak at the
    origin sharpens as theta approaches 1; geometric grading keeps every
    panel wider than that distance only by a bounded factor.
    """
    inner = [2.0**-j for j in range(grading_levels + 1)]
    outer = list(np.arange(2.0, truncation + 0.5, 1.0))
    pos = sorted(set(inner + outer))
    return np.array([-p for p in reversed(pos)] + [0.0] + pos)


@lru_cache(maxsize=8)
def rule_for(refinement: int = 0) -> QuadratureRule:
    """Default panels with ``PANEL_ORDER * 2**refinement`` nodes per panel."""
    if refinement < 0:
        raise ValueError("refinement must be nonnegative")
    return QuadratureRule(default_breakpoints(), PANEL_ORDER * 2**refinement)


def default_rule() -> QuadratureRule:
    return rule_for(0)


def _weighted_sum(weights, values) -> float:
    return math.fsum((np.asarray(weights) * np.asarray(values)).tolist())


def _require_finite(values, nodes, what):
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        t = float(np.asarray(nodes)[bad][0])
        raise QuadratureError(f"{what} is not finite at node t={t!r}", node=t)
    return values


def integrate_boundary(f: Callable, theta: float, rule: QuadratureRule | None = None) -> float:
    """``sum_i w_i beta_theta(t_i) f(t_i)``.

    ``f`` is called once with the full array of nodes and must return one
    value per node.
    """
    rule = rule or default_rule()
    values = _require_finite(f(rule.nodes), rule.nodes, "integrand")
    return _weighted_sum(rule.weighted(theta), values)


def boundary_average(f: Callable, theta: float, rule: QuadratureRule | None = None) -> float:
    """Like :func:`integrate_boundary` but treats ``theta = 1`` as evaluation at ``t = 0``."""
    if theta == 1.0:
        return float(np.asarray(f(np.zeros(1)), dtype=float)[0])
    return integrate_boundary(f, theta, rule)


def weight_identity(theta: float, p0: float, p1: float, rule: QuadratureRule | None = None) -> float:
    """``int ((1-theta) p_theta / p0) beta_{1-theta} + (theta p_theta / p1) beta_theta dt``; equals 1."""
    rule = rule or default_rule()
    pt = interpolated_exponent(theta, p0, p1)
    w0 = (1.0 - theta) * pt / p0
    w1 = theta * pt / p1
    return _weighted_sum(rule.weights, w0 * beta_density(1.0 - theta, rule.nodes)
                         + w1 * beta_density(theta, rule.nodes))


def interpolated_exponent(theta: float, p0: float, p1: float) -> float:
    """``p_theta`` from ``1/p_theta = (1-theta)/p0 + theta/p1``."""
    for p in (p0, p1):
        if not p >= 1.0:
            raise DomainError(f"exponents must lie in [1, inf], got {p}")
    inv = (1.0 - theta) / p0 + theta / p1
    return math.inf if inv == 0.0 else 1.0 / inv


# ---------------------------------------------------------------- holomorphic families


@dataclass(frozen=True)
class BoundarySampler:
    """A matrix family ``G(z)`` on the strip.

    ``evaluator`` maps a 1-D array of complex points to the stack of matrices
    ``G(z_i)``.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    descriptor: str

    def __call__(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return self.evaluator(z)


def _pd_dec(a, what) -> EigenDecomposition:
    dec = eigh(a)
    dec.require_pd(what)
    return dec


def _cpow(dec: EigenDecomposition, z) -> np.ndarray:
    """Stack of ``A**z_i`` for a PD eigendecomposition and 1-D complex ``z``."""
    return dec.apply(np.exp(np.asarray(z)[:, None] * np.log(dec.eigenvalues)[None, :]))


def constant_sampler(a) -> BoundarySampler:
    a = np.asarray(a, dtype=complex)
    return BoundarySampler(lambda z: np.broadcast_to(a, (len(z),) + a.shape), "constant")


def lieb_epstein_sampler(x, c, k_mat, r: float, s: float) -> BoundarySampler:
    """``G(z) = X^(rz/2) C^(-rz/2) Q |M|^(z/s)`` with ``M = C^(rs/2) K = Q |M|``.

    ``|G(s)|^(2/s)`` has the same spectrum as ``(K* X^(rs) K)^(1/s)``, and
    ``G(it)`` is unitary.  Needs PD ``X, C`` and invertible ``K``.
    """
    dx = _pd_dec(x, "X")
    dc = _pd_dec(c, "C")
    m = matrix_power(c, r * s / 2.0) @ np.asarray(k_mat, dtype=complex)
    dm = eigh(dagger(m) @ m)
    dm.require_pd("M* M (K must be invertible)")
    abs_m_inv = dm.apply(dm.eigenvalues ** -0.5)
    q = m @ abs_m_inv
    dabs = EigenDecomposition(np.sqrt(dm.eigenvalues), dm.eigenvectors)

    def ev(z):
        return _cpow(dx, r * z / 2.0) @ _cpow(dc, -r * z / 2.0) @ q @ _cpow(dabs, z / s)

    return BoundarySampler(ev, "lieb-epstein")


def lieb_joint_sampler(x, c, k_mat, p: float, q: float, s: float) -> BoundarySampler:
    """``G(z) = X^(rsz/2) C^(-rsz/2) M C^(-rs(1-z)/2) X^(rs(1-z)/2)``, ``M = C^(ps/2) K C^(qs/2)``.

    With ``r = p + q``, ``|G(p/r)|^(2/s)`` has the spectrum of
    ``(X^(qs/2) K* X^(ps) K X^(qs/2))^(1/s)``.
    """
    dx = _pd_dec(x, "X")
    dc = _pd_dec(c, "C")
    r = p + q
    m = matrix_power(c, p * s / 2.0) @ np.asarray(k_mat, dtype=complex) @ matrix_power(c, q * s / 2.0)
    a = r * s / 2.0

    def ev(z):
        return (_cpow(dx, a * z) @ _cpow(dc, -a * z) @ m
                @ _cpow(dc, -a * (1.0 - z)) @ _cpow(dx, a * (1.0 - z)))

    return BoundarySampler(ev, "lieb-joint")


def power_concavity_sampler(x, c, k_mat) -> BoundarySampler:
    """``G(z) = X^(z/2) C^(-z/2) K``; ``||G(r)||_2^2 = tr(K* C^(-r/2) X^r C^(-r/2) K)``."""
    dx = _pd_dec(x, "X")
    dc = _pd_dec(c, "C")
    k_mat = np.asarray(k_mat, dtype=complex)
    return BoundarySampler(lambda z: _cpow(dx, z / 2.0) @ _cpow(dc, -z / 2.0) @ k_mat,
                           "power-concavity")


def product_sampler(mats: Sequence) -> BoundarySampler:
    """``G(z) = A1^z A2^z ... Am^z`` for PD factors."""
    decs = [_pd_dec(a, f"factor {j}") for j, a in enumerate(mats)]

    def ev(z):
        out = _cpow(decs[0], z)
        for d in decs[1:]:
            out = out @ _cpow(d, z)
        return out

    return BoundarySampler(ev, "product")


# ---------------------------------------------------------------- interpolation bounds


class InterpolationChain(NamedTuple):
    """The three certified links of the interpolation bound.

    ``log_form``   log phi(|G(theta)|^pt) <= weighted boundary integral of logs
    ``linear``     phi(|G(theta)|^pt) <= weighted boundary integral of phi values
    ``jensen``     exp(log-form right side) <= linear right side
    """

    log_form: Gap
    linear: Gap
    jensen: Gap


def _boundary_logs(g: BoundarySampler, rule, p0, p1, k):
    t = rule.nodes
    g0 = g(1j * t)
    g1 = g(1.0 + 1j * t)
    f0 = _require_finite(log_kschatten(g0, p0, k), t, "log k-trace on Re z = 0")
    f1 = _require_finite(log_kschatten(g1, p1, k), t, "log k-trace on Re z = 1")
    return f0, f1


def stein_hirschman_gap(
    g: BoundarySampler, theta: float, p0: float, p1: float, k: int,
    rule: QuadratureRule | None = None,
) -> Gap:
    """Right side minus left side of the k-trace Stein-Hirschman bound.

    Left: ``log phi(|G(theta)|^pt)^(1/pt)``.  Right: the integral of
    ``beta_{1-theta}(t) (1-theta) log phi(|G(it)|^p0)^(1/p0)`` plus
    ``beta_theta(t) theta log phi(|G(1+it)|^p1)^(1/p1)``.  Infinite exponents
    use the limit ``phi(|X|^p)^(1/p) -> (sigma_1 ... sigma_k)^(1/k)``.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0, 1), got {theta}")
    rule = rule or default_rule()
    pt = interpolated_exponent(theta, p0, p1)
    lhs = float(log_kschatten(g(theta)[0], pt, k))
    f0, f1 = _boundary_logs(g, rule, p0, p1, k)
    rhs = (_weighted_sum(rule.weighted(1.0 - theta), (1.0 - theta) * f0)
           + _weighted_sum(rule.weighted(theta), theta * f1))
    return Gap.between(lhs, rhs)


def stein_hirschman_chain(
    g: BoundarySampler, theta: float, p0: float, p1: float, k: int,
    rule: QuadratureRule | None = None,
) -> InterpolationChain:
    """Log form, linear (Jensen) form and the Jensen step between them.

    ``p_theta`` must be finite.  An infinite ``p0`` (or ``p1``) makes the
    corresponding linear-form weight vanish; the limit of that term is 0 when
    ``phi(|G|^p)^(1/p)`` stays at most 1 on the boundary line and +inf
    otherwise.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0, 1), got {theta}")
    rule = rule or default_rule()
    pt = interpolated_exponent(theta, p0, p1)
    if math.isinf(pt):
        raise DomainError("the linear form needs a finite interpolated exponent")
    lhs_log = pt * float(log_kschatten(g(theta)[0], pt, k))
    f0, f1 = _boundary_logs(g, rule, p0, p1, k)
    b0 = rule.weighted(1.0 - theta)
    b1 = rule.weighted(theta)
    rhs_log = _weighted_sum(b0, (1.0 - theta) * pt * f0) + _weighted_sum(b1, theta * pt * f1)

    def linear_term(weights, logs, p, lam):
        if math.isinf(p):
            return 0.0 if np.max(logs) <= 1e-12 else math.inf
        # phi(|G|^p) = exp(p * log_kschatten)
        return _weighted_sum(weights, (lam * pt / p) * np.exp(p * logs))

    rhs_lin = linear_term(b0, f0, p0, 1.0 - theta) + linear_term(b1, f1, p1, theta)
    lhs_lin = math.exp(lhs_log)
    exp_rhs_log = math.exp(rhs_log)
    return InterpolationChain(
        log_form=Gap.between(lhs_log, rhs_log),
        linear=Gap.between(lhs_lin, rhs_lin) if math.isfinite(rhs_lin) else Gap(math.inf, 1.0),
        jensen=Gap.between(exp_rhs_log, rhs_lin) if math.isfinite(rhs_lin) else Gap(math.inf, 1.0),
    )


def sbt_gap(mats: Sequence, r: float, p: float, k: int, rule: QuadratureRule | None = None) -> Gap:
    """``int beta_r log phi(|prod A_j^(1+it)|^p) dt - log phi(|prod A_j^r|^(p/r))``.

    ``r = 1`` is handled by point evaluation at ``t = 0`` (the density is a
    point mass there), which makes both sides identical.
    """
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r}")
    if not p >= 1.0 or math.isinf(p):
        raise DomainError(f"p must lie in [1, inf), got {p}")
    rule = rule or default_rule()
    g = product_sampler(mats)
    lhs = float(log_phi_abs_power(g(r)[0], p / r, k))

    def integrand(t):
        return log_phi_abs_power(g(1.0 + 1j * np.asarray(t)), p, k)

    rhs = boundary_average(integrand, r, rule)
    return Gap.between(lhs, rhs)


def multivariate_gt_gap(mats: Sequence, p: float, k: int, rule: QuadratureRule | None = None) -> Gap:
    """``int beta_0 log phi(|prod exp((1+it) A_j)|^p) dt - log phi(exp(sum A_j)^p)``."""
    if not p >= 1.0 or math.isinf(p):
        raise DomainError(f"p must lie in [1, inf), got {p}")
    rule = rule or default_rule()
    hs = [hermitian(a) for a in mats]
    lhs = float(log_elementary_symmetric(p * np.linalg.eigvalsh(sum(hs)), k)) / k
    decs = [eigh(h) for h in hs]
    z = 1.0 + 1j * rule.nodes
    prod = None
    for d in decs:
        factor = d.apply(np.exp(z[:, None] * d.eigenvalues[None, :]))
        prod = factor if prod is None else prod @ factor
    values = _require_finite(log_phi_abs_power(prod, p, k), rule.nodes, "integrand")
    rhs = _weighted_sum(rule.weighted(0.0), values)
    return Gap.between(lhs, rhs)


# ---------------------------------------------------------------- T operator


def _log_divided_difference(lam: np.ndarray) -> np.ndarray:
    """Kernel ``(log li - log lj) / (li - lj)`` with diagonal ``1 / li``."""
    li = lam[:, None]
    lj = lam[None, :]
    x = (li - lj) / lj
    with np.errstate(invalid="ignore", divide="ignore"):
        ker = np.log1p(x) / (x * lj)
    return np.where(x == 0.0, 1.0 / np.broadcast_to(lj, ker.shape), ker)


def t_operator(a, b) -> np.ndarray:
    """``T_A[B] = int_0^inf (A + t I)^-1 B (A + t I)^-1 dt`` evaluated in A's eigenbasis."""
    dec = _pd_dec(a, "A")
    u = dec.eigenvectors
    bt = dagger(u) @ np.asarray(b, dtype=complex) @ u
    return hermitian(u @ (bt * _log_divided_difference(dec.eigenvalues)) @ dagger(u))


def t_operator_quadrature(a, b, rule: QuadratureRule | None = None) -> np.ndarray:
    """``int beta_0(t) (A^-1)^((1+it)/2) B (A^-1)^((1-it)/2) dt``; equals :func:`t_operator`."""
    rule = rule or default_rule()
    dec = _pd_dec(a, "A")
    inv = EigenDecomposition(1.0 / dec.eigenvalues, dec.eigenvectors)
    pz = _cpow(inv, (1.0 + 1j * rule.nodes) / 2.0)
    terms = pz @ np.asarray(b, dtype=complex) @ dagger(pz)
    w = rule.weighted(0.0)
    return hermitian(np.tensordot(w, terms, axes=(0, 0)))


def three_matrix_gt_gap(a, b, c, k: int) -> Gap:
    """``phi(exp(A) T_{exp(-B)}[exp(C)]) - phi(exp(A + B + C))``.

    The product on the left is not Hermitian; its k-trace is taken through
    the similar matrix ``exp(A/2) T exp(A/2)``.
    """
    a, b, c = hermitian(a), hermitian(b), hermitian(c)
    lhs = math.exp(float(log_elementary_symmetric(np.linalg.eigvalsh(a + b + c), k)) / k)
    da = eigh(a)
    half_a = da.apply(np.exp(da.eigenvalues / 2.0))
    db = eigh(b)
    t = t_operator(db.apply(np.exp(-db.eigenvalues)), matrix_exp(c))
    w = np.linalg.eigvalsh(hermitian(half_a @ t @ half_a))
    rhs = float(phi_from_eigenvalues(w, k))
    return Gap.between(lhs, rhs)


def three_matrix_chain(a, b, c, k: int, rule: QuadratureRule | None = None) -> tuple[Gap, Gap]:
    """The two steps from ``phi(exp(A+B+C))`` to ``phi(exp(A) T_{exp(-B)}[exp(C)])``.

    First, the multivariate bound with three factors and ``p = 2`` applied to
    ``(A/2, B/2, C/2)`` in the order A, B, C, B:
    ``log phi(exp(A+B+C)) <= int beta_0 log phi(e^A e^((1+it)B/2) e^C e^((1-it)B/2)) dt``.
    Second, concavity of ``log`` and ``phi`` moves the integral inside.
    Both gaps are in log form.
    """
    rule = rule or default_rule()
    a, b, c = hermitian(a), hermitian(b), hermitian(c)
    lhs = float(log_elementary_symmetric(np.linalg.eigvalsh(a + b + c), k)) / k
    da, db, dc = eigh(a), eigh(b), eigh(c)
    half_a = da.apply(np.exp(da.eigenvalues / 2.0))
    half_c = dc.apply(np.exp(dc.eigenvalues / 2.0))
    z = (1.0 + 1j * rule.nodes) / 2.0
    eb = db.apply(np.exp(z[:, None] * db.eigenvalues[None, :]))
    y = half_a @ eb @ half_c
    logs = _require_finite(log_phi_abs_power(y, 2.0, k), rule.nodes, "integrand")
    middle = _weighted_sum(rule.weighted(0.0), logs)
    t = t_operator(db.apply(np.exp(-db.eigenvalues)), matrix_exp(c))
    w = np.linalg.eigvalsh(hermitian(half_a @ t @ half_a))
    final = float(log_elementary_symmetric(np.log(np.maximum(w, 0.0)), k)) / k
    return Gap.between(lhs, middle), Gap.between(middle, final)

