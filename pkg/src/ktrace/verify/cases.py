"""Registry of verifiable statements.

Each case draws its arguments from a seeded stream and yields ``(tau, Gap)``
pairs, where ``tau`` is the convex-combination weight for concavity checks
and ``None`` otherwise.  A gap passes when ``gap.normalized >= -tol``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Iterator

import numpy as np

from .. import interpolation as ip
from ..exterior import additive_compound, compound
from ..gaps import Gap
from ..linalg import (
    abs_matrix,
    clip_psd,
    complex_power,
    dagger,
    eigh,
    hermitian,
    matrix_exp,
    matrix_log,
    matrix_power,
    schatten_norm,
    unitary_power,
)
from ..mixed import MAX_N as MIXED_MAX_N
from ..mixed import af_gap, mixed_discriminant, repeated, trace_k_from_mixed
from ..traces import (
    kschatten,
    log_trace_k_exp,
    phi_from_eigenvalues,
    trace_k,
    trace_k_compound,
    trace_k_general,
    trace_k_minors,
)
from .sampling import (
    TrialConfig,
    commuting_pair,
    psd_increment_pair,
    random_contraction,
    random_hermitian,
    random_pd,
    random_psd,
    random_square,
)

ALGEBRAIC_TOL = 1e-9
EPS = float(np.finfo(float).eps)
QUADRATURE_TOL = 1e-7

GapStream = Iterator[tuple]


@dataclass(frozen=True)
class InequalityCase:
    id: str
    statement: str
    arity: int
    sample: Callable[[np.random.Generator, TrialConfig], dict]
    evaluate: Callable[[dict, TrialConfig], Iterable[tuple]]
    tol: float = ALGEBRAIC_TOL
    concavity: bool = False
    expect_failure: bool = False

    def gaps(self, rng: np.random.Generator, cfg: TrialConfig) -> list:
        return list(self.evaluate(self.sample(rng, cfg), cfg))


REGISTRY: dict[str, InequalityCase] = {}


def register(case_id, statement, sample, arity, tol=ALGEBRAIC_TOL, concavity=False, expect_failure=False):
    def deco(evaluate):
        if case_id in REGISTRY:
            raise ValueError(f"duplicate case id {case_id!r}")
        REGISTRY[case_id] = InequalityCase(
            case_id, statement, arity, sample, evaluate, tol, concavity, expect_failure
        )
        return evaluate

    return deco


def case_ids() -> list:
    return list(REGISTRY)


def get_case(case_id: str) -> InequalityCase:
    try:
        return REGISTRY[case_id]
    except KeyError:
        raise KeyError(f"unknown case {case_id!r}; known cases: {', '.join(REGISTRY)}") from None


# ---------------------------------------------------------------- gap helpers


def midpoint_concavity_gap(f, args_a: tuple, args_b: tuple, tau: float, fa=None, fb=None) -> Gap:
    """``F(tau a + (1-tau) b) - tau F(a) - (1-tau) F(b)`` with per-argument mixing."""
    mid = tuple(tau * a + (1.0 - tau) * b for a, b in zip(args_a, args_b))
    fa = f(*args_a) if fa is None else fa
    fb = f(*args_b) if fb is None else fb
    return Gap.between(tau * fa + (1.0 - tau) * fb, f(*mid))


def concavity_gaps(f, args_a: tuple, args_b: tuple, taus) -> GapStream:
    fa, fb = f(*args_a), f(*args_b)
    for tau in taus:
        yield tau, midpoint_concavity_gap(f, args_a, args_b, tau, fa, fb)


def convexity_gaps(f, args_a: tuple, args_b: tuple, taus) -> GapStream:
    return concavity_gaps(lambda *x: -f(*x), args_a, args_b, taus)


def equality_gap(x, y) -> Gap:
    """Negative distance between two numbers, so it passes only when they agree."""
    return Gap(-abs(x - y), max(abs(x), abs(y), 1.0))


def matrix_equality_gap(x, y) -> Gap:
    x = np.asarray(x)
    y = np.asarray(y)
    scale = max(float(np.max(np.abs(x))), float(np.max(np.abs(y))), 1.0)
    return Gap(-float(np.max(np.abs(x - y))), scale)


def _numerical_rank_clip(w) -> np.ndarray:
    # eigenvalues below the rounding level of the largest one are zero; without this
    # phi at k = n turns eps-sized noise into an O(eps**(1/n)) value
    w = clip_psd(w)
    return np.where(w <= w.size * EPS * w[0], 0.0, w)


def _phi_spectral(m, k: int, power: float = 1.0) -> float:
    """``phi(M**power)`` for PSD ``M`` from its clipped spectrum."""
    w = _numerical_rank_clip(eigh(m).eigenvalues)
    return float(phi_from_eigenvalues(w**power if power != 1.0 else w, k))


def _order(cfg: TrialConfig, dim: int) -> int:
    return min(cfg.k, dim)


def _psd_pair(rng, n):
    return random_psd(rng, n), random_psd(rng, n)


# ---------------------------------------------------------------- Lieb-type concavity

LIEB_SR_GRID = tuple((s, r) for s in (0.3, 0.7, 1.0) for r in (0.3, 0.7, 1.0))
LIEB_SPQ = ((1.0, 0.5, 0.5), (0.5, 0.3, 0.4), (0.7, 0.2, 0.8))


def _lieb_epstein_value(a, kmat, r, s, k):
    return _phi_spectral(dagger(kmat) @ matrix_power(a, r * s) @ kmat, k, 1.0 / s)


def _lieb_joint_value(a, b, kmat, s, p, q, k):
    bh = matrix_power(b, q * s / 2.0)
    return _phi_spectral(bh @ dagger(kmat) @ matrix_power(a, p * s) @ kmat @ bh, k, 1.0 / s)


def _sample_lemma31(rng, cfg):
    a, b = _psd_pair(rng, cfg.n)
    return {"a": a, "b": b, "K": random_contraction(rng, cfg.n)}


@register(
    "lemma31",
    "A -> phi((K* A^(rs) K)^(1/s)) is concave on PSD matrices for s, r in (0, 1]",
    _sample_lemma31, arity=1, concavity=True,
)
def _lemma31(d, cfg):
    k = _order(cfg, cfg.n)
    for s, r in LIEB_SR_GRID:
        yield from concavity_gaps(
            lambda a: _lieb_epstein_value(a, d["K"], r, s, k), (d["a"],), (d["b"],), cfg.tau_grid
        )


def _sample_thm32(rng, cfg):
    n, m = cfg.n, cfg.cols
    a0, a1 = _psd_pair(rng, n)
    b0, b1 = _psd_pair(rng, m)
    return {"a": (a0, b0), "b": (a1, b1), "K": random_contraction(rng, n, m)}


@register(
    "thm32",
    "(A, B) -> phi((B^(qs/2) K* A^(ps) K B^(qs/2))^(1/s)) is jointly concave, K rectangular, p + q <= 1",
    _sample_thm32, arity=2, concavity=True,
)
def _thm32(d, cfg):
    k = _order(cfg, cfg.cols)
    for s, p, q in LIEB_SPQ:
        yield from concavity_gaps(
            lambda a, b: _lieb_joint_value(a, b, d["K"], s, p, q, k), d["a"], d["b"], cfg.tau_grid
        )


def _exp_log_value(mats, weights, h, k):
    x = h + sum(w * matrix_log(a) for w, a in zip(weights, mats))
    return math.exp(log_trace_k_exp(x, k) / k)


def _sample_thm33(rng, cfg):
    m = int(rng.integers(1, 4))
    weights = rng.dirichlet(np.ones(m)) * rng.uniform(0.2, 1.0)
    a = tuple(random_pd(rng, cfg.n, cfg.cond_cap) for _ in range(m))
    b = tuple(random_pd(rng, cfg.n, cfg.cond_cap) for _ in range(m))
    return {"a": a, "b": b, "p": weights, "H": random_hermitian(rng, cfg.n, 2.0)}


@register(
    "thm33",
    "(A1, ..., Am) -> phi(exp(H + sum p_j log A_j)) is jointly concave on PD matrices, sum p_j <= 1",
    _sample_thm33, arity=3, concavity=True,
)
def _thm33(d, cfg):
    k = _order(cfg, cfg.n)
    yield from concavity_gaps(
        lambda *mats: _exp_log_value(mats, d["p"], d["H"], k), d["a"], d["b"], cfg.tau_grid
    )


def _sample_cor39(rng, cfg):
    return {"joint": _sample_thm32(rng, cfg), "explog": _sample_thm33(rng, cfg)}


@register(
    "cor39",
    "the joint Lieb-type function to the power 1/(p + q) and the exp-log function to the power 1/sum p_j are jointly concave",
    _sample_cor39, arity=3, concavity=True,
)
def _cor39(d, cfg):
    j, e = d["joint"], d["explog"]
    k = _order(cfg, cfg.cols)
    for s, p, q in LIEB_SPQ:
        yield from concavity_gaps(
            lambda a, b: _lieb_joint_value(a, b, j["K"], s, p, q, k) ** (1.0 / (p + q)),
            j["a"], j["b"], cfg.tau_grid,
        )
    k = _order(cfg, cfg.n)
    total = float(np.sum(e["p"]))
    yield from concavity_gaps(
        lambda *mats: _exp_log_value(mats, e["p"], e["H"], k) ** (1.0 / total),
        e["a"], e["b"], cfg.tau_grid,
    )


def _sample_cor310(rng, cfg):
    m = int(rng.integers(1, 4))
    return {
        "a": tuple(random_psd(rng, cfg.n) for _ in range(m)),
        "b": tuple(random_psd(rng, cfg.n) for _ in range(m)),
        "K": tuple(random_contraction(rng, cfg.n) for _ in range(m)),
    }


@register(
    "cor310",
    "(A1, ..., Am) -> phi((sum K_j* A_j^(rs) K_j)^(1/s)) is jointly concave on PSD matrices",
    _sample_cor310, arity=3, concavity=True,
)
def _cor310(d, cfg):
    k = _order(cfg, cfg.n)
    for s, r in LIEB_SR_GRID:
        def f(*mats, s=s, r=r):
            total = sum(dagger(km) @ matrix_power(a, r * s) @ km for km, a in zip(d["K"], mats))
            return _phi_spectral(total, k, 1.0 / s)

        yield from concavity_gaps(f, d["a"], d["b"], cfg.tau_grid)


# ---------------------------------------------------------------- Golden-Thompson family

ALT_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)


def _sample_psd_pair(rng, cfg):
    a, b = _psd_pair(rng, cfg.n)
    return {"a": a, "b": b}


@register(
    "lemma35-alt",
    "t -> trace_k[(B^(t/2) A^t B^(t/2))^(1/t)] is increasing on (0, inf) for PSD A, B",
    _sample_psd_pair, arity=2,
)
def _lemma35(d, cfg):
    k = _order(cfg, cfg.n)

    da, db = eigh(d["a"]), eigh(d["b"])
    wa, wb = _numerical_rank_clip(da.eigenvalues), _numerical_rank_clip(db.eigenvalues)

    def power(dec, w, t):
        v = dec.eigenvectors
        return (v * w**t) @ dagger(v)

    def value(t):
        # spectrum of B^(t/2) A^t B^(t/2) as squared singular values of A^(t/2) B^(t/2)
        prod = power(da, wa, t / 2.0) @ power(db, wb, t / 2.0)
        sv = np.linalg.svd(prod, compute_uv=False)
        sv = _numerical_rank_clip(sv)
        return float(phi_from_eigenvalues(sv ** (2.0 / t), k)) ** k

    values = [value(t) for t in ALT_GRID]
    for lo, hi in zip(values, values[1:]):
        yield None, Gap.between(lo, hi)


def _sample_gt(rng, cfg):
    a, b = commuting_pair(rng, cfg.n, 2.5)
    return {"A": random_hermitian(rng, cfg.n), "B": random_hermitian(rng, cfg.n), "CA": a, "CB": b}


def _gt_sides(a, b, k):
    lhs = trace_k(matrix_exp(a + b), k)
    rhs = trace_k_general(matrix_exp(a) @ matrix_exp(b), k).real
    return lhs, rhs


@register(
    "lemma36-gt",
    "trace_k[exp(A + B)] <= trace_k[exp(A) exp(B)] with equality for commuting A, B",
    _sample_gt, arity=2,
)
def _lemma36(d, cfg):
    k = _order(cfg, cfg.n)
    yield None, Gap.between(*_gt_sides(d["A"], d["B"], k))
    yield None, equality_gap(*_gt_sides(d["CA"], d["CB"], k))


@register(
    "anti-gt",
    "deliberately false reversal trace_k[exp(A) exp(B)] <= trace_k[exp(A + B)]; must be rejected",
    _sample_gt, arity=2, expect_failure=True,
)
def _anti_gt(d, cfg):
    k = _order(cfg, cfg.n)
    lhs, rhs = _gt_sides(d["A"], d["B"], k)
    yield None, Gap.between(rhs, lhs)


def _sample_herm_pair(rng, cfg):
    return {"a": random_hermitian(rng, cfg.n), "b": random_hermitian(rng, cfg.n)}


@register(
    "lemma37-pb",
    "A -> log trace_k[exp(A)] is convex on Hermitian matrices",
    _sample_herm_pair, arity=1, concavity=True,
)
def _lemma37(d, cfg):
    k = _order(cfg, cfg.n)
    yield from convexity_gaps(lambda a: log_trace_k_exp(a, k), (d["a"],), (d["b"],), cfg.tau_grid)


def _sample_herm(rng, cfg):
    return {"a": random_hermitian(rng, cfg.n)}


@register(
    "sec22-bounds",
    "the k largest (smallest) eigenvalues bound log trace_k[exp(+-A)] within log C(n, k)",
    _sample_herm, arity=1,
)
def _sec22(d, cfg):
    n = cfg.n
    k = _order(cfg, n)
    w = eigh(d["a"]).eigenvalues
    top = math.fsum(w[:k].tolist())
    bottom = math.fsum(w[n - k:].tolist())
    upper = log_trace_k_exp(d["a"], k)
    lower = -log_trace_k_exp(-d["a"], k)
    slack = math.log(comb(n, k))
    yield None, Gap.between(top, upper)
    yield None, Gap.between(upper, top + slack)
    yield None, Gap.between(lower, bottom)
    yield None, Gap.between(bottom - slack, lower)


# ---------------------------------------------------------------- majorization and preservation


def _sample_psd(rng, cfg):
    return {"a": random_psd(rng, cfg.n)}


@register(
    "lemma43-diag",
    "phi(A) <= phi(diag(A)) for PSD A",
    _sample_psd, arity=1,
)
def _lemma43(d, cfg):
    k = _order(cfg, cfg.n)
    a = d["a"]
    diag = np.diag(np.diag(a).real)
    yield None, Gap.between(_phi_spectral(a, k), _phi_spectral(diag, k))


CLIP_LEVEL = 0.5
INCREASING = {
    "identity": lambda x: x,
    "clip": lambda x: np.minimum(x, CLIP_LEVEL),
    "softplus": lambda x: np.logaddexp(0.0, x),
    "sqrt": np.sqrt,
    "log1p": np.log1p,
}
DECREASING = {
    "exp(-x)": lambda x: np.exp(-x),
    "1/(1+x)": lambda x: 1.0 / (1.0 + x),
}
CONCAVE = {
    "identity": lambda x: x,
    "clip": lambda x: np.minimum(x, CLIP_LEVEL),
    "sqrt": np.sqrt,
    "log1p": np.log1p,
}


def _phi_of_function(a, f, k):
    w = clip_psd(eigh(a).eigenvalues)
    return float(phi_from_eigenvalues(f(w), k))


def _sample_preserve(rng, cfg):
    big, small = psd_increment_pair(rng, cfg.n)
    a, b = _psd_pair(rng, cfg.n)
    return {"big": big, "small": small, "a": a, "b": b}


@register(
    "thm44-preserve",
    "for nonnegative scalar f, phi(f(.)) inherits monotonicity and concavity of f on PSD matrices",
    _sample_preserve, arity=2, concavity=True,
)
def _thm44(d, cfg):
    k = _order(cfg, cfg.n)
    for f in INCREASING.values():
        yield None, Gap.between(_phi_of_function(d["small"], f, k), _phi_of_function(d["big"], f, k))
    for f in DECREASING.values():
        yield None, Gap.between(_phi_of_function(d["big"], f, k), _phi_of_function(d["small"], f, k))
    for f in CONCAVE.values():
        yield from concavity_gaps(lambda a: _phi_of_function(a, f, k), (d["a"],), (d["b"],), cfg.tau_grid)


# ---------------------------------------------------------------- operator concavity and homogeneity

POWER_GRID = (0.25, 0.5, 0.75, 1.0)


@register(
    "appC-lowner",
    "A -> A^r is operator concave on PSD matrices for r in (0, 1]",
    _sample_psd_pair, arity=1, concavity=True,
)
def _appc(d, cfg):
    a, b = d["a"], d["b"]
    for r in POWER_GRID:
        ar, br = matrix_power(a, r), matrix_power(b, r)
        for tau in cfg.tau_grid:
            mid = matrix_power(tau * a + (1.0 - tau) * b, r)
            comb_ = tau * ar + (1.0 - tau) * br
            lowest = float(np.linalg.eigvalsh(hermitian(mid - comb_))[0])
            scale = max(schatten_norm(mid, np.inf), schatten_norm(comb_, np.inf), 1.0)
            yield tau, Gap(lowest, scale)


HOMOGENEITY_POWER = 0.5


def _sample_homog(rng, cfg):
    a, b = _psd_pair(rng, cfg.n)
    return {"a": a, "b": b, "K": random_square(rng, cfg.n), "lam": float(rng.uniform(0.1, 10.0))}


@register(
    "appD-homog",
    "for F >= 0 homogeneous of order one, F concave and F^s concave agree (F(X) = phi(K* X K))",
    _sample_homog, arity=1, concavity=True,
)
def _appd(d, cfg):
    k = _order(cfg, cfg.n)
    kmat = d["K"]

    def f(x):
        return _phi_spectral(dagger(kmat) @ x @ kmat, k)

    yield None, equality_gap(f(d["lam"] * d["a"]), d["lam"] * f(d["a"]))
    plain = list(concavity_gaps(f, (d["a"],), (d["b"],), cfg.tau_grid))
    powered = list(
        concavity_gaps(lambda x: f(x) ** HOMOGENEITY_POWER, (d["a"],), (d["b"],), cfg.tau_grid)
    )
    yield from plain
    yield from powered


# ---------------------------------------------------------------- interpolation

SH_LIEB_EPSTEIN = ((1.0, 0.5), (0.5, 0.3), (0.7, 0.7))  # (r, s); theta = s
SH_POWER = (0.25, 0.5, 0.75)


def _rule(cfg):
    return ip.rule_for(cfg.quad_refinement)


def _sample_sh(rng, cfg):
    n = cfg.n
    return {
        "X": random_pd(rng, n, cfg.cond_cap),
        "C": random_pd(rng, n, cfg.cond_cap),
        "K": random_contraction(rng, n, smin=0.1),
    }


def _sh_instances(d):
    x, c, kmat = d["X"], d["C"], d["K"]
    for r, s in SH_LIEB_EPSTEIN:
        yield ip.lieb_epstein_sampler(x, c, kmat, r, s), s, math.inf, 2.0
    for s, p, q in LIEB_SPQ:
        yield ip.lieb_joint_sampler(x, c, kmat, p, q, s), p / (p + q), 2.0 / s, 2.0 / s
    for r in SH_POWER:
        yield ip.power_concavity_sampler(x, c, kmat), r, 2.0, 2.0
    yield ip.product_sampler([x, c]), 0.5, math.inf, 2.0
    yield ip.constant_sampler(kmat), 0.5, 2.0, 2.0


@register(
    "lemma34-sh",
    "interpolation bound for phi on the strip: interior value below the beta-weighted boundary averages",
    _sample_sh, arity=3, tol=QUADRATURE_TOL,
)
def _lemma34(d, cfg):
    k = _order(cfg, cfg.n)
    for g, theta, p0, p1 in _sh_instances(d):
        chain = ip.stein_hirschman_chain(g, theta, p0, p1, k, _rule(cfg))
        for gap in chain:
            if math.isfinite(gap.value):
                yield None, gap


SBT_R = (0.25, 0.5, 1.0)
SBT_P = (1.0, 2.0)


def _sample_sbt(rng, cfg):
    m = int(rng.integers(2, 4))
    return {"mats": tuple(random_pd(rng, cfg.n, cfg.cond_cap) for _ in range(m))}


@register(
    "lemma41-sbt",
    "log phi(|prod A_j^r|^(p/r)) <= integral of beta_r log phi(|prod A_j^(1+it)|^p)",
    _sample_sbt, arity=3, tol=QUADRATURE_TOL,
)
def _lemma41(d, cfg):
    k = _order(cfg, cfg.n)
    for r in SBT_R:
        for p in SBT_P:
            yield None, ip.sbt_gap(d["mats"], r, p, k, _rule(cfg))


def _sample_mgt(rng, cfg):
    m = int(rng.integers(2, 4))
    return {"mats": tuple(random_hermitian(rng, cfg.n) for _ in range(m))}


@register(
    "thm42-mgt",
    "log phi(exp(sum A_j)^p) <= integral of beta_0 log phi(|prod exp((1+it) A_j)|^p)",
    _sample_mgt, arity=3, tol=QUADRATURE_TOL,
)
def _thm42(d, cfg):
    k = _order(cfg, cfg.n)
    for p in SBT_P:
        yield None, ip.multivariate_gt_gap(d["mats"], p, k, _rule(cfg))


def _sample_three(rng, cfg):
    return {name: random_hermitian(rng, cfg.n) for name in "ABC"}


@register(
    "sec41-3mgt",
    "phi(exp(A + B + C)) <= phi(exp(A) T_{exp(-B)}[exp(C)]) and the two steps leading to it",
    _sample_three, arity=3, tol=QUADRATURE_TOL,
)
def _sec41(d, cfg):
    k = _order(cfg, cfg.n)
    yield None, ip.three_matrix_gt_gap(d["A"], d["B"], d["C"], k)
    for gap in ip.three_matrix_chain(d["A"], d["B"], d["C"], k, _rule(cfg)):
        yield None, gap


# ---------------------------------------------------------------- structural identities


@register(
    "oracle-ktrace",
    "trace_k from eigenvalues, principal minors, compound trace and mixed discriminant agree",
    _sample_herm, arity=1,
)
def _oracle(d, cfg):
    k = _order(cfg, cfg.n)
    a = d["a"]
    ref = trace_k(a, k)
    yield None, equality_gap(ref, trace_k_minors(a, k))
    yield None, equality_gap(ref, trace_k_compound(a, k))
    if cfg.n <= MIXED_MAX_N:
        yield None, equality_gap(ref, trace_k_from_mixed(a, k))


@register(
    "eq36",
    "trace_k[A] = C(n, k) D(A x k, I x (n - k))",
    _sample_psd, arity=1,
)
def _eq36(d, cfg):
    k = _order(cfg, cfg.n)
    yield None, equality_gap(trace_k(d["a"], k), trace_k_from_mixed(d["a"], k))


def _sample_small_herm(rng, cfg):
    return {"a": random_hermitian(rng, cfg.n, 3.0)}


@register(
    "lemmaB1",
    "compound of exp(A) equals exp of the additive compound of A",
    _sample_small_herm, arity=1,
)
def _lemmab1(d, cfg):
    k = _order(cfg, cfg.n)
    a = d["a"]
    yield None, matrix_equality_gap(compound(matrix_exp(a), k), matrix_exp(additive_compound(a, k)))


FUNCTORIAL_POWERS = (0.5, 2.0, -1.0)
FUNCTORIAL_IMAG = 1.3


def _sample_functorial(rng, cfg):
    n = cfg.n
    return {
        "A": random_pd(rng, n, 1e2),
        "B": random_pd(rng, n, 1e2),
        "X": random_square(rng, n),
        "Y": random_square(rng, n),
    }


@register(
    "appB-functorial",
    "the compound respects inverses, adjoints, powers, products and absolute values",
    _sample_functorial, arity=2,
)
def _appb_functorial(d, cfg):
    k = _order(cfg, cfg.n)
    a, b, x, y = d["A"], d["B"], d["X"], d["Y"]
    ca = compound(a, k)
    yield None, matrix_equality_gap(compound(np.linalg.inv(a), k), np.linalg.inv(ca))
    cx = compound(x, k)
    yield None, matrix_equality_gap(compound(dagger(x), k), dagger(cx))
    for t in FUNCTORIAL_POWERS:
        yield None, matrix_equality_gap(compound(matrix_power(a, t), k), complex_power(ca, t))
    yield None, matrix_equality_gap(
        compound(unitary_power(a, FUNCTORIAL_IMAG), k), unitary_power(ca, FUNCTORIAL_IMAG)
    )
    yield None, matrix_equality_gap(compound(a @ b, k), ca @ compound(b, k))
    yield None, matrix_equality_gap(compound(x @ y, k), cx @ compound(y, k))
    yield None, matrix_equality_gap(abs_matrix(cx), compound(abs_matrix(x), k))


@register(
    "appB-spectrum",
    "the spectrum of the k-th compound is the set of k-fold eigenvalue products",
    _sample_herm, arity=1,
)
def _appb_spectrum(d, cfg):
    k = _order(cfg, cfg.n)
    w = eigh(d["a"]).eigenvalues
    products = np.sort([math.prod(c) for c in itertools.combinations(w.tolist(), k)])
    got = np.sort(np.linalg.eigvalsh(hermitian(compound(d["a"], k))))
    yield None, matrix_equality_gap(got, products)


def _sample_af(rng, cfg):
    n = max(cfg.n, 2)
    return {
        "A": random_pd(rng, n, cfg.cond_cap),
        "B": random_hermitian(rng, n),
        "rest": tuple(random_pd(rng, n, cfg.cond_cap) for _ in range(n - 2)),
        "lam": float(rng.uniform(-3.0, 3.0)),
    }


@register(
    "af",
    "D(A, B, R)^2 >= D(A, A, R) D(B, B, R) for PD A, R and Hermitian B; equality when B = lam A",
    _sample_af, arity=3,
)
def _af(d, cfg):
    yield None, af_gap(d["A"], d["B"], d["rest"])
    eq = af_gap(d["A"], d["lam"] * d["A"], d["rest"])
    yield None, Gap(-abs(eq.value), eq.scale)


def _sample_mixed_family(rng, cfg):
    n, k = cfg.n, cfg.k
    return {
        "A": random_psd(rng, n),
        "B": random_psd(rng, n),
        "rest": tuple(random_psd(rng, n) for _ in range(n - k)),
    }


@register(
    "corA2",
    "D(A x l, B x (k-l), R)^k >= D(A x k, R)^l D(B x k, R)^(k-l) for PSD arguments",
    _sample_mixed_family, arity=3,
)
def _cora2(d, cfg):
    k = cfg.k
    a, b, rest = d["A"], d["B"], list(d["rest"])
    da = mixed_discriminant(repeated((a, k)) + rest)
    db = mixed_discriminant(repeated((b, k)) + rest)
    for l in range(k + 1):
        mixed = mixed_discriminant(repeated((a, l), (b, k - l)) + rest)
        yield None, Gap.between(da**l * db ** (k - l), mixed**k)


@register(
    "bm",
    "A -> D(A x k, R)^(1/k) is concave on PSD matrices",
    _sample_mixed_family, arity=1, concavity=True,
)
def _bm(d, cfg):
    k = cfg.k
    rest = list(d["rest"])

    def f(a):
        return max(mixed_discriminant(repeated((a, k)) + rest), 0.0) ** (1.0 / k)

    yield from concavity_gaps(f, (d["A"],), (d["B"],), cfg.tau_grid)


# ---------------------------------------------------------------- basic k-trace properties

HOLDER_PAIRS = ((1.0, math.inf), (2.0, 2.0), (3.0, 1.5))


def _sample_square_pair(rng, cfg):
    return {"X": random_square(rng, cfg.n), "Y": random_square(rng, cfg.n)}


@register(
    "prop1-cyclic",
    "trace_k[XY] = trace_k[YX] for square X, Y",
    _sample_square_pair, arity=2,
)
def _cyclic(d, cfg):
    k = _order(cfg, cfg.n)
    x, y = d["X"], d["Y"]
    lhs = trace_k_general(x @ y, k, "compound")
    rhs = trace_k_general(y @ x, k, "compound")
    yield None, equality_gap(lhs, rhs)


def _sample_increment(rng, cfg):
    big, small = psd_increment_pair(rng, cfg.n)
    return {"big": big, "small": small}


@register(
    "prop1-monotone",
    "trace_k is monotone in the Loewner order on PSD matrices",
    _sample_increment, arity=2,
)
def _monotone(d, cfg):
    k = _order(cfg, cfg.n)
    yield None, Gap.between(trace_k(d["small"], k), trace_k(d["big"], k))


@register(
    "prop1-concave",
    "phi = trace_k^(1/k) is concave on PSD matrices",
    _sample_psd_pair, arity=1, concavity=True,
)
def _concave(d, cfg):
    k = _order(cfg, cfg.n)
    yield from concavity_gaps(lambda a: _phi_spectral(a, k), (d["a"],), (d["b"],), cfg.tau_grid)


@register(
    "prop1-holder",
    "|trace_k[XY]| <= trace_k[|X|^p]^(1/p) trace_k[|Y|^q]^(1/q) for conjugate p, q",
    _sample_square_pair, arity=2,
)
def _holder(d, cfg):
    k = _order(cfg, cfg.n)
    x, y = d["X"], d["Y"]
    lhs = abs(trace_k_general(x @ y, k))
    for p, q in HOLDER_PAIRS:
        yield None, Gap.between(lhs, float(kschatten(x, p, k) * kschatten(y, q, k)))
        yield None, Gap.between(lhs, float(kschatten(x, q, k) * kschatten(y, p, k)))


PAD = 2


@register(
    "prop1-consistency",
    "zero padding leaves trace_k unchanged",
    _sample_herm, arity=1,
)
def _consistency(d, cfg):
    k = _order(cfg, cfg.n)
    a = d["a"]
    n = a.shape[0]
    padded = np.zeros((n + PAD, n + PAD), dtype=complex)
    padded[:n, :n] = a
    yield None, equality_gap(trace_k_minors(a, k), trace_k_minors(padded, k))
