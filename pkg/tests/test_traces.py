import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrace.errors import DomainError, ResourceLimitError
from ktrace.traces import (
    elementary_symmetric,
    kschatten,
    ktrace,
    log_elementary_symmetric,
    log_kschatten,
    log_trace_k_exp,
    phi,
    phi_abs_power,
    trace_k,
    trace_k_compound,
    trace_k_general,
    trace_k_minors,
)

from conftest import rand_herm, rand_psd, rand_unitary

seeds = st.integers(0, 2**32 - 1)


def brute_esym(values, k):
    return sum(math.prod(c) for c in itertools.combinations(values, k))


def charpoly_trace_k(a, k):
    # det(tI - A) = sum_j (-1)^j e_j t^(n-j)
    coeffs = np.poly(np.linalg.eigvals(a))
    return ((-1) ** k * coeffs[k]).real


def test_esym_small_examples():
    assert elementary_symmetric([1.0, 2.0, 3.0], 1) == 6
    assert elementary_symmetric([1.0, 2.0, 3.0], 2) == 11
    assert elementary_symmetric([1.0, 2.0, 3.0], 3) == 6
    assert elementary_symmetric([2.0, -1.0], 2) == -2


def test_esym_batched(rng):
    v = rng.standard_normal((4, 6))
    batch = elementary_symmetric(v, 3)
    assert batch.shape == (4,)
    for row, val in zip(v, batch):
        assert val == pytest.approx(brute_esym(row, 3), rel=1e-12, abs=1e-12)


def test_esym_order_checked():
    for k in (0, 4):
        with pytest.raises(DomainError):
            elementary_symmetric([1.0, 2.0, 3.0], k)


def test_log_esym_handles_huge_and_zero():
    lv = np.array([800.0, 799.0, 0.0])
    assert log_elementary_symmetric(lv, 2) == pytest.approx(1599.0 + math.log1p(math.exp(-799) + math.exp(-800)))
    assert log_elementary_symmetric(np.array([-np.inf, -np.inf]), 1) == -np.inf
    assert log_elementary_symmetric(np.array([0.0, -np.inf]), 2) == -np.inf


def test_identity_and_diagonal_values():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert trace_k(np.eye(n), k) == pytest.approx(math.comb(n, k))
    d = np.diag([1.0, 2.0, 3.0, 4.0])
    assert trace_k(d, 2) == pytest.approx(35.0)
    assert trace_k_minors(d, 2) == 35.0
    assert trace_k_compound(d, 2) == 35.0


def test_k1_is_trace_and_kn_is_det(rng):
    a = rand_herm(rng, 5)
    assert trace_k(a, 1) == pytest.approx(np.trace(a).real, abs=1e-12)
    assert trace_k(a, 5) == pytest.approx(np.linalg.det(a).real, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
def test_routes_agree_with_charpoly_oracle(rng, n):
    for _ in range(5):
        a = rand_herm(rng, n)
        for k in range(1, n + 1):
            ref = charpoly_trace_k(a, k)
            scale = max(abs(ref), 1.0)
            for method in ("eigen", "minors", "compound"):
                assert abs(ktrace(a, k, method) - ref) <= 1e-10 * scale


def test_unknown_method():
    with pytest.raises(ValueError):
        ktrace(np.eye(2), 1, "fourier")
    with pytest.raises(ValueError):
        trace_k_general(np.eye(2), 1, "eigen")


def test_minors_cap(monkeypatch):
    import ktrace.traces as tr

    monkeypatch.setattr(tr, "MINORS_CAP", 5)
    with pytest.raises(ResourceLimitError):
        trace_k_minors(np.eye(5), 2)


def test_general_product_matches_compound(rng):
    a, b = rand_psd(rng, 4), rand_herm(rng, 4)
    for k in range(1, 5):
        m = trace_k_general(a @ b, k, "minors")
        c = trace_k_general(a @ b, k, "compound")
        ref = charpoly_trace_k(a @ b, k)
        assert abs(m - c) <= 1e-11 * max(abs(m), 1)
        assert abs(m.real - ref) <= 1e-10 * max(abs(ref), 1)


def test_phi_examples():
    assert phi(np.eye(4), 2) == pytest.approx(math.sqrt(6))
    assert phi(np.diag([1.0, 0.0, 0.0]), 2) == 0.0
    with pytest.raises(DomainError):
        phi(np.diag([1.0, -1.0]), 1)


def test_log_trace_k_exp_no_overflow():
    a = np.diag([1000.0, 999.0, -5.0])
    assert log_trace_k_exp(a, 2) == pytest.approx(1999.0 + math.log1p(math.exp(-1004) + math.exp(-1005)))
    b = np.diag([0.3, -0.2, 0.1])
    assert log_trace_k_exp(b, 2) == pytest.approx(math.log(brute_esym(np.exp([0.3, -0.2, 0.1]), 2)))


def test_kschatten_values(rng):
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    s = np.linalg.svd(x, compute_uv=False)
    assert kschatten(x, 2.0, 2) == pytest.approx(brute_esym(s**2, 2) ** 0.5, rel=1e-12)
    assert kschatten(x, np.inf, 2) == pytest.approx(s[0] * s[1], rel=1e-12)
    assert phi_abs_power(x, 3.0, 3) == pytest.approx(brute_esym(s**3, 3) ** (1 / 3), rel=1e-12)
    # the p = inf limit is approached from below-p side
    assert abs(log_kschatten(x, 400.0, 2) - log_kschatten(x, np.inf, 2)) < 1e-2
    with pytest.raises(DomainError):
        phi_abs_power(x, -1.0, 1)


@given(seeds, st.integers(1, 6), st.data())
def test_unitary_invariance(seed, n, data):
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(seed)
    a, u = rand_herm(rng, n), rand_unitary(rng, n)
    t, tu = trace_k(a, k), trace_k(u.conj().T @ a @ u, k)
    assert abs(t - tu) <= 1e-10 * max(abs(t), 1)


@given(seeds, st.integers(1, 5), st.data())
def test_homogeneity(seed, n, data):
    k = data.draw(st.integers(1, n))
    c = data.draw(st.floats(-3, 3))
    rng = np.random.default_rng(seed)
    a = rand_herm(rng, n)
    lhs, rhs = trace_k(c * a, k), c**k * trace_k(a, k)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1)


@given(seeds, st.integers(1, 5), st.data())
def test_padding_consistency_bit_exact(seed, n, data):
    k = data.draw(st.integers(1, n))
    pad = data.draw(st.integers(1, 2))
    rng = np.random.default_rng(seed)
    a = rand_herm(rng, n)
    big = np.zeros((n + pad, n + pad), dtype=complex)
    big[:n, :n] = a
    assert trace_k_minors(big, k) == trace_k_minors(a, k)


@given(seeds, st.integers(1, 6), st.data())
def test_psd_nonnegative_and_phi_concave(seed, n, data):
    k = data.draw(st.integers(1, n))
    tau = data.draw(st.floats(0, 1))
    rng = np.random.default_rng(seed)
    a, b = rand_psd(rng, n), rand_psd(rng, n)
    assert trace_k(a, k) >= -1e-12
    mid = phi(tau * a + (1 - tau) * b, k)
    comb_ = tau * phi(a, k) + (1 - tau) * phi(b, k)
    assert mid >= comb_ - 1e-9 * max(mid, comb_, 1)
