import itertools
import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given
from hypothesis import strategies as st

from ktrace.errors import DomainError, ResourceLimitError
from ktrace.exterior import (
    KSubsetBasis,
    additive_compound,
    compound,
    compound_via_mixed,
    k_subsets,
    mixed_exterior,
)

from conftest import rand_herm, rand_unitary, rel_err

seeds = st.integers(0, 2**32 - 1)


def brute_compound(a, k):
    n = a.shape[0]
    s = list(itertools.combinations(range(n), k))
    return np.array([[np.linalg.det(a[np.ix_(i, j)]) for j in s] for i in s])


def brute_additive(a, k):
    # d/dt C_k(I + tA) at t = 0, by exact polynomial extraction on a small grid
    n = a.shape[0]
    hs = np.array([1e-3, -1e-3, 2e-3, -2e-3])
    vals = [brute_compound(np.eye(n) + h * a, k) for h in hs]
    return (8 * (vals[0] - vals[1]) - (vals[2] - vals[3])) / (12 * 1e-3)


def test_basis_order_and_index():
    assert k_subsets(4, 2).tolist() == [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
    b = KSubsetBasis(5, 3)
    assert len(b) == 10
    assert b.index((0, 1, 2)) == 0
    assert b.index((2, 3, 4)) == 9
    assert k_subsets(3, 0).shape == (1, 0)
    with pytest.raises(DomainError):
        k_subsets(2, 3)


def test_compound_special_cases(rng):
    a = rand_herm(rng, 4)
    assert rel_err(compound(a, 1), a) < 1e-15
    assert compound(a, 4)[0, 0] == pytest.approx(np.linalg.det(a), abs=1e-12)
    assert np.allclose(compound(np.eye(5), 2), np.eye(10))
    d = compound(np.diag([1.0, 2.0, 3.0]), 2)
    assert np.allclose(d, np.diag([2.0, 3.0, 6.0]))


def test_compound_matches_minors_oracle(rng):
    for n, k in [(3, 2), (5, 2), (5, 3), (6, 4)]:
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert rel_err(compound(a, k), brute_compound(a, k)) < 1e-12


def test_compound_limits(monkeypatch):
    import ktrace.exterior as ex

    with pytest.raises(DomainError):
        compound(np.eye(3), 0)
    with pytest.raises(DomainError):
        compound(np.ones((2, 3)), 1)
    monkeypatch.setattr(ex, "COMPOUND_CAP", 5)
    with pytest.raises(ResourceLimitError):
        compound(np.eye(4), 2)


def test_additive_compound_examples(rng):
    assert np.allclose(additive_compound(np.eye(4), 2), 2 * np.eye(6))
    d = additive_compound(np.diag([1.0, 2.0, 3.0]), 2)
    assert np.allclose(d, np.diag([3.0, 4.0, 5.0]))
    a = rng.standard_normal((4, 4))
    assert rel_err(additive_compound(a, 2), brute_additive(a, 2)) < 1e-8
    assert rel_err(additive_compound(a, 1), a) < 1e-15
    assert additive_compound(a, 4)[0, 0] == pytest.approx(np.trace(a))


def test_additive_exponential_law(rng):
    for n, k in [(3, 2), (4, 2), (5, 3)]:
        a = rand_herm(rng, n)
        lhs = sla.expm(additive_compound(a, k))
        rhs = compound(sla.expm(a), k)
        assert rel_err(lhs, rhs) < 1e-10


def test_mixed_exterior_routes(rng):
    a = rng.standard_normal((4, 4))
    assert rel_err(compound_via_mixed(a, 2), compound(a, 2)) < 1e-12
    assert rel_err(compound_via_mixed(a, 3), compound(a, 3)) < 1e-12
    eye = np.eye(4)
    assert rel_err(mixed_exterior([a, eye, eye]) / math.factorial(2), additive_compound(a, 3)) < 1e-12
    with pytest.raises(DomainError):
        mixed_exterior([a, a], 3)


def test_mixed_exterior_symmetric_and_multilinear(rng):
    a, b, c = (rand_herm(rng, 4) for _ in range(3))
    m = mixed_exterior([a, b, c])
    assert rel_err(m, mixed_exterior([c, a, b])) < 1e-12
    lin = mixed_exterior([2 * a + b, b, c])
    assert rel_err(lin, 2 * m + mixed_exterior([b, b, c])) < 1e-12


@given(seeds, st.integers(1, 5), st.data())
def test_cauchy_binet(seed, n, data):
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    assert rel_err(compound(a @ b, k), compound(a, k) @ compound(b, k)) < 1e-10


@given(seeds, st.integers(1, 5), st.data())
def test_adjoint_inverse_unitary(seed, n, data):
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 3 * np.eye(n)
    ca = compound(a, k)
    assert rel_err(compound(a.conj().T, k), ca.conj().T) < 1e-12
    assert rel_err(compound(np.linalg.inv(a), k), np.linalg.inv(ca)) < 1e-9
    u = compound(rand_unitary(rng, n), k)
    assert rel_err(u @ u.conj().T, np.eye(len(u))) < 1e-12


@given(seeds, st.integers(1, 5), st.data())
def test_compound_spectrum(seed, n, data):
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(seed)
    a = rand_herm(rng, n)
    w = np.linalg.eigvalsh(a)
    products = sorted(math.prod(c) for c in itertools.combinations(w, k))
    assert np.allclose(np.linalg.eigvalsh(compound(a, k)), products, atol=1e-11)
