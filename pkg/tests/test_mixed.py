import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrace.errors import DomainError, ResourceLimitError
from ktrace.mixed import af_gap, mixed_discriminant, repeated, trace_k_from_mixed
from ktrace.traces import trace_k

from conftest import rand_herm, rand_pd

seeds = st.integers(0, 2**32 - 1)


def polarization(mats):
    """n! D = sum over subsets S of (-1)^(n-|S|) det(sum_{i in S} A_i)."""
    n = len(mats)
    total = 0.0
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            total += (-1) ** (n - r) * np.linalg.det(sum(mats[i] for i in sub)).real
    return total / math.factorial(n)


def test_frozen_two_by_two():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    b = np.diag([1.0, 4.0])
    assert mixed_discriminant([a, b]) == pytest.approx(5.5, abs=1e-14)


def test_reduces_to_det_and_identity(rng):
    a = rand_herm(rng, 4)
    assert mixed_discriminant([a] * 4) == pytest.approx(np.linalg.det(a).real, abs=1e-12)
    assert mixed_discriminant([np.eye(5)] * 5) == pytest.approx(1.0)
    d = [np.diag(rng.standard_normal(3)) for _ in range(3)]
    perm_sum = sum(
        d[p[0]][0, 0] * d[p[1]][1, 1] * d[p[2]][2, 2] for p in itertools.permutations(range(3))
    )
    assert mixed_discriminant(d) == pytest.approx(perm_sum / 6)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_polarization_oracle(rng, n):
    mats = [rand_herm(rng, n) for _ in range(n)]
    ref = polarization(mats)
    assert abs(mixed_discriminant(mats) - ref) <= 1e-10 * max(abs(ref), 1)


def test_argument_checks():
    with pytest.raises(DomainError):
        mixed_discriminant([np.eye(3)] * 2)
    with pytest.raises(ResourceLimitError):
        mixed_discriminant([np.eye(8)] * 8)
    with pytest.raises(DomainError):
        trace_k_from_mixed(np.eye(3), 4)


def test_repeated():
    a, b = np.eye(2), 2 * np.eye(2)
    assert [m[0, 0] for m in repeated((a, 2), (b, 1))] == [1, 1, 2]


def test_af_equality_for_proportional(rng):
    a, r1, r2 = rand_pd(rng, 4), rand_pd(rng, 4), rand_pd(rng, 4)
    g = af_gap(a, -2.5 * a, [r1, r2])
    assert abs(g.value) <= 1e-10 * g.scale


@given(seeds, st.integers(1, 6), st.data())
def test_trace_k_from_mixed_matches_eigen(seed, n, data):
    k = data.draw(st.integers(1, n))
    a = rand_herm(np.random.default_rng(seed), n)
    t, m = trace_k(a, k), trace_k_from_mixed(a, k)
    assert abs(t - m) <= 1e-9 * max(abs(t), 1)


@given(seeds, st.integers(2, 4))
def test_symmetric_and_multilinear(seed, n):
    rng = np.random.default_rng(seed)
    mats = [rand_herm(rng, n) for _ in range(n)]
    d = mixed_discriminant(mats)
    perm = list(rng.permutation(n))
    assert abs(mixed_discriminant([mats[i] for i in perm]) - d) <= 1e-10 * max(abs(d), 1)
    extra = rand_herm(rng, n)
    lhs = mixed_discriminant([3 * mats[0] + extra] + mats[1:])
    rhs = 3 * d + mixed_discriminant([extra] + mats[1:])
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1)


@given(seeds, st.integers(2, 4))
def test_af_inequality(seed, n):
    rng = np.random.default_rng(seed)
    a, b = rand_pd(rng, n), rand_herm(rng, n)
    rest = [rand_pd(rng, n) for _ in range(n - 2)]
    assert af_gap(a, b, rest).holds(1e-9)


@given(seeds, st.integers(1, 4))
def test_positive_on_pd(seed, n):
    rng = np.random.default_rng(seed)
    assert mixed_discriminant([rand_pd(rng, n) for _ in range(n)]) > 0
