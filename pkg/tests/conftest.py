import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def cgauss(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def rand_herm(rng, n, scale=1.0):
    g = cgauss(rng, n)
    return scale * (g + g.conj().T) / 2


def rand_psd(rng, n):
    g = cgauss(rng, n)
    return g @ g.conj().T / n


def rand_pd(rng, n, floor=0.1):
    return rand_psd(rng, n) + floor * np.eye(n)


def rand_unitary(rng, n):
    q, r = np.linalg.qr(cgauss(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rel_err(x, y):
    x = np.asarray(x)
    y = np.asarray(y)
    scale = max(float(np.max(np.abs(x))), float(np.max(np.abs(y))), 1.0)
    return float(np.max(np.abs(x - y))) / scale
