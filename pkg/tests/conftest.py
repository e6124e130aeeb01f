import numpy as np
import pytest

from catdiscord import CatDampingParams

P_GRID = [round(0.05 * k, 10) for k in range(1, 20)]
RSQ_GRID = [round(0.1 * k, 10) for k in range(11)]


def dense_entropy(rho):
    w = np.linalg.eigvalsh(np.asarray(rho))
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def dense_ptrace(rho, keep):
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", r) if keep == "A" else np.einsum("ijil->jl", r)


def random_xstate_array(rng):
    """Random PSD X-state, complex anti-diagonals allowed."""
    d = rng.dirichlet(np.ones(4))
    m = np.diag(d).astype(complex)
    for (i, j) in ((0, 3), (1, 2)):
        bound = np.sqrt(d[i] * d[j])
        z = rng.uniform(0, bound) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        m[i, j], m[j, i] = z, np.conj(z)
    return m


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[(0.5, 0.5), (0.2, 0.3), (0.8, 0.7), (0.05, 0.9), (0.95, 0.1)])
def params(request):
    return CatDampingParams(*request.param)
