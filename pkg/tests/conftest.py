import numpy as np
import pytest

from spcreg import SpcrConfig, center, fit


def random_instance(seed, n=20, p=5, n_signal=2, noise=0.1):
    """Centered dataset with a sparse linear signal; deterministic per seed."""
    gen = np.random.default_rng(seed)
    x = gen.standard_normal((n, p))
    coef = np.zeros(p)
    coef[:n_signal] = gen.uniform(0.5, 2.0, size=min(n_signal, p))
    y = x @ coef + noise * gen.standard_normal(n)
    return center(x, y)


def default_config(k=2, lam_b=0.5, lam_g=0.5, **kw):
    return SpcrConfig(k=k, lambda_beta=lam_b, lambda_gamma=lam_g, **kw)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call compiles (or loads cached) numba kernels so individual
    # tests do not absorb the compile latency
    d = random_instance(0, n=10, p=3)
    fit(d, default_config(k=1, lam_b=1.0, lam_g=1.0))
