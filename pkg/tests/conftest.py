import numpy as np
import pytest

from esdlab.mcstats import run_ensemble
from esdlab.qstate import RandomSpec


@pytest.fixture(scope="session")
def ensemble_cache():
    """Lazily built, session-shared evaluated ensembles keyed by
    (seed, count, mode, delta, with_normalized)."""
    cache = {}

    def get(seed, count, mode, delta, with_normalized=None):
        key = (seed, count, mode, delta, with_normalized)
        if key not in cache:
            spec = RandomSpec(seed=seed, count=count, spectrum_mode=mode)
            cache[key] = run_ensemble(spec, delta, with_normalized=with_normalized)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
