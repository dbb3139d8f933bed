import pytest

from certquad import Interval, builtin_corpus, mean_ref

INTERVALS = [(0.5, 1.5), (1.0, 2.0), (0.25, 3.0)]


@pytest.fixture(scope="session")
def corpus():
    return {m.name: m for m in builtin_corpus()}


@pytest.fixture(scope="session")
def oracle_mean():
    """Session cache of reference means, keyed by (function, a, b)."""
    cache = {}

    def lookup(f, a, b, tol=1e-12):
        key = (f.name, float(a), float(b), tol)
        if key not in cache:
            cache[key] = mean_ref(f, Interval(a, b), tol=tol)
        return cache[key]

    return lookup
