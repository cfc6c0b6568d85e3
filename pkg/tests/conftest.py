import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from artifact import fixtures, linalg as la
from artifact.fixtures import kvec
from artifact.rep import from_modules

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(autouse=True)
def _default_prime():
    la.set_prime(101)
    yield
    la.set_prime(101)


def krep(ph, dims, maps=None):
    """Representation of a k-species from a dimension dict and nested-list maps."""
    mods = {v: kvec(ph.algebras[v], dims.get(v, 0)) for v in ph.quiver.vertices}
    q = ph.quiver
    out = {}
    for a in q.arrows:
        r, c = dims.get(q.tgt(a), 0), dims.get(q.src(a), 0)
        m = (maps or {}).get(a)
        out[a] = la.zeros(r, c) if m is None else la.mat(m, (r, c))
    return from_modules(ph, mods, out)


@pytest.fixture
def F1():
    return fixtures.f1()


@pytest.fixture
def a2(F1):
    """The four F1 representations used throughout."""
    return {
        "kk_id": krep(F1, {"1": 1, "2": 1}, {"a": [[1]]}),
        "kk_0": krep(F1, {"1": 1, "2": 1}, {"a": [[0]]}),
        "k00": krep(F1, {"1": 1}),
        "0k": krep(F1, {"2": 1}),
    }
