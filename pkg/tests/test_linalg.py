import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact import linalg as la

P = 101


def matrices(max_r=5, max_c=5):
    return st.integers(0, max_r).flatmap(
        lambda r: st.integers(0, max_c).flatmap(
            lambda c: st.lists(st.integers(0, P - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: la.mat(xs, (r, c)))))


def test_rref_examples():
    r, piv = la.rref(la.mat([[2, 4], [1, 2]]))
    assert la.equal(r, la.mat([[1, 2], [0, 0]])) and piv == [0]
    r, piv = la.rref(la.eye(3))
    assert la.equal(r, la.eye(3)) and piv == [0, 1, 2]
    r, piv = la.rref(la.zeros(0, 0))
    assert r.shape == (0, 0) and piv == []


def test_kernel_examples():
    k = la.kernel_basis(la.mat([[1, 2]]))
    assert k.shape == (2, 1) and la.is_zero(la.mul(la.mat([[1, 2]]), k))
    assert la.equal(k, la.mat([[P - 2], [1]]))
    assert la.kernel_basis(la.mat([[1, 1], [0, 1]])).shape == (2, 0)
    assert la.rank(la.kernel_basis(la.zeros(2, 3))) == 3


def test_cokernel_examples():
    proj = la.cokernel_projection(la.mat([[1], [0]]))
    assert proj.shape == (1, 2) and la.is_zero(la.mul(proj, la.mat([[1], [0]]))) and la.rank(proj) == 1
    assert la.cokernel_projection(la.eye(2)).shape == (0, 2)
    assert la.equal(la.cokernel_projection(la.zeros(3, 3)), la.eye(3))


def test_solve_examples():
    b = la.mat([[3, 4], [5, 6]])
    assert la.equal(la.solve(la.eye(2), b), b)
    assert la.equal(la.solve(la.mat([[1, 1]]), la.mat([[3]])), la.mat([[3], [0]]))
    assert la.solve(la.mat([[0]]), la.mat([[1]])) is None
    with pytest.raises(la.DimensionMismatch):
        la.solve(la.eye(2), la.eye(3))


def test_kron_examples():
    assert la.equal(la.kron(la.eye(2), la.eye(3)), la.eye(6))
    assert la.equal(la.kron(la.mat([[2]]), la.mat([[3]])), la.mat([[6]]))
    assert la.equal(la.kron(la.mat([[1, 0]]), la.mat([[0], [1]])), la.mat([[0, 0], [1, 0]]))


def test_prime_guard():
    with pytest.raises(la.FieldError):
        la.set_prime(7)
    with pytest.raises(la.FieldError):
        la.set_prime(102)
    la.set_prime(103)
    assert la.prime() == 103


def test_json_round_trip():
    m = la.mat([[1, 2, 3], [4, 5, 6]])
    d = la.to_json(m)
    assert d["rows"] == 2 and d["cols"] == 3 and d["order"] == "row-major"
    assert la.equal(la.from_json(d), m)
    assert la.from_json({"rows": 0, "cols": 3, "entries": []}).shape == (0, 3)
    with pytest.raises(la.DimensionMismatch):
        la.from_json({"rows": 2, "cols": 2, "entries": [1]})


@given(matrices())
def test_rank_nullity(m):
    assert la.rank(m) + la.kernel_basis(m).shape[1] == m.shape[1]


@given(matrices())
def test_kernel_is_annihilated_and_independent(m):
    k = la.kernel_basis(m)
    assert la.is_zero(la.mul(m, k))
    assert la.rank(k) == k.shape[1]


@given(matrices())
def test_cokernel_exact(m):
    proj, coords = la.cokernel_data(m)
    assert la.is_zero(la.mul(proj, m))
    assert proj.shape[0] == m.shape[0] - la.rank(m)
    assert la.equal(la.mul(proj, la.section(m.shape[0], coords)), la.eye(len(coords)))


@given(matrices(), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_solve_recovers_consistent_systems(a, k, seed):
    rng = np.random.default_rng(seed)
    x = la.random_matrix(rng, a.shape[1], k)
    b = la.mul(a, x)
    y = la.solve(a, b)
    assert y is not None and la.equal(la.mul(a, y), b)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_inverse(n, seed):
    g = la.random_invertible(np.random.default_rng(seed), n)
    assert la.equal(la.mul(g, la.inverse(g)), la.eye(n))


@given(matrices(3, 3), matrices(3, 3), matrices(3, 3), matrices(3, 3))
def test_kron_mixed_product(a, b, c, d):
    if a.shape[1] != c.shape[0] or b.shape[1] != d.shape[0]:
        return
    assert la.equal(la.mul(la.kron(a, b), la.kron(c, d)), la.kron(la.mul(a, c), la.mul(b, d)))
