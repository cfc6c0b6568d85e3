import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact import fixtures, linalg as la
from artifact.fixtures import kvec
from artifact.nakayama import (counit_nu, f_shriek, f_star, injective_copresentation, is_gorenstein_projective, nu,
                               nu_minus, nu_minus_on_morphism, nu_on_morphism, standard_resolution, tau,
                               tau_minus, tau_minus_via_copresentation, tau_via_resolution, unit_nu)
from artifact.preprojective import find_retraction
from artifact.rep import (find_isomorphism, is_injective, is_iso_map, is_isomorphic, is_mono_object, is_morphism,
                          is_surjective, kernel, cokernel, random_morphism, random_representation, zero_rep, compose,
                          hom_dim)

FIX = ["F1", "F2", "F3", "F4", "F5"]


def _c(ph, dims):
    return ph.obj({v: kvec(ph.algebras[v], dims.get(v, 0)) for v in ph.quiver.vertices})


def test_relative_projective_and_injective_examples(F1, a2):
    assert is_isomorphic(f_shriek(_c(F1, {"1": 1})), a2["kk_id"])
    assert is_isomorphic(f_star(_c(F1, {"2": 1})), a2["kk_id"])
    assert f_shriek(F1.zero()).is_zero() and f_star(F1.zero()).is_zero()


def test_standard_resolution_example(F1, a2):
    s = standard_resolution(a2["kk_id"])
    assert s.is_exact()
    assert s.b.dim_vector() == (1, 2) and s.a.dim_vector() == (0, 1)
    s0 = standard_resolution(zero_rep(F1))
    assert s0.a.is_zero() and s0.b.is_zero()


def test_standard_resolution_splits_on_relative_projectives(F1):
    m = f_shriek(_c(F1, {"1": 1, "2": 1}))
    s = standard_resolution(m)
    assert find_retraction(s.f, s.a, s.b) is not None


@pytest.mark.parametrize("key,nu_dims,num_dims,tau_dims,taum_dims,gp", [
    ("kk_id", (1, 0), (0, 1), (0, 0), (0, 0), True),
    ("kk_0", (1, 1), (1, 1), (0, 1), (1, 0), False),
    ("k00", (0, 0), (1, 1), (0, 1), (0, 0), False),
    ("0k", (1, 1), (0, 0), (0, 0), (1, 0), True),
])
def test_a2_table(a2, key, nu_dims, num_dims, tau_dims, taum_dims, gp):
    m = a2[key]
    assert nu(m).value.dim_vector() == nu_dims
    assert nu_minus(m).value.dim_vector() == num_dims
    assert tau(m).value.dim_vector() == tau_dims
    assert tau_minus(m).value.dim_vector() == taum_dims
    assert is_gorenstein_projective(m)[0] is gp


def test_nu_of_kk0_is_the_projection(a2):
    v = nu(a2["kk_0"]).value
    assert la.rank(v.maps["a"]) == 1
    w = nu_minus(a2["kk_0"]).value
    assert la.rank(w.maps["a"]) == 1


def test_nu_exchanges_relative_projectives_and_injectives(F1):
    c = _c(F1, {"1": 1, "2": 2})
    assert is_isomorphic(nu(f_shriek(c)).value, f_star(c))
    assert is_isomorphic(nu_minus(f_star(c)).value, f_shriek(c))
    assert nu_minus(zero_rep(F1)).value.is_zero()


def test_tau_examples(F1, a2):
    assert tau(a2["kk_id"]).value.is_zero()
    assert not tau(a2["k00"]).value.is_zero()
    assert tau(f_shriek(_c(F1, {"1": 2, "2": 1}))).value.is_zero()


def test_unit_examples(a2):
    u, tgt = unit_nu(a2["kk_id"])
    assert is_iso_map(u)
    m = a2["k00"]
    u, tgt = unit_nu(m)
    ku, _ = kernel(u, m, tgt)
    assert is_isomorphic(ku, tau_minus(tau(m).value).value)


def test_counit_iso_on_relative_injectives(F1):
    m = f_star(_c(F1, {"1": 1, "2": 1}))
    c, src = counit_nu(m)
    assert is_iso_map(c)


def test_gproj_examples(F1, a2):
    assert is_gorenstein_projective(f_shriek(_c(F1, {"1": 1})))[0]
    assert not is_gorenstein_projective(a2["k00"])[0]
    assert is_gorenstein_projective(zero_rep(F1))[0]


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_resolutions_exact(name, seed):
    m = random_representation(fixtures.get(name), np.random.default_rng(seed), 3)
    assert standard_resolution(m).is_exact()
    assert injective_copresentation(m).is_exact()


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_tau_routes_agree(name, seed):
    m = random_representation(fixtures.get(name), np.random.default_rng(seed), 3)
    assert is_isomorphic(tau(m).value, tau_via_resolution(m))
    assert is_isomorphic(tau_minus(m).value, tau_minus_via_copresentation(m))


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_gproj_criteria_agree(name, seed):
    m = random_representation(fixtures.get(name), np.random.default_rng(seed), 3)
    ok, rep = is_gorenstein_projective(m)
    assert len(set(rep.values())) == 1 and ok == is_mono_object(m)


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_unit_surjective_counit_injective(name, seed):
    m = random_representation(fixtures.get(name), np.random.default_rng(seed), 3)
    u, t = unit_nu(m)
    c, s = counit_nu(m)
    assert is_morphism(u, m, t) and is_surjective(u, t)
    assert is_morphism(c, s, m) and is_injective(c, s)
    cc, _ = cokernel(c, s, m)
    assert is_isomorphic(cc, tau(tau_minus(m).value).value)


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_nu_functorial(name, seed):
    ph = fixtures.get(name)
    rng = np.random.default_rng(seed)
    a, b, c = (random_representation(ph, rng, 2) for _ in range(3))
    f, g = random_morphism(a, b, rng), random_morphism(b, c, rng)
    pa, pb, pc = nu(a), nu(b), nu(c)
    nf, ng = nu_on_morphism(f, a, b, pa, pb), nu_on_morphism(g, b, c, pb, pc)
    assert is_morphism(nf, pa.value, pb.value)
    ngf = nu_on_morphism(compose(g, f), a, c, pa, pc)
    assert all(la.equal(ngf[v], la.mul(ng[v], nf[v])) for v in ph.quiver.vertices)
    qa, qb = nu_minus(a), nu_minus(b)
    assert is_morphism(nu_minus_on_morphism(f, a, b, qa, qb), qa.value, qb.value)


@pytest.mark.parametrize("name", FIX)
@given(seed=st.integers(0, 2**32 - 1))
def test_nu_adjunction_counts(name, seed):
    ph = fixtures.get(name)
    rng = np.random.default_rng(seed)
    a, b = random_representation(ph, rng, 2), random_representation(ph, rng, 2)
    assert hom_dim(nu(a).value, b) == hom_dim(a, nu_minus(b).value)
    assert hom_dim(tau_minus(a).value, b) == hom_dim(a, tau(b).value)
