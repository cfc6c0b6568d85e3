"""Small phyla used by the tests, the CLI and the acceptance suite."""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import Bimodule, dual_numbers, field_algebra, regular_bimodule
from .phylum import Phylum, ShapeQuiver


def _k_phylum(vertices, arrows, name):
    k = field_algebra()
    algs = {v: k for v in vertices}
    bims = {a: regular_bimodule(k, name=f"k_{a}") for a, _, _ in arrows}
    return Phylum(ShapeQuiver(vertices, arrows), algs, bims, name=name)


def f1() -> Phylum:
    """1 -a-> 2 with k everywhere."""
    return _k_phylum(["1", "2"], [("a", "1", "2")], "F1")


def f2() -> Phylum:
    """1 -a-> 2 -b-> 3 with k everywhere."""
    return _k_phylum(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], "F2")


def f3() -> Phylum:
    """1 -a-> 3 <-b- 2 with k everywhere."""
    return _k_phylum(["1", "2", "3"], [("a", "1", "3"), ("b", "2", "3")], "F3")


def _dual_numbers_over_k(simple: bool = False):
    k = field_algebra()
    d = dual_numbers()
    if simple:
        # k[l]/l^2 acting on k through l = 0: not projective on the left
        left = [la.eye(1), la.zeros(1, 1)]
        return k, d, Bimodule(d, k, 1, left, [la.eye(1)], name="S")
    left = [d.lmul(i) for i in range(d.dim)]
    return k, d, Bimodule(d, k, d.dim, left, [la.eye(d.dim)], name="D")


def f4() -> Phylum:
    """1 -a-> 2 with A_1 = k, A_2 = k[l]/l^2 and M_a = A_2."""
    k, d, b = _dual_numbers_over_k()
    return Phylum(ShapeQuiver(["1", "2"], [("a", "1", "2")]), {"1": k, "2": d}, {"a": b}, name="F4")


def f4_broken() -> Phylum:
    """As f4 but with the simple bimodule, which is not projective on the left."""
    k, d, b = _dual_numbers_over_k(simple=True)
    return Phylum(ShapeQuiver(["1", "2"], [("a", "1", "2")]), {"1": k, "2": d}, {"a": b}, name="F4-broken")


def f5() -> Phylum:
    """1 -a-> 2 with k[l]/l^2 at both vertices and the regular bimodule.

    Extra fixture: here Mono contains objects such as (k in k[l]/l^2) that are
    not relatively projective, so the almost split statements are not vacuous.
    """
    d = dual_numbers()
    return Phylum(ShapeQuiver(["1", "2"], [("a", "1", "2")]), {"1": d, "2": d},
                  {"a": regular_bimodule(d, name="D")}, name="F5")


FIXTURES = {"F1": f1, "F2": f2, "F3": f3, "F4": f4, "F4-broken": f4_broken, "F5": f5}


def get(name: str) -> Phylum:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name}; known: {sorted(FIXTURES)}") from None


def kvec(alg, n: int):
    """n copies of the unique simple over a local algebra whose idempotent is basis 0."""
    from .algebra import LeftModule
    acts = [la.eye(n) if i in alg.idempotents else la.zeros(n, n) for i in range(alg.dim)]
    return LeftModule(alg, n, acts)
