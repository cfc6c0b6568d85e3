"""Representations of a phylum: (M_i, M_a) with M_a : F_a(M_s(a)) -> M_t(a).

Morphisms are dicts vertex -> matrix.  All structure maps live in the cached
tensor bases of tensor_over, so every construction below transports through
the stored surjections and sections.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algebra import (Algebra, LeftModule, direct_sum, hom_over, tensor_over,
                      zero_module)
from .phylum import (CMorphism, CObject, Phylum, c_compose, c_identity, c_zero)

RepMorphism = Dict[str, np.ndarray]


class PhylumMismatch(ValueError):
    pass


class NotAMorphism(ValueError):
    pass


class Representation:
    def __init__(self, phylum: Phylum, obj: CObject, maps: Dict[str, np.ndarray], name: str = ""):
        if obj.phylum is not phylum:
            raise PhylumMismatch("object belongs to a different phylum")
        self.phylum = phylum
        self.obj = obj
        self.maps = {}
        q = phylum.quiver
        for a in q.arrows:
            rows = obj.dim(q.tgt(a))
            cols = phylum.fun(a).F(obj.module(q.src(a))).dim
            m = maps.get(a)
            m = la.zeros(rows, cols) if m is None else np.asarray(m, dtype=np.int64) % la.prime()
            if m.shape != (rows, cols):
                raise la.DimensionMismatch(f"map on arrow {a} must be {rows}x{cols}, got {m.shape}")
            self.maps[a] = m
        self.name = name

    def dim(self, v: str) -> int:
        return self.obj.dim(v)

    def dim_vector(self) -> Tuple[int, ...]:
        return self.obj.dim_vector()

    def module(self, v: str) -> LeftModule:
        return self.obj.module(v)

    def is_zero(self) -> bool:
        return self.obj.is_zero()

    def check(self) -> None:
        q = self.phylum.quiver
        for a in q.arrows:
            src = self.phylum.fun(a).F(self.module(q.src(a)))
            tgt = self.module(q.tgt(a))
            m = self.maps[a]
            for g in tgt.algebra.generators:
                if not la.equal(la.mul(m, src.actions[g]), la.mul(tgt.actions[g], m)):
                    raise NotAMorphism(f"structure map on arrow {a} is not linear over A_{q.tgt(a)}")

    def __repr__(self):
        return f"Representation(dims={self.dim_vector()})"


@dataclass
class ShortExactSeq:
    a: Representation
    b: Representation
    c: Representation
    f: RepMorphism
    g: RepMorphism

    def exactness(self) -> Dict[str, bool]:
        vs = self.a.phylum.quiver.vertices
        mono = all(la.rank(self.f[v]) == self.a.dim(v) for v in vs)
        epi = all(la.rank(self.g[v]) == self.c.dim(v) for v in vs)
        comp = all(la.is_zero(la.mul(self.g[v], self.f[v])) for v in vs)
        middle = all(self.b.dim(v) == self.a.dim(v) + self.c.dim(v) for v in vs)
        return {"left": mono, "right": epi, "composite_zero": comp, "middle": middle,
                "f_morphism": is_morphism(self.f, self.a, self.b),
                "g_morphism": is_morphism(self.g, self.b, self.c)}

    def is_exact(self) -> bool:
        return all(self.exactness().values())


# -- basic constructions ------------------------------------------------------

def from_modules(ph: Phylum, modules: Dict[str, LeftModule], maps: Dict[str, np.ndarray]) -> Representation:
    return Representation(ph, ph.obj(modules), maps)


def zero_rep(ph: Phylum) -> Representation:
    return Representation(ph, ph.zero(), {})


def h1(m: Representation) -> CMorphism:
    """X(M) -> M assembled from the structure maps."""
    q = m.phylum.quiver
    return {v: la.hstack([m.maps[a] for a in q.into(v)], m.dim(v)) for v in q.vertices}


def h1_adj(m: Representation) -> CMorphism:
    """M -> Y(M), the adjoint of h1 under X -| Y."""
    ph = m.phylum
    return ph.adj_XY(h1(m), m.obj, m.obj)


def from_h1(ph: Phylum, obj: CObject, h: CMorphism) -> Representation:
    q = ph.quiver
    maps = {}
    for v in q.vertices:
        o = 0
        for a in q.into(v):
            w = ph.fun(a).F(obj.module(q.src(a))).dim
            maps[a] = h[v][:, o:o + w]
            o += w
    return Representation(ph, obj, maps)


def direct_sum_reps(reps: Sequence[Representation]) -> Representation:
    from .phylum import c_direct_sum
    ph = reps[0].phylum
    obj = c_direct_sum([r.obj for r in reps])
    hs = [h1(r) for r in reps]
    h = {v: la.block_diag(*[x[v] for x in hs]) for v in ph.quiver.vertices}
    return from_h1(ph, obj, h)


def identity(m: Representation) -> RepMorphism:
    return c_identity(m.obj)


def zero_map(m: Representation, n: Representation) -> RepMorphism:
    return c_zero(m.obj, n.obj)


def compose(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    return c_compose(g, f)


def is_morphism(f: RepMorphism, m: Representation, n: Representation) -> bool:
    ph = m.phylum
    q = ph.quiver
    for v in q.vertices:
        if f[v].shape != (n.dim(v), m.dim(v)):
            return False
        mm, nn = m.module(v), n.module(v)
        for g in mm.algebra.generators:
            if not la.equal(la.mul(f[v], mm.actions[g]), la.mul(nn.actions[g], f[v])):
                return False
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        lhs = la.mul(f[t], m.maps[a])
        rhs = la.mul(n.maps[a], ph.fun(a).F_map(f[s], m.module(s), n.module(s)))
        if not la.equal(lhs, rhs):
            return False
    return True


# -- hom spaces -------------------------------------------------------------

_coeff_cache: Dict[tuple, np.ndarray] = {}
la.on_prime_change(_coeff_cache.clear)


def tensor_map_coeffs(b, src: LeftModule, tgt: LeftModule) -> np.ndarray:
    """Matrix sending vec(f) (row-major) to vec(b (x) f) for f : src -> tgt."""
    key = (b.uid, src.key(), tgt.key())
    hit = _coeff_cache.get(key)
    if hit is not None:
        return hit
    s = tensor_over(b, src)
    t = tensor_over(b, tgt)
    db = b.dim
    P = t.proj.reshape(t.proj.shape[0], tgt.dim, db)
    S = s.sec.reshape(src.dim, db, s.sec.shape[1])
    c = np.einsum("rix,jxc->rcij", P, S) % la.prime()
    out = c.reshape(P.shape[0] * S.shape[2], tgt.dim * src.dim)
    _coeff_cache[key] = out
    return out


def _linearity_rows(mm: LeftModule, nn: LeftModule) -> List[np.ndarray]:
    dn, dm = nn.dim, mm.dim
    return [la.sub(la.kron(la.eye(dn), mm.actions[g].T), la.kron(nn.actions[g], la.eye(dm)))
            for g in mm.algebra.generators]


def _hom_system(m: Representation, n: Representation) -> Tuple[np.ndarray, Dict[str, Tuple[int, int]]]:
    if m.phylum is not n.phylum:
        raise PhylumMismatch("representations over different phyla")
    ph = m.phylum
    q = ph.quiver
    offs, o = {}, 0
    for v in q.vertices:
        offs[v] = (o, n.dim(v) * m.dim(v))
        o += n.dim(v) * m.dim(v)
    total = o
    rows = []
    for v in q.vertices:
        if not offs[v][1]:
            continue
        for blk in _linearity_rows(m.module(v), n.module(v)):
            r = la.zeros(blk.shape[0], total)
            r[:, offs[v][0]: offs[v][0] + offs[v][1]] = blk
            rows.append(r)
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        fs = ph.fun(a).F(m.module(s)).dim
        nr = n.dim(t) * fs
        if nr == 0:
            continue
        r = la.zeros(nr, total)
        # phi_t M_a  -  N_a F(phi_s)
        if offs[t][1]:
            r[:, offs[t][0]: offs[t][0] + offs[t][1]] = la.kron(la.eye(n.dim(t)), m.maps[a].T)
        if offs[s][1]:
            coeff = tensor_map_coeffs(ph.bimodules[a], m.module(s), n.module(s))
            r[:, offs[s][0]: offs[s][0] + offs[s][1]] = la.neg(
                la.mul(la.kron(n.maps[a], la.eye(fs)), coeff))
        rows.append(r % la.prime())
    sys = la.vstack(rows, total) if rows else la.zeros(0, total)
    return sys, offs


def _unvec(vec: np.ndarray, m: Representation, n: Representation, offs) -> RepMorphism:
    return {v: vec[o: o + w].reshape(n.dim(v), m.dim(v)) for v, (o, w) in offs.items()}


def hom_space(m: Representation, n: Representation) -> List[RepMorphism]:
    sys, offs = _hom_system(m, n)
    total = sys.shape[1]
    if total == 0:
        return []
    ker = la.kernel_basis(sys) if sys.shape[0] else la.eye(total)
    return [_unvec(ker[:, k], m, n, offs) for k in range(ker.shape[1])]


def hom_dim(m: Representation, n: Representation) -> int:
    sys, _ = _hom_system(m, n)
    return sys.shape[1] - (la.rank(sys) if sys.shape[0] else 0)


def combine(basis: Sequence[RepMorphism], coeffs, m: Representation, n: Representation) -> RepMorphism:
    out = zero_map(m, n)
    for c, f in zip(coeffs, basis):
        if c:
            out = {v: (out[v] + int(c) * f[v]) % la.prime() for v in out}
    return out


def random_morphism(m: Representation, n: Representation, rng: np.random.Generator) -> RepMorphism:
    basis = hom_space(m, n)
    return combine(basis, rng.integers(0, la.prime(), size=len(basis)), m, n)


# -- kernels and cokernels --------------------------------------------------

def c_kernel(f: CMorphism, a: CObject) -> Tuple[CObject, CMorphism]:
    ph = a.phylum
    mods, incl = {}, {}
    for v in ph.quiver.vertices:
        k = la.kernel_basis(f[v]) if a.dim(v) else la.zeros(0, 0)
        incl[v] = k
        mods[v] = a.module(v).restrict(k) if k.shape[1] else zero_module(ph.algebras[v])
    return ph.obj(mods), incl


def c_cokernel(f: CMorphism, b: CObject) -> Tuple[CObject, CMorphism, CMorphism]:
    """Cokernel object, projection and the coordinate section."""
    ph = b.phylum
    mods, proj, sec = {}, {}, {}
    for v in ph.quiver.vertices:
        p, coords = la.cokernel_data(f[v])
        s = la.section(b.dim(v), coords)
        proj[v], sec[v] = p, s
        mods[v] = b.module(v).quotient(p, s) if coords else zero_module(ph.algebras[v])
    return ph.obj(mods), proj, sec


def kernel(f: RepMorphism, m: Representation, n: Representation) -> Tuple[Representation, RepMorphism]:
    ph = m.phylum
    q = ph.quiver
    obj, incl = c_kernel(f, m.obj)
    maps = {}
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        img = la.mul(m.maps[a], ph.fun(a).F_map(incl[s], obj.module(s), m.module(s)))
        x = la.solve(incl[t], img)
        if x is None:
            raise NotAMorphism("kernel is not closed under the structure maps")
        maps[a] = x
    return Representation(ph, obj, maps), incl


def cokernel(f: RepMorphism, m: Representation, n: Representation) -> Tuple[Representation, RepMorphism]:
    ph = m.phylum
    q = ph.quiver
    obj, proj, sec = c_cokernel(f, n.obj)
    maps = {}
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        maps[a] = la.mul(proj[t], n.maps[a], ph.fun(a).F_map(sec[s], obj.module(s), n.module(s)))
    return Representation(ph, obj, maps), proj


def image(f: RepMorphism, m: Representation, n: Representation) -> Tuple[Representation, RepMorphism]:
    ph = m.phylum
    q = ph.quiver
    mods, incl = {}, {}
    for v in q.vertices:
        im = la.image_basis(f[v]) if f[v].size else la.zeros(n.dim(v), 0)
        incl[v] = im
        mods[v] = n.module(v).restrict(im) if im.shape[1] else zero_module(ph.algebras[v])
    obj = ph.obj(mods)
    maps = {}
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        img = la.mul(n.maps[a], ph.fun(a).F_map(incl[s], obj.module(s), n.module(s)))
        maps[a] = la.solve(incl[t], img)
    return Representation(ph, obj, maps), incl


def is_injective(f: RepMorphism, m: Representation) -> bool:
    return all(la.rank(f[v]) == m.dim(v) for v in f)


def is_surjective(f: RepMorphism, n: Representation) -> bool:
    return all(la.rank(f[v]) == n.dim(v) for v in f)


def is_iso_map(f: RepMorphism) -> bool:
    return all(la.is_invertible(x) for x in f.values())


# -- Mono / Epi and the top / socle functors --------------------------------

def is_mono_object(m: Representation) -> bool:
    h = h1(m)
    x = m.phylum.X(m.obj)
    return all(la.rank(h[v]) == x.dim(v) for v in m.phylum.quiver.vertices)


def is_epi_object(m: Representation) -> bool:
    h = h1_adj(m)
    y = m.phylum.Y(m.obj)
    return all(la.rank(h[v]) == y.dim(v) for v in m.phylum.quiver.vertices)


def top_functor(m: Representation) -> Tuple[CObject, CMorphism]:
    obj, proj, _ = c_cokernel(h1(m), m.obj)
    return obj, proj


def socle_functor(m: Representation) -> Tuple[CObject, CMorphism]:
    return c_kernel(h1_adj(m), m.obj)


def L1_top(m: Representation) -> CObject:
    return c_kernel(h1(m), m.phylum.X(m.obj))[0]


def R1_socle(m: Representation) -> CObject:
    return c_cokernel(h1_adj(m), m.phylum.Y(m.obj))[0]


def simple_embed(c: CObject) -> Representation:
    return Representation(c.phylum, c, {})


def c_hom_dim(a: CObject, b: CObject) -> int:
    return sum(len(hom_over(a.module(v), b.module(v))) for v in a.phylum.quiver.vertices)


# -- modules over the vertex algebras -----------------------------------------

def simple_module(alg: Algebra, e: int) -> LeftModule:
    acts = [la.eye(1) if i == e else la.zeros(1, 1) for i in range(alg.dim)]
    return LeftModule(alg, 1, acts)


def projective_module(alg: Algebra, e: int) -> LeftModule:
    """A e, spanned by basis elements b with b * e = b."""
    return alg.regular().restrict(la.image_basis(alg.rmul(e)))


def conjugate(m: LeftModule, g: np.ndarray) -> LeftModule:
    gi = la.inverse(g)
    return LeftModule(m.algebra, m.dim, [la.mul(g, a, gi) for a in m.actions])


def random_module(alg: Algebra, rng: np.random.Generator, max_dim: int) -> LeftModule:
    """Random sum of indecomposable projectives and simples, in a random basis."""
    pieces, d = [], 0
    target = int(rng.integers(0, max_dim + 1))
    blocks = [simple_module(alg, e) for e in alg.idempotents]
    blocks += [projective_module(alg, e) for e in alg.idempotents]
    blocks = [b for b in blocks if b.dim <= max_dim]
    while d < target:
        fit = [b for b in blocks if d + b.dim <= target]
        if not fit:
            break
        b = fit[int(rng.integers(0, len(fit)))]
        pieces.append(b)
        d += b.dim
    if not pieces:
        return zero_module(alg)
    m = direct_sum(pieces)
    return conjugate(m, la.random_invertible(rng, m.dim))


def random_representation(ph: Phylum, rng: np.random.Generator, max_dim: int = 3,
                          zero_prob: float = 0.15) -> Representation:
    q = ph.quiver
    mods = {v: random_module(ph.algebras[v], rng, max_dim) for v in q.vertices}
    obj = ph.obj(mods)
    maps = {}
    for a in q.arrows:
        src = ph.fun(a).F(obj.module(q.src(a)))
        basis = hom_over(src, obj.module(q.tgt(a)))
        if not basis or rng.random() < zero_prob:
            continue
        c = rng.integers(0, la.prime(), size=len(basis))
        f = la.zeros(*basis[0].shape)
        for ci, b in zip(c, basis):
            f = f + int(ci) * b
        maps[a] = f % la.prime()
    return Representation(ph, obj, maps)


# -- isomorphism test -------------------------------------------------------

def _singular_everywhere(basis: Sequence[RepMorphism], m: Representation) -> Optional[str]:
    """Vertex at which every element of span(basis) is singular by a rank argument."""
    for v in m.phylum.quiver.vertices:
        d = m.dim(v)
        if d == 0:
            continue
        stacked_cols = la.hstack([f[v] for f in basis], d) if basis else la.zeros(d, 0)
        stacked_rows = la.vstack([f[v] for f in basis], d) if basis else la.zeros(0, d)
        if la.rank(stacked_cols) < d or la.rank(stacked_rows) < d:
            return v
    return None


def find_isomorphism(m: Representation, n: Representation, rng: Optional[np.random.Generator] = None,
                     tries: int = 64) -> Tuple[str, Optional[RepMorphism]]:
    """("isomorphic", f) / ("not isomorphic", None) / ("undetermined", None)."""
    if m.dim_vector() != n.dim_vector():
        return "not isomorphic", None
    if m.is_zero():
        return "isomorphic", zero_map(m, n)
    basis = hom_space(m, n)
    if not basis:
        return "not isomorphic", None
    if _singular_everywhere(basis, m) is not None:
        return "not isomorphic", None
    if hom_dim(m, m) != hom_dim(n, n) or hom_dim(m, m) != len(basis) or hom_dim(n, m) != len(basis):
        return "not isomorphic", None
    for f in basis:
        if is_iso_map(f):
            return "isomorphic", f
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(tries):
        f = combine(basis, rng.integers(0, la.prime(), size=len(basis)), m, n)
        if is_iso_map(f):
            return "isomorphic", f
    return "undetermined", None


def is_isomorphic(m: Representation, n: Representation, rng=None) -> bool:
    verdict, _ = find_isomorphism(m, n, rng)
    if verdict == "undetermined":
        raise RuntimeError("isomorphism test undetermined")
    return verdict == "isomorphic"
