"""Phyla on finite acyclic quivers and the endofunctors X, Y on C = prod mod A_i.

Objects of C carry a summand index: each vertex holds a list of labelled
pieces whose direct sum is the module at that vertex.  Because tensor_over is
strictly additive, X and Y can be applied to the total module or piecewise
with identical bases.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algebra import (Algebra, ArrowFunctors, Bimodule, DualCertificate, LeftModule,
                      direct_sum, dual_certificate, is_module_map, zero_module)


class CyclicQuiver(ValueError):
    pass


class PathError(ValueError):
    pass


class ShapeQuiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [str(a[0]) for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        self.arrows: Dict[str, Tuple[str, str]] = {}
        for name, s, t in sorted(arrows, key=lambda a: str(a[0])):
            if str(s) not in self.vertices or str(t) not in self.vertices:
                raise ValueError(f"arrow {name} has an unknown endpoint")
            self.arrows[str(name)] = (str(s), str(t))
        self.order = self._toposort()

    def _toposort(self) -> List[str]:
        indeg = {v: 0 for v in self.vertices}
        for s, t in self.arrows.values():
            indeg[t] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        out = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for a, (s, t) in self.arrows.items():
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        if len(out) != len(self.vertices):
            raise CyclicQuiver("quiver has an oriented cycle")
        return out

    def src(self, a: str) -> str:
        return self.arrows[a][0]

    def tgt(self, a: str) -> str:
        return self.arrows[a][1]

    def into(self, v: str) -> List[str]:
        return [a for a, (s, t) in self.arrows.items() if t == v]

    def out_of(self, v: str) -> List[str]:
        return [a for a, (s, t) in self.arrows.items() if s == v]

    def paths(self) -> List[Tuple[str, ...]]:
        """All paths of positive length, traversal order, sorted by (length, names)."""
        out = []
        layer = [(a,) for a in self.arrows]
        while layer:
            out.extend(layer)
            layer = [p + (a,) for p in layer for a in self.out_of(self.tgt(p[-1]))]
        return sorted(out, key=lambda p: (len(p), p))

    def longest_path(self) -> int:
        ps = self.paths()
        return max((len(p) for p in ps), default=0)

    def path_ends(self, q: Tuple[str, ...]) -> Tuple[str, str]:
        if not q:
            raise PathError("empty path has no endpoints")
        for a in q:
            if a not in self.arrows:
                raise PathError(f"unknown arrow {a}")
        for a, b in zip(q, q[1:]):
            if self.tgt(a) != self.src(b):
                raise PathError(f"arrows {a} and {b} are not composable")
        return self.src(q[0]), self.tgt(q[-1])


class CObject:
    """An object of C: per vertex a list of labelled module pieces."""

    def __init__(self, phylum: "Phylum", pieces: Dict[str, List[Tuple[tuple, LeftModule]]]):
        self.phylum = phylum
        self.pieces = {v: list(pieces.get(v, [])) for v in phylum.quiver.vertices}
        self._modules: Dict[str, LeftModule] = {}

    @classmethod
    def plain(cls, phylum: "Phylum", modules: Dict[str, LeftModule]) -> "CObject":
        pieces = {}
        for v in phylum.quiver.vertices:
            m = modules.get(v)
            if m is None:
                m = zero_module(phylum.algebras[v])
            pieces[v] = [((), m)]
        return cls(phylum, pieces)

    def module(self, v: str) -> LeftModule:
        if v not in self._modules:
            ps = [m for _, m in self.pieces[v]]
            self._modules[v] = ps[0] if len(ps) == 1 else direct_sum(ps, self.phylum.algebras[v])
        return self._modules[v]

    @property
    def modules(self) -> Dict[str, LeftModule]:
        return {v: self.module(v) for v in self.phylum.quiver.vertices}

    def dim(self, v: str) -> int:
        return sum(m.dim for _, m in self.pieces[v])

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dim(v) for v in self.phylum.quiver.vertices)

    def is_zero(self) -> bool:
        return not any(self.dim_vector())

    def offsets(self, v: str) -> List[Tuple[tuple, int, int]]:
        out, o = [], 0
        for lab, m in self.pieces[v]:
            out.append((lab, o, m.dim))
            o += m.dim
        return out


CMorphism = Dict[str, np.ndarray]


def c_zero(a: CObject, b: CObject) -> CMorphism:
    return {v: la.zeros(b.dim(v), a.dim(v)) for v in a.phylum.quiver.vertices}


def c_identity(a: CObject) -> CMorphism:
    return {v: la.eye(a.dim(v)) for v in a.phylum.quiver.vertices}


def c_compose(g: CMorphism, f: CMorphism) -> CMorphism:
    """g after f."""
    return {v: la.mul(g[v], f[v]) for v in f}


def c_add(f: CMorphism, g: CMorphism) -> CMorphism:
    return {v: la.add(f[v], g[v]) for v in f}


def c_sub(f: CMorphism, g: CMorphism) -> CMorphism:
    return {v: la.sub(f[v], g[v]) for v in f}


def c_neg(f: CMorphism) -> CMorphism:
    return {v: la.neg(f[v]) for v in f}


def c_equal(f: CMorphism, g: CMorphism) -> bool:
    return all(la.equal(f[v], g[v]) for v in f)


def c_is_morphism(f: CMorphism, a: CObject, b: CObject) -> bool:
    return all(is_module_map(f[v], a.module(v), b.module(v)) for v in a.phylum.quiver.vertices)


def c_direct_sum(objs: Sequence[CObject], tags: Optional[Sequence] = None) -> CObject:
    ph = objs[0].phylum
    tags = tags if tags is not None else list(range(len(objs)))
    pieces = {v: [((t,) + lab, m) for t, o in zip(tags, objs) for lab, m in o.pieces[v]]
              for v in ph.quiver.vertices}
    return CObject(ph, pieces)


class Phylum:
    """Finite acyclic quiver with an algebra per vertex and a dualisable bimodule per arrow."""

    def __init__(self, quiver: ShapeQuiver, algebras: Dict[str, Algebra], bimodules: Dict[str, Bimodule],
                 name: str = "", seed: int = 0):
        self.quiver = quiver
        self.algebras = {str(v): algebras[str(v)] for v in quiver.vertices}
        self.bimodules = {a: bimodules[a] for a in quiver.arrows}
        self.name = name
        self.seed = seed
        self._certs: Dict[str, DualCertificate] = {}
        self._fun: Dict[str, ArrowFunctors] = {}
        for a, (s, t) in quiver.arrows.items():
            b = self.bimodules[a]
            if b.left.uid != self.algebras[t].uid or b.right.uid != self.algebras[s].uid:
                raise ValueError(f"bimodule on arrow {a} must be over (A_{t}, A_{s})")

    def certificate(self, a: str) -> DualCertificate:
        if a not in self._certs:
            self._certs[a] = dual_certificate(self.bimodules[a], seed=self.seed)
        return self._certs[a]

    def fun(self, a: str) -> ArrowFunctors:
        if a not in self._fun:
            self._fun[a] = ArrowFunctors(self.certificate(a))
        return self._fun[a]

    def validate(self) -> Dict:
        report = {"acyclic": True, "arrows": {}}
        ok = True
        for a in self.quiver.arrows:
            self.bimodules[a].check()
            cert = self.certificate(a)
            report["arrows"][a] = {"dual_dim": cert.dual.dim, "triangles": dict(cert.report)}
            ok = ok and all(cert.report.values())
        report["pass"] = ok
        return report

    # -- objects ---------------------------------------------------------
    def obj(self, modules: Dict[str, LeftModule]) -> CObject:
        return CObject.plain(self, modules)

    def zero(self) -> CObject:
        return CObject.plain(self, {})

    def X(self, m: CObject) -> CObject:
        pieces = {}
        for v in self.quiver.vertices:
            ps = []
            for a in self.quiver.into(v):
                f = self.fun(a)
                for lab, n in m.pieces[self.quiver.src(a)]:
                    ps.append(((a,) + lab, f.F(n)))
            pieces[v] = ps
        return CObject(self, pieces)

    def Y(self, m: CObject) -> CObject:
        pieces = {}
        for v in self.quiver.vertices:
            ps = []
            for a in self.quiver.out_of(v):
                f = self.fun(a)
                for lab, n in m.pieces[self.quiver.tgt(a)]:
                    ps.append(((a,) + lab, f.G(n)))
            pieces[v] = ps
        return CObject(self, pieces)

    def X_map(self, f: CMorphism, a: CObject, b: CObject) -> CMorphism:
        out = {}
        for v in self.quiver.vertices:
            blocks = [self.fun(al).F_map(f[self.quiver.src(al)], a.module(self.quiver.src(al)),
                                         b.module(self.quiver.src(al))) for al in self.quiver.into(v)]
            out[v] = la.block_diag(*blocks) if blocks else la.zeros(0, 0)
        return out

    def Y_map(self, f: CMorphism, a: CObject, b: CObject) -> CMorphism:
        out = {}
        for v in self.quiver.vertices:
            blocks = [self.fun(al).G_map(f[self.quiver.tgt(al)], a.module(self.quiver.tgt(al)),
                                         b.module(self.quiver.tgt(al))) for al in self.quiver.out_of(v)]
            out[v] = la.block_diag(*blocks) if blocks else la.zeros(0, 0)
        return out

    def Xn(self, m: CObject, n: int) -> CObject:
        for _ in range(n):
            m = self.X(m)
        return m

    def Yn(self, m: CObject, n: int) -> CObject:
        for _ in range(n):
            m = self.Y(m)
        return m

    def Xn_map(self, f: CMorphism, a: CObject, b: CObject, n: int) -> CMorphism:
        for _ in range(n):
            f, a, b = self.X_map(f, a, b), self.X(a), self.X(b)
        return f

    def Yn_map(self, f: CMorphism, a: CObject, b: CObject, n: int) -> CMorphism:
        for _ in range(n):
            f, a, b = self.Y_map(f, a, b), self.Y(a), self.Y(b)
        return f

    # -- units and counits -------------------------------------------------
    # X -| Y comes from F_a -| G_a, Y -| X from G_a -| F_a.  All four are
    # diagonal in the arrow index.

    def _fg_dim(self, outer: str, inner: str, a: CObject, outer_is_F: bool) -> int:
        q = self.quiver
        if outer_is_F:
            n = a.module(q.tgt(inner))
            return self.fun(outer).F(self.fun(inner).G(n)).dim
        n = a.module(q.src(inner))
        return self.fun(outer).G(self.fun(inner).F(n)).dim

    def eta_XY(self, a: CObject) -> CMorphism:
        """a -> Y X a."""
        q = self.quiver
        out = {}
        for w in q.vertices:
            rows = []
            for be in q.out_of(w):
                for al in q.into(q.tgt(be)):
                    if al == be:
                        rows.append(self.fun(be).eta_FG(a.module(w)))
                    else:
                        rows.append(la.zeros(self._fg_dim(be, al, a, False), a.dim(w)))
            out[w] = la.vstack(rows, a.dim(w))
        return out

    def eps_XY(self, a: CObject) -> CMorphism:
        """X Y a -> a."""
        q = self.quiver
        out = {}
        for v in q.vertices:
            cols = []
            for al in q.into(v):
                for be in q.out_of(q.src(al)):
                    if al == be:
                        cols.append(self.fun(al).eps_FG(a.module(v)))
                    else:
                        cols.append(la.zeros(a.dim(v), self._fg_dim(al, be, a, True)))
            out[v] = la.hstack(cols, a.dim(v))
        return out

    def eta_YX(self, a: CObject) -> CMorphism:
        """a -> X Y a."""
        q = self.quiver
        out = {}
        for v in q.vertices:
            rows = []
            for al in q.into(v):
                for be in q.out_of(q.src(al)):
                    if al == be:
                        rows.append(self.fun(al).eta_GF(a.module(v)))
                    else:
                        rows.append(la.zeros(self._fg_dim(al, be, a, True), a.dim(v)))
            out[v] = la.vstack(rows, a.dim(v))
        return out

    def eps_YX(self, a: CObject) -> CMorphism:
        """Y X a -> a."""
        q = self.quiver
        out = {}
        for w in q.vertices:
            cols = []
            for be in q.out_of(w):
                for al in q.into(q.tgt(be)):
                    if al == be:
                        cols.append(self.fun(be).eps_GF(a.module(w)))
                    else:
                        cols.append(la.zeros(a.dim(w), self._fg_dim(be, al, a, False)))
            out[w] = la.hstack(cols, a.dim(w))
        return out

    def adj_XY(self, g: CMorphism, a: CObject, b: CObject) -> CMorphism:
        """Hom(X a, b) -> Hom(a, Y b): g -> Y(g) eta."""
        return c_compose(self.Y_map(g, self.X(a), b), self.eta_XY(a))

    def adj_YX(self, g: CMorphism, a: CObject, b: CObject) -> CMorphism:
        """Hom(Y a, b) -> Hom(a, X b): g -> X(g) eta."""
        return c_compose(self.X_map(g, self.Y(a), b), self.eta_YX(a))

    def adj_YX_inv(self, g: CMorphism, a: CObject, b: CObject) -> CMorphism:
        """Hom(a, X b) -> Hom(Y a, b): g -> eps Y(g)."""
        return c_compose(self.eps_YX(b), self.Y_map(g, a, self.X(b)))

    # -- path functors ----------------------------------------------------
    def path_functor(self, q: Sequence[str], n: LeftModule, direction: str = "forward") -> LeftModule:
        q = tuple(q)
        if not q:
            return n
        self.quiver.path_ends(q)
        if direction == "forward":
            for a in q:
                n = self.fun(a).F(n)
        elif direction == "backward":
            for a in reversed(q):
                n = self.fun(a).G(n)
        else:
            raise ValueError(f"unknown direction {direction}")
        return n
