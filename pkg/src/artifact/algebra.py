"""Finite-dimensional algebras, their modules and bimodules, and duality certificates.

Algebras are stored by structure constants over a labelled basis.  Bound quiver
algebras are built from a presentation; the flattened tensor algebra of a
phylum uses the same class.  Paths are tuples of arrow names in traversal
order (first arrow first).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la

_uid = itertools.count()


class AlgebraError(ValueError):
    pass


class OwnerMismatch(ValueError):
    pass


class NotProjectiveLeft(ValueError):
    pass


class NotProjectiveRight(ValueError):
    pass


class NotDualisable(ValueError):
    pass


class Algebra:
    """Structure-constant algebra with a chosen radical basis and primitive idempotents.

    mult[i, j] is the coordinate vector of b_i * b_j.  The radical is spanned
    by the basis vectors listed in `radical`, the primitive idempotents are
    the basis vectors listed in `idempotents`.
    """

    def __init__(self, labels, mult, radical, idempotents, generators=None, name=""):
        self.uid = next(_uid)
        self.labels = list(labels)
        self.mult = np.asarray(mult, dtype=np.int64) % la.prime()
        self.radical = list(radical)
        self.idempotents = list(idempotents)
        self.generators = list(generators) if generators is not None else list(range(self.dim))
        self.name = name
        self._lmul = [self.mult[i].T.copy() for i in range(self.dim)]
        self._rmul = [self.mult[:, i].T.copy() for i in range(self.dim)]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def unit(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        for i in self.idempotents:
            u[i] = 1
        return u

    def lmul(self, i: int) -> np.ndarray:
        """Matrix of y -> b_i * y."""
        return self._lmul[i]

    def rmul(self, i: int) -> np.ndarray:
        """Matrix of y -> y * b_i."""
        return self._rmul[i]

    def lmul_vec(self, x: np.ndarray) -> np.ndarray:
        out = la.zeros(self.dim, self.dim)
        for i in np.flatnonzero(x):
            out = out + int(x[i]) * self._lmul[i]
        return out % la.prime()

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return la.mul(self.lmul_vec(x), y.reshape(-1, 1)).reshape(-1)

    def opposite(self) -> "Algebra":
        return Algebra(self.labels, self.mult.transpose(1, 0, 2), self.radical,
                       self.idempotents, self.generators, name=self.name + "^op")

    def regular(self) -> "LeftModule":
        return LeftModule(self, self.dim, self._lmul)

    def check(self) -> None:
        p = la.prime()
        m = self.mult
        left = np.einsum("ijk,klm->ijlm", m, m) % p
        right = np.einsum("jlk,ikm->ijlm", m, m) % p
        if np.any((left - right) % p):
            raise AlgebraError(f"{self.name}: multiplication is not associative")
        u = self.unit()
        for i in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[i] = 1
            if not la.equal(self.product(u, e), e) or not la.equal(self.product(e, u), e):
                raise AlgebraError(f"{self.name}: unit does not act as identity")


def _path_source(path, arrows):
    return arrows[path[0]][0]


def _path_target(path, arrows):
    return arrows[path[-1]][1]


class BoundQuiverAlgebra(Algebra):
    """kQ / I with basis of normal-form paths (length, then lexicographic)."""

    def __init__(self, vertices, arrows, relations, nilpotency_bound, name=""):
        self.vertices = [str(v) for v in vertices]
        self.arrows = {str(a): (str(s), str(t)) for a, s, t in arrows}
        if len(self.arrows) != len(arrows):
            raise AlgebraError("duplicate arrow names")
        if "@" in self.arrows:
            raise AlgebraError("arrow name '@' is reserved")
        for a, (s, t) in self.arrows.items():
            if s not in self.vertices or t not in self.vertices:
                raise AlgebraError(f"arrow {a} has an unknown endpoint")
        self.relations = [{tuple(p): int(c) for p, c in r} for r in relations]
        self.bound = int(nilpotency_bound)
        basis, normal_form = self._reduce()
        self.paths = basis
        self._normal_form = normal_form
        index = {p: i for i, p in enumerate(basis)}
        n = len(basis)
        mult = np.zeros((n, n, n), dtype=np.int64)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                c = self._concat(b, a)
                if c is not None:
                    mult[i, j] = normal_form(c)
        labels = [self.path_label(p) for p in basis]
        radical = [i for i, p in enumerate(basis) if p[0] != "@"]
        idem = [i for i, p in enumerate(basis) if p[0] == "@"]
        gens = idem + [i for i, p in enumerate(basis) if p[0] != "@" and len(p) == 1]
        super().__init__(labels, mult, radical, idem, gens, name=name)
        self.index = index

    @staticmethod
    def path_label(p) -> str:
        if p[0] == "@":
            return "e_" + p[1]
        return "*".join(reversed(p))

    def path_len(self, p) -> int:
        return 0 if p[0] == "@" else len(p)

    def _src(self, p):
        return p[1] if p[0] == "@" else self.arrows[p[0]][0]

    def _tgt(self, p):
        return p[1] if p[0] == "@" else self.arrows[p[-1]][1]

    def _concat(self, first, then):
        """Path `first` followed by `then`, i.e. the product then * first."""
        if self._tgt(first) != self._src(then):
            return None
        if first[0] == "@":
            return then
        if then[0] == "@":
            return first
        return first + then

    def _all_paths(self, max_len):
        out = [("@", v) for v in sorted(self.vertices)]
        layer = [(a,) for a in sorted(self.arrows)]
        length = 1
        while layer and length <= max_len:
            out.extend(layer)
            nxt = []
            for p in layer:
                for a in sorted(self.arrows):
                    if self.arrows[a][0] == self._tgt(p):
                        nxt.append(p + (a,))
            layer = nxt
            length += 1
        return out

    def _reduce(self):
        top = self.bound + 1
        paths = self._all_paths(top)
        order = sorted(paths, key=lambda p: (self.path_len(p), p))
        pos = {p: i for i, p in enumerate(order)}
        gens = []
        for rel in self.relations:
            ends = {(self._src(p), self._tgt(p)) for p in rel}
            if len(ends) != 1:
                raise AlgebraError(f"relation {rel} involves non-parallel paths")
            if any(self.path_len(p) < 2 for p in rel):
                raise AlgebraError(f"relation {rel} has a path of length < 2")
            s, t = ends.pop()
            for u in order:
                if self._src(u) != t:
                    continue
                for w in order:
                    if self._tgt(w) != s:
                        continue
                    vec = np.zeros(len(order), dtype=np.int64)
                    hit = False
                    for p, c in rel.items():
                        q = self._concat(self._concat(w, p), u)
                        if q is not None and q in pos:
                            vec[pos[q]] = (vec[pos[q]] + c) % la.prime()
                            hit = True
                    if hit and vec.any():
                        gens.append(vec)
        n = len(order)
        if gens:
            rev = np.array(gens, dtype=np.int64)[:, ::-1]
            r, piv = la.rref(rev)
            r = r[: len(piv)]
            leading = [n - 1 - c for c in piv]
        else:
            r, leading = la.zeros(0, n), []
        lead_set = {order[i] for i in leading}
        basis = [p for p in order if p not in lead_set]
        for p in basis:
            if self.path_len(p) > self.bound:
                raise AlgebraError(
                    f"path {p} of length {self.path_len(p)} survives reduction; "
                    f"algebra may be infinite-dimensional (bound {self.bound})")
        bpos = {p: i for i, p in enumerate(basis)}
        rows = {lead: r[i, ::-1] for i, lead in enumerate(leading)}

        def normal_form(path):
            out = np.zeros(len(basis), dtype=np.int64)
            if path not in pos:
                return out
            vec = np.zeros(n, dtype=np.int64)
            vec[pos[path]] = 1
            for lead in sorted(leading, reverse=True):
                c = vec[lead]
                if c:
                    vec = (vec - c * rows[lead]) % la.prime()
            for p, i in bpos.items():
                out[i] = vec[pos[p]]
            return out

        return basis, normal_form


def build_algebra(vertices, arrows, relations=(), nilpotency_bound=None, name="") -> BoundQuiverAlgebra:
    """arrows: (name, source, target); relations: lists of (path, coeff)."""
    if nilpotency_bound is None:
        nilpotency_bound = max(len(arrows), 1) if not relations else 2 * len(arrows) + 2
    return BoundQuiverAlgebra(vertices, arrows, relations, nilpotency_bound, name=name)


def field_algebra(name="k") -> BoundQuiverAlgebra:
    return build_algebra(["0"], [], [], 0, name=name)


def dual_numbers(name="k[l]/l^2") -> BoundQuiverAlgebra:
    return build_algebra(["0"], [("l", "0", "0")], [[(("l", "l"), 1)]], 1, name=name)


class LeftModule:
    """A left module: one action matrix per algebra basis element."""

    def __init__(self, algebra: Algebra, dim: int, actions: Sequence[np.ndarray]):
        self.algebra = algebra
        self.dim = int(dim)
        self.actions = [np.asarray(a, dtype=np.int64) % la.prime() for a in actions]
        if len(self.actions) != algebra.dim:
            raise AlgebraError("need one action matrix per basis element")
        self._key = None

    def key(self):
        if self._key is None:
            blob = b"".join(a.tobytes() for a in self.actions)
            self._key = (self.algebra.uid, self.dim, blob)
        return self._key

    def act(self, x: np.ndarray) -> np.ndarray:
        out = la.zeros(self.dim, self.dim)
        for i in np.flatnonzero(x):
            out = out + int(x[i]) * self.actions[i]
        return out % la.prime()

    def check(self) -> None:
        alg = self.algebra
        if not la.equal(self.act(alg.unit()), la.eye(self.dim)):
            raise AlgebraError("unit does not act as identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = la.mul(self.actions[i], self.actions[j])
                rhs = self.act(alg.mult[i, j])
                if not la.equal(lhs, rhs):
                    raise AlgebraError(f"action is not multiplicative on ({alg.labels[i]}, {alg.labels[j]})")

    def restrict(self, basis: np.ndarray) -> "LeftModule":
        """Submodule spanned by the columns of `basis` (assumed invariant)."""
        acts = []
        for a in self.actions:
            x = la.solve(basis, la.mul(a, basis))
            if x is None:
                raise AlgebraError("subspace is not a submodule")
            acts.append(x)
        return LeftModule(self.algebra, basis.shape[1], acts)

    def quotient(self, proj: np.ndarray, sec: np.ndarray) -> "LeftModule":
        return LeftModule(self.algebra, proj.shape[0], [la.mul(proj, a, sec) for a in self.actions])


def direct_sum(mods: Sequence[LeftModule], algebra: Optional[Algebra] = None) -> LeftModule:
    if not mods:
        return LeftModule(algebra, 0, [la.zeros(0, 0)] * algebra.dim)
    alg = mods[0].algebra
    acts = [la.block_diag(*[m.actions[i] for m in mods]) for i in range(alg.dim)]
    return LeftModule(alg, sum(m.dim for m in mods), acts)


def zero_module(algebra: Algebra) -> LeftModule:
    return LeftModule(algebra, 0, [la.zeros(0, 0)] * algebra.dim)


def is_module_map(f: np.ndarray, m: LeftModule, n: LeftModule) -> bool:
    if f.shape != (n.dim, m.dim):
        return False
    return all(la.equal(la.mul(f, m.actions[i]), la.mul(n.actions[i], f)) for i in m.algebra.generators)


class Bimodule:
    """A (left, right)-bimodule; right[i] is the matrix of x -> x * b_i."""

    def __init__(self, left: Algebra, right: Algebra, dim: int, left_actions, right_actions, name=""):
        self.uid = next(_uid)
        self.left = left
        self.right = right
        self.dim = int(dim)
        self.left_actions = [np.asarray(a, dtype=np.int64) % la.prime() for a in left_actions]
        self.right_actions = [np.asarray(a, dtype=np.int64) % la.prime() for a in right_actions]
        self.name = name

    def as_left(self) -> LeftModule:
        return LeftModule(self.left, self.dim, self.left_actions)

    def as_right(self) -> LeftModule:
        """Right module viewed as a left module over the opposite algebra."""
        return LeftModule(self.right.opposite(), self.dim, self.right_actions)

    def check(self) -> None:
        self.as_left().check()
        op = LeftModule(_op_cached(self.right), self.dim, self.right_actions)
        op.check()
        for a in self.left_actions:
            for b in self.right_actions:
                if not la.equal(la.mul(a, b), la.mul(b, a)):
                    raise AlgebraError(f"bimodule {self.name}: left and right actions do not commute")


_op_cache: Dict[int, Algebra] = {}


def _op_cached(alg: Algebra) -> Algebra:
    if alg.uid not in _op_cache:
        _op_cache[alg.uid] = alg.opposite()
    return _op_cache[alg.uid]


def regular_bimodule(alg: Algebra, name="") -> Bimodule:
    return Bimodule(alg, alg, alg.dim, [alg.lmul(i) for i in range(alg.dim)],
                    [alg.rmul(i) for i in range(alg.dim)], name=name or alg.name)


@dataclass
class TensorResult:
    """b (x)_A m with its surjection from the k-tensor space.

    The k-tensor space is indexed module-major: v (x) x sits at v * dim_b + x,
    which makes the construction strictly additive in m.
    """
    module: LeftModule
    proj: np.ndarray
    coords: List[int]

    @property
    def sec(self) -> np.ndarray:
        return la.section(self.proj.shape[1], self.coords)


_tensor_cache: Dict[tuple, TensorResult] = {}
la.on_prime_change(_tensor_cache.clear)
la.on_prime_change(_op_cache.clear)


def tensor_over(b: Bimodule, m: LeftModule) -> TensorResult:
    if m.algebra is not b.right and m.algebra.uid != b.right.uid:
        raise OwnerMismatch(f"module over {m.algebra.name} cannot be tensored with {b.name}")
    key = (b.uid, m.key())
    hit = _tensor_cache.get(key)
    if hit is not None:
        return hit
    db, dm = b.dim, m.dim
    big = dm * db
    cols = []
    for a in b.right.generators:
        cols.append(la.sub(la.kron(la.eye(dm), b.right_actions[a]), la.kron(m.actions[a], la.eye(db))))
    bal = la.hstack(cols, big) if big else la.zeros(0, 0)
    proj, coords = la.cokernel_data(bal)
    sec = la.section(big, coords)
    acts = [la.mul(proj, la.kron(la.eye(dm), b.left_actions[c]), sec) for c in range(b.left.dim)]
    res = TensorResult(LeftModule(b.left, len(coords), acts), proj, coords)
    _tensor_cache[key] = res
    return res


def tensor_map(b: Bimodule, f: np.ndarray, src: LeftModule, tgt: LeftModule) -> np.ndarray:
    """b (x) f : b (x) src -> b (x) tgt in the cached tensor bases."""
    s = tensor_over(b, src)
    t = tensor_over(b, tgt)
    return la.mul(t.proj, la.kron(f, la.eye(b.dim)), s.sec)


def hom_over(m: LeftModule, n: LeftModule) -> List[np.ndarray]:
    """Basis of Hom_A(m, n) as n.dim x m.dim matrices."""
    if m.algebra.uid != n.algebra.uid:
        raise OwnerMismatch("hom_over needs modules over the same algebra")
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    eqs = []
    for i in m.algebra.generators:
        eqs.append(la.sub(la.kron(la.eye(dn), m.actions[i].T), la.kron(n.actions[i], la.eye(dm))))
    ker = la.kernel_basis(la.vstack(eqs, dn * dm))
    return [ker[:, k].reshape(dn, dm) for k in range(ker.shape[1])]


def radical_image(m: LeftModule) -> np.ndarray:
    """Basis (columns) of rad(A) * m."""
    cols = [m.actions[i] for i in m.algebra.radical]
    if not cols or m.dim == 0:
        return la.zeros(m.dim, 0)
    return la.image_basis(la.hstack(cols, m.dim))


def top_multiplicities(m: LeftModule) -> List[int]:
    """Multiplicity of each simple (indexed like algebra.idempotents) in m / rad m."""
    proj, coords = la.cokernel_data(radical_image(m))
    sec = la.section(m.dim, coords)
    return [la.rank(la.mul(proj, m.actions[e], sec)) if coords else 0 for e in m.algebra.idempotents]


def is_projective(m: LeftModule) -> bool:
    alg = m.algebra
    cover = 0
    for e, mult in zip(alg.idempotents, top_multiplicities(m)):
        if mult:
            cover += mult * la.rank(alg.rmul(e))
    return cover == m.dim


def _solve_dual_basis(blocks: List[np.ndarray], n: int) -> Optional[np.ndarray]:
    """Coefficients c with sum_k c_k blocks[k] = identity (n x n)."""
    if n == 0:
        return np.zeros(len(blocks), dtype=np.int64)
    a = la.hstack([b.reshape(-1, 1) for b in blocks], n * n)
    x = la.solve(a, la.eye(n).reshape(-1, 1))
    return None if x is None else x.reshape(-1)


def _coords(basis_mats: List[np.ndarray], target: np.ndarray) -> np.ndarray:
    a = la.hstack([b.reshape(-1, 1) for b in basis_mats], target.size)
    x = la.solve(a, target.reshape(-1, 1))
    if x is None:
        raise AlgebraError("element outside the expected span")
    return x.reshape(-1)


def find_invertible(mats: List[np.ndarray], rng: np.random.Generator, tries: int = 64) -> Optional[np.ndarray]:
    """An invertible element of span(mats): basis first, then seeded random combinations."""
    if not mats or mats[0].shape[0] != mats[0].shape[1]:
        return None
    for m in mats:
        if la.is_invertible(m):
            return m
    for _ in range(tries):
        c = rng.integers(0, la.prime(), size=len(mats))
        m = la.zeros(*mats[0].shape)
        for ci, mi in zip(c, mats):
            m = m + int(ci) * mi
        m %= la.prime()
        if la.is_invertible(m):
            return m
    return None


@dataclass
class DualCertificate:
    """Dual bimodule of an arrow bimodule with both adjunctions F -| G and G -| F.

    ev, ev2 and the coev elements are stored at k-tensor level (columns in
    the module-major index of the relevant tensor space); `theta` is the
    bimodule isomorphism from the left dual to the right dual.
    """
    arrow: Bimodule
    dual: Bimodule
    phis: List[np.ndarray]
    psis: List[np.ndarray]
    theta: np.ndarray
    ev_big: np.ndarray
    coev_big: np.ndarray
    ev2_big: np.ndarray
    coev2_big: np.ndarray
    ev: np.ndarray = field(default=None)
    coev: np.ndarray = field(default=None)
    ev2: np.ndarray = field(default=None)
    coev2: np.ndarray = field(default=None)
    report: Dict[str, bool] = field(default_factory=dict)


def dual_certificate(b: Bimodule, seed: int = 0) -> DualCertificate:
    """Certify that F = b (x) - has coinciding left and right adjoints."""
    lj, li = b.left, b.right
    if not is_projective(b.as_left()):
        raise NotProjectiveLeft(f"{b.name}: not projective as a left {lj.name}-module")
    if not is_projective(LeftModule(_op_cached(li), b.dim, b.right_actions)):
        raise NotProjectiveRight(f"{b.name}: not projective as a right {li.name}-module")
    d = b.dim
    # left dual: Hom_{lj}(b, lj)
    phis = hom_over(b.as_left(), lj.regular())
    ds = len(phis)
    lstar = []
    for a in range(li.dim):
        lstar.append(np.stack([_coords(phis, la.mul(phi, b.right_actions[a])) for phi in phis], axis=1)
                     if ds else la.zeros(0, 0))
    rstar = []
    for c in range(lj.dim):
        rstar.append(np.stack([_coords(phis, la.mul(lj.rmul(c), phi)) for phi in phis], axis=1)
                     if ds else la.zeros(0, 0))
    dual = Bimodule(li, lj, ds, lstar, rstar, name=f"{b.name}*")
    # right dual: Hom_{li^op}(b, li)
    li_op = _op_cached(li)
    psis = hom_over(LeftModule(li_op, d, b.right_actions), LeftModule(li_op, li.dim, [li.rmul(a) for a in range(li.dim)]))
    dv = len(psis)
    if dv != ds:
        raise NotDualisable(f"{b.name}: left dual has dim {ds}, right dual has dim {dv}")
    lvee = [np.stack([_coords(psis, la.mul(li.lmul(a), psi)) for psi in psis], axis=1) if dv else la.zeros(0, 0)
            for a in range(li.dim)]
    rvee = [np.stack([_coords(psis, la.mul(psi, b.left_actions[c])) for psi in psis], axis=1) if dv else la.zeros(0, 0)
            for c in range(lj.dim)]
    # bimodule maps theta: dual -> right dual
    eqs = []
    for a in li.generators:
        eqs.append(la.sub(la.kron(la.eye(dv), lstar[a].T), la.kron(lvee[a], la.eye(ds))))
    for c in lj.generators:
        eqs.append(la.sub(la.kron(la.eye(dv), rstar[c].T), la.kron(rvee[c], la.eye(ds))))
    if ds:
        ker = la.kernel_basis(la.vstack(eqs, dv * ds))
        cands = [ker[:, k].reshape(dv, ds) for k in range(ker.shape[1])]
    else:
        cands = [la.zeros(0, 0)]
    theta = la.zeros(0, 0) if ds == 0 else find_invertible(cands, np.random.default_rng(seed), tries=64)
    if theta is None:
        raise NotDualisable(f"{b.name}: no invertible bimodule map between the two duals was found")
    # F -| G: ev(x (x) phi) = phi(x); coev(1) = dual basis element
    ev_big = la.zeros(lj.dim, ds * d)
    for k, phi in enumerate(phis):
        for x in range(d):
            ev_big[:, k * d + x] = phi[:, x]
    blocks = []
    for k, phi in enumerate(phis):
        for x in range(d):
            acc = la.zeros(d, d)
            for c in range(lj.dim):
                acc = acc + np.outer(b.left_actions[c][:, x], phi[c, :])
            blocks.append(acc % la.prime())
    cvec = _solve_dual_basis(blocks, d)
    if cvec is None:
        raise NotProjectiveLeft(f"{b.name}: no dual basis exists")
    coev_big = la.zeros(d * ds, 1)
    for k in range(ds):
        for x in range(d):
            coev_big[x * ds + k, 0] = cvec[k * d + x]
    # G -| F through theta: ev2(phi (x) x) = theta(phi)(x)
    ev2_big = la.zeros(li.dim, d * ds)
    for k in range(ds):
        img = la.zeros(li.dim, d)
        for m_, psi in enumerate(psis):
            img = img + int(theta[m_, k]) * psi
        img %= la.prime()
        for x in range(d):
            ev2_big[:, x * ds + k] = img[:, x]
    blocks = []
    for x in range(d):
        for m_, psi in enumerate(psis):
            acc = la.zeros(d, d)
            for a in range(li.dim):
                acc = acc + np.outer(b.right_actions[a][:, x], psi[a, :])
            blocks.append(acc % la.prime())
    dvec = _solve_dual_basis(blocks, d)
    if dvec is None:
        raise NotProjectiveRight(f"{b.name}: no right dual basis exists")
    tinv = la.inverse(theta) if ds else la.zeros(0, 0)
    coev2_big = la.zeros(ds * d, 1)
    for x in range(d):
        for m_ in range(dv):
            c = int(dvec[x * dv + m_])
            if c:
                for k in range(ds):
                    coev2_big[k * d + x, 0] = (coev2_big[k * d + x, 0] + c * tinv[k, m_]) % la.prime()
    cert = DualCertificate(b, dual, phis, psis, theta, ev_big, coev_big, ev2_big, coev2_big)
    fun = ArrowFunctors(cert)
    t1 = tensor_over(b, dual.as_left())
    cert.ev = la.mul(ev_big, t1.sec)
    t2 = tensor_over(dual, b.as_left())
    cert.coev = la.hstack([la.mul(t2.module.actions[a], la.mul(t2.proj, coev_big)) for a in range(li.dim)], t2.module.dim)
    cert.ev2 = la.mul(ev2_big, t2.sec)
    cert.coev2 = la.hstack([la.mul(t1.module.actions[c], la.mul(t1.proj, coev2_big)) for c in range(lj.dim)], t1.module.dim)
    cert.report = fun.triangle_report()
    if not all(cert.report.values()):
        bad = [k for k, v in cert.report.items() if not v]
        raise NotDualisable(f"{b.name}: triangle identities fail: {bad}")
    return cert


class ArrowFunctors:
    """F = b (x) -, G = b* (x) - and the units/counits of F -| G and G -| F."""

    def __init__(self, cert: DualCertificate):
        self.cert = cert
        self.b = cert.arrow
        self.s = cert.dual

    def F(self, n: LeftModule) -> LeftModule:
        return tensor_over(self.b, n).module

    def G(self, n: LeftModule) -> LeftModule:
        return tensor_over(self.s, n).module

    def F_map(self, f, src, tgt):
        return tensor_map(self.b, f, src, tgt)

    def G_map(self, f, src, tgt):
        return tensor_map(self.s, f, src, tgt)

    def eps_FG(self, n: LeftModule) -> np.ndarray:
        """F G n -> n (n over the target algebra)."""
        g = tensor_over(self.s, n)
        f = tensor_over(self.b, g.module)
        lift = la.mul(la.kron(g.sec, la.eye(self.b.dim)), f.sec)
        big = la.zeros(n.dim, n.dim * self.s.dim * self.b.dim)
        for c in range(self.b.left.dim):
            row = self.cert.ev_big[c:c + 1, :]
            if row.any():
                big = big + la.kron(n.actions[c], row)
        return la.mul(big % la.prime(), lift)

    def eta_FG(self, n: LeftModule) -> np.ndarray:
        """n -> G F n (n over the source algebra)."""
        f = tensor_over(self.b, n)
        g = tensor_over(self.s, f.module)
        return la.mul(g.proj, la.kron(f.proj, la.eye(self.s.dim)), la.kron(la.eye(n.dim), self.cert.coev_big))

    def eps_GF(self, n: LeftModule) -> np.ndarray:
        """G F n -> n (n over the source algebra)."""
        f = tensor_over(self.b, n)
        g = tensor_over(self.s, f.module)
        lift = la.mul(la.kron(f.sec, la.eye(self.s.dim)), g.sec)
        big = la.zeros(n.dim, n.dim * self.b.dim * self.s.dim)
        for a in range(self.b.right.dim):
            row = self.cert.ev2_big[a:a + 1, :]
            if row.any():
                big = big + la.kron(n.actions[a], row)
        return la.mul(big % la.prime(), lift)

    def eta_GF(self, n: LeftModule) -> np.ndarray:
        """n -> F G n (n over the target algebra)."""
        g = tensor_over(self.s, n)
        f = tensor_over(self.b, g.module)
        return la.mul(f.proj, la.kron(g.proj, la.eye(self.b.dim)), la.kron(la.eye(n.dim), self.cert.coev2_big))

    def triangle_report(self) -> Dict[str, bool]:
        li, lj = self.b.right, self.b.left
        out = {}
        n = li.regular()
        fn = self.F(n)
        out["F-|G: eps_F . F(eta)"] = la.equal(
            la.mul(self.eps_FG(fn), self.F_map(self.eta_FG(n), n, self.G(fn))), la.eye(fn.dim))
        out["G-|F: F(eps') . eta'_F"] = la.equal(
            la.mul(self.F_map(self.eps_GF(n), self.G(fn), n), self.eta_GF(fn)), la.eye(fn.dim))
        n = lj.regular()
        gn = self.G(n)
        out["F-|G: G(eps) . eta_G"] = la.equal(
            la.mul(self.G_map(self.eps_FG(n), self.F(gn), n), self.eta_FG(gn)), la.eye(gn.dim))
        out["G-|F: eps'_G . G(eta')"] = la.equal(
            la.mul(self.eps_GF(gn), self.G_map(self.eta_GF(n), n, self.F(gn))), la.eye(gn.dim))
        return out
