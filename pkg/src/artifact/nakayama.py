"""Relative projectives and injectives, the standard resolution, nu, nu^-, tau, tau^-.

f_!(C) has pieces X^i(C) (degree i first in every label), f_*(C) has pieces
Y^i(C).  A morphism f_!(A) -> f_!(B) is given by its components A -> X^j(B);
dually a morphism f_*(A) -> f_*(B) by its components Y^i(A) -> B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import linalg as la
from .phylum import (CMorphism, CObject, Phylum, c_compose, c_direct_sum, c_identity,
                     c_neg, c_zero)
from .rep import (Representation, RepMorphism, ShortExactSeq, cokernel, from_h1, h1, h1_adj,
                  is_injective, is_iso_map, is_mono_object, is_morphism, is_surjective, kernel)


class InternalInconsistency(RuntimeError):
    pass


def _length(ph: Phylum) -> int:
    return ph.quiver.longest_path()


def _assemble(src: CObject, tgt: CObject, rule: Callable) -> CMorphism:
    """Per vertex, rule(v, label, module) -> [(target label, block)]."""
    out = {}
    for v in src.phylum.quiver.vertices:
        m = la.zeros(tgt.dim(v), src.dim(v))
        where = {lab: (o, d) for lab, o, d in tgt.offsets(v)}
        mods = dict(src.pieces[v])
        for lab, o, d in src.offsets(v):
            for tlab, blk in rule(v, lab, mods[lab]):
                if tlab not in where:
                    continue
                to, td = where[tlab]
                m[to:to + td, o:o + d] = blk
        out[v] = m % la.prime()
    return out


def degree_range(obj: CObject, v: str, i: int) -> Tuple[int, int]:
    """Start and size of the degree-i block of a graded object at v."""
    start, size, seen = 0, 0, False
    for lab, o, d in obj.offsets(v):
        if lab[0] == i:
            if not seen:
                start, seen = o, True
            size += d
        elif not seen:
            start = o + d
    return start, size


def degree_block(f: CMorphism, obj: CObject, i: int, rows: bool = True) -> CMorphism:
    """Restrict f to the degree-i rows (or columns) of obj."""
    out = {}
    for v in obj.phylum.quiver.vertices:
        s, d = degree_range(obj, v, i)
        out[v] = f[v][s:s + d, :] if rows else f[v][:, s:s + d]
    return out


# -- f_! and f_* --------------------------------------------------------------

def shriek_object(c: CObject) -> CObject:
    ph = c.phylum
    return c_direct_sum([ph.Xn(c, i) for i in range(_length(ph) + 1)], tags=list(range(_length(ph) + 1)))


def star_object(c: CObject) -> CObject:
    ph = c.phylum
    return c_direct_sum([ph.Yn(c, i) for i in range(_length(ph) + 1)], tags=list(range(_length(ph) + 1)))


def f_shriek(c: CObject) -> Representation:
    ph = c.phylum
    obj = shriek_object(c)
    xo = ph.X(obj)
    h = _assemble(xo, obj, lambda v, lab, mod: [((lab[1] + 1, lab[0]) + lab[2:], la.eye(mod.dim))])
    return from_h1(ph, obj, h)


def f_star(c: CObject) -> Representation:
    ph = c.phylum
    obj = star_object(c)
    xo = ph.X(obj)
    pieces = {v: dict(obj.pieces[v]) for v in ph.quiver.vertices}

    def rule(v, lab, mod):
        al, i = lab[0], lab[1]
        if i >= 1 and lab[2] == al:
            tlab = (i - 1,) + lab[3:]
            return [(tlab, ph.fun(al).eps_FG(pieces[v][tlab]))]
        return []

    h = _assemble(xo, obj, rule)
    return from_h1(ph, obj, h)


def f_shriek_map(a: CObject, b: CObject, comps: Dict[int, CMorphism]) -> RepMorphism:
    """The map f_!(a) -> f_!(b) with components a -> X^j(b)."""
    ph = a.phylum
    L = _length(ph)
    sa, sb = shriek_object(a), shriek_object(b)
    out = {v: la.zeros(sb.dim(v), sa.dim(v)) for v in ph.quiver.vertices}
    for j, phi in comps.items():
        xjb = ph.Xn(b, j)
        for i in range(L + 1 - j):
            blk = ph.Xn_map(phi, a, xjb, i)
            for v in ph.quiver.vertices:
                r0, rd = degree_range(sb, v, i + j)
                c0, cd = degree_range(sa, v, i)
                if rd and cd:
                    out[v][r0:r0 + rd, c0:c0 + cd] = (out[v][r0:r0 + rd, c0:c0 + cd] + blk[v]) % la.prime()
    return out


def f_star_map(a: CObject, b: CObject, comps: Dict[int, CMorphism]) -> RepMorphism:
    """The map f_*(a) -> f_*(b) with components Y^i(a) -> b."""
    ph = a.phylum
    L = _length(ph)
    sa, sb = star_object(a), star_object(b)
    out = {v: la.zeros(sb.dim(v), sa.dim(v)) for v in ph.quiver.vertices}
    for i, phi in comps.items():
        yia = ph.Yn(a, i)
        for j in range(L + 1 - i):
            blk = ph.Yn_map(phi, yia, b, j)
            for v in ph.quiver.vertices:
                r0, rd = degree_range(sb, v, j)
                c0, cd = degree_range(sa, v, i + j)
                if rd and cd:
                    out[v][r0:r0 + rd, c0:c0 + cd] = (out[v][r0:r0 + rd, c0:c0 + cd] + blk[v]) % la.prime()
    return out


def counit_shriek(m: Representation) -> RepMorphism:
    """f_! f^* M -> M, evaluating all path actions."""
    ph = m.phylum
    c = m.obj
    src = shriek_object(c)
    h = h1(m)
    cur = c_identity(c)
    blocks = [cur]
    xc = c
    for i in range(1, _length(ph) + 1):
        nxt = c_compose(h, ph.X_map(cur, xc, c))
        xc = ph.X(xc)
        cur = nxt
        blocks.append(cur)
    return {v: la.hstack([b[v] for b in blocks], m.dim(v)) for v in ph.quiver.vertices}


def unit_star(m: Representation) -> RepMorphism:
    """M -> f_* f^* M with components M -> Y^i M."""
    ph = m.phylum
    c = m.obj
    ha = h1_adj(m)
    cur = c_identity(c)
    blocks = [cur]
    yc = c
    for i in range(1, _length(ph) + 1):
        nxt = c_compose(ph.Y_map(cur, c, yc), ha)
        yc = ph.Y(yc)
        cur = nxt
        blocks.append(cur)
    return {v: la.vstack([b[v] for b in blocks], m.dim(v)) for v in ph.quiver.vertices}


def _check_exact(seq: ShortExactSeq, what: str) -> ShortExactSeq:
    if not seq.is_exact():
        bad = [k for k, ok in seq.exactness().items() if not ok]
        raise InternalInconsistency(f"{what} is not exact: {bad}")
    return seq


def standard_resolution(m: Representation) -> ShortExactSeq:
    """0 -> f_!(X f^*M) -> f_! f^*M -> M -> 0."""
    ph = m.phylum
    c = m.obj
    xc = ph.X(c)
    left = f_shriek_map(xc, c, {0: c_neg(h1(m)), 1: c_identity(xc)})
    seq = ShortExactSeq(f_shriek(xc), f_shriek(c), m, left, counit_shriek(m))
    return _check_exact(seq, "standard resolution")


def injective_copresentation(m: Representation) -> ShortExactSeq:
    """0 -> M -> f_* f^*M -> f_*(Y f^*M) -> 0."""
    ph = m.phylum
    c = m.obj
    yc = ph.Y(c)
    right = f_star_map(c, yc, {0: c_neg(h1_adj(m)), 1: c_identity(yc)})
    seq = ShortExactSeq(m, f_star(c), f_star(yc), unit_star(m), right)
    return _check_exact(seq, "injective copresentation")


# -- nu and nu^- ---------------------------------------------------------------

@dataclass
class PresentedFunctorValue:
    value: Representation
    source: Representation
    target: Representation
    map: RepMorphism
    structure: RepMorphism   # projection target -> value, or inclusion value -> source
    kind: str = "cokernel"
    section: Optional[RepMorphism] = None


def chi(m: Representation) -> Tuple[Representation, Representation, RepMorphism]:
    """chi : f_*(X f^*M) -> f_*(f^*M)."""
    ph = m.phylum
    c = m.obj
    xc = ph.X(c)
    f = f_star_map(xc, c, {0: c_neg(h1(m)), 1: ph.eps_YX(c)})
    return f_star(xc), f_star(c), f


def xi(m: Representation) -> Tuple[Representation, Representation, RepMorphism]:
    """xi : f_!(f^*M) -> f_!(Y f^*M), the dual of chi."""
    ph = m.phylum
    c = m.obj
    yc = ph.Y(c)
    f = f_shriek_map(c, yc, {0: c_neg(h1_adj(m)), 1: ph.eta_YX(c)})
    return f_shriek(c), f_shriek(yc), f


def nu(m: Representation) -> PresentedFunctorValue:
    src, tgt, f = chi(m)
    val, proj = cokernel(f, src, tgt)
    sec = {}
    for v in m.phylum.quiver.vertices:
        _, coords = la.cokernel_data(f[v])
        sec[v] = la.section(tgt.dim(v), coords)
    return PresentedFunctorValue(val, src, tgt, f, proj, "cokernel", sec)


def nu_minus(m: Representation) -> PresentedFunctorValue:
    src, tgt, f = xi(m)
    val, incl = kernel(f, src, tgt)
    return PresentedFunctorValue(val, src, tgt, f, incl, "kernel")


def f_star_on(g: CMorphism, a: CObject, b: CObject) -> RepMorphism:
    return f_star_map(a, b, {0: g})


def f_shriek_on(g: CMorphism, a: CObject, b: CObject) -> RepMorphism:
    return f_shriek_map(a, b, {0: g})


def nu_on_morphism(f: RepMorphism, m: Representation, n: Representation,
                   pm: Optional[PresentedFunctorValue] = None,
                   pn: Optional[PresentedFunctorValue] = None) -> RepMorphism:
    pm = pm or nu(m)
    pn = pn or nu(n)
    mid = f_star_on(f, m.obj, n.obj)
    return c_compose(pn.structure, c_compose(mid, pm.section))


def nu_minus_on_morphism(f: RepMorphism, m: Representation, n: Representation,
                         pm: Optional[PresentedFunctorValue] = None,
                         pn: Optional[PresentedFunctorValue] = None) -> RepMorphism:
    pm = pm or nu_minus(m)
    pn = pn or nu_minus(n)
    mid = c_compose(f_shriek_on(f, m.obj, n.obj), pm.structure)
    out = {}
    for v in m.phylum.quiver.vertices:
        x = la.solve(pn.structure[v], mid[v])
        if x is None:
            raise InternalInconsistency("nu^- of a morphism does not land in the kernel")
        out[v] = x
    return out


# -- tau and tau^- ---------------------------------------------------------------

@dataclass
class TauValue:
    value: Representation
    structure: RepMorphism   # kappa : tau M -> f_*(X M), or projection f_!(Y M) -> tau^- M
    ambient: Representation
    kind: str


def tau(m: Representation) -> TauValue:
    src, tgt, f = chi(m)
    val, incl = kernel(f, src, tgt)
    return TauValue(val, incl, src, "kernel")


def tau_minus(m: Representation) -> TauValue:
    src, tgt, f = xi(m)
    val, proj = cokernel(f, src, tgt)
    return TauValue(val, proj, tgt, "cokernel")


def tau_via_resolution(m: Representation) -> Representation:
    """ker nu(g') for the left map g' of the standard resolution."""
    seq = standard_resolution(m)
    g = nu_on_morphism(seq.f, seq.a, seq.b)
    return kernel(g, nu(seq.a).value, nu(seq.b).value)[0]


def tau_minus_via_copresentation(m: Representation) -> Representation:
    """coker nu^-(h') for the right map h' of the injective copresentation."""
    seq = injective_copresentation(m)
    g = nu_minus_on_morphism(seq.g, seq.b, seq.c)
    return cokernel(g, nu_minus(seq.b).value, nu_minus(seq.c).value)[0]


def tau_on_morphism(f: RepMorphism, m: Representation, n: Representation,
                    tm: Optional[TauValue] = None, tn: Optional[TauValue] = None) -> RepMorphism:
    ph = m.phylum
    tm = tm or tau(m)
    tn = tn or tau(n)
    xf = ph.X_map(f, m.obj, n.obj)
    mid = c_compose(f_star_on(xf, ph.X(m.obj), ph.X(n.obj)), tm.structure)
    out = {}
    for v in ph.quiver.vertices:
        x = la.solve(tn.structure[v], mid[v])
        if x is None:
            raise InternalInconsistency("tau of a morphism does not land in the kernel")
        out[v] = x
    return out


# -- composite adjunctions Y^i -| X^i ------------------------------------------

def eta_power(a: CObject, i: int) -> CMorphism:
    """a -> X^i Y^i a."""
    ph = a.phylum
    cur = c_identity(a)
    for k in range(1, i + 1):
        yk1 = ph.Yn(a, k - 1)
        step = ph.Xn_map(ph.eta_YX(yk1), yk1, ph.X(ph.Y(yk1)), k - 1)
        cur = c_compose(step, cur)
    return cur


def eps_power(b: CObject, i: int) -> CMorphism:
    """Y^i X^i b -> b."""
    ph = b.phylum
    if i == 0:
        return c_identity(b)
    xb = ph.X(b)
    inner = eps_power(xb, i - 1)
    src = ph.Yn(ph.Xn(xb, i - 1), i - 1)
    return c_compose(ph.eps_YX(b), ph.Y_map(inner, src, xb))


def adj_power(psi: CMorphism, a: CObject, b: CObject, i: int) -> CMorphism:
    """Hom(Y^i a, b) -> Hom(a, X^i b)."""
    ph = a.phylum
    return c_compose(ph.Xn_map(psi, ph.Yn(a, i), b, i), eta_power(a, i))


def adj_power_inv(phi: CMorphism, a: CObject, b: CObject, i: int) -> CMorphism:
    """Hom(a, X^i b) -> Hom(Y^i a, b)."""
    ph = a.phylum
    return c_compose(eps_power(b, i), ph.Yn_map(phi, a, ph.Xn(b, i), i))


# -- unit and counit of nu -| nu^- ---------------------------------------------

def unit_nu(m: Representation) -> Tuple[RepMorphism, Representation]:
    """M -> nu^- nu M."""
    ph = m.phylum
    c = m.obj
    pv = nu(m)
    vm = pv.value
    pim = nu_minus(vm)
    star = star_object(c)
    comps = {}
    for i in range(_length(ph) + 1):
        pi_i = degree_block(pv.structure, star, i, rows=False)
        comps[i] = adj_power(pi_i, c, vm.obj, i)
    big = f_shriek_map(c, vm.obj, comps)
    if not all(la.is_zero(x) for x in c_compose(pim.map, big).values()):
        raise InternalInconsistency("unit transport does not land in ker xi")
    through = {}
    for v in ph.quiver.vertices:
        x = la.solve(pim.structure[v], big[v])
        if x is None:
            raise InternalInconsistency("unit transport does not factor through nu^-")
        through[v] = x
    cu = counit_shriek(m)
    out = {}
    for v in ph.quiver.vertices:
        r, coords = la.rref(cu[v])
        # the counit is surjective; invert it on its pivot columns
        sec = la.zeros(cu[v].shape[1], m.dim(v))
        if m.dim(v):
            sub = cu[v][:, coords]
            sec[coords, :] = la.inverse(sub)
        u = la.mul(through[v], sec)
        if not la.equal(la.mul(u, cu[v]), through[v]):
            raise InternalInconsistency("unit does not descend along the counit of f_! -| f^*")
        out[v] = u
    return out, pim.value


def counit_nu(m: Representation) -> Tuple[RepMorphism, Representation]:
    """nu nu^- M -> M."""
    ph = m.phylum
    c = m.obj
    pm = nu_minus(m)
    wm = pm.value
    pn = nu(wm)
    shriek = shriek_object(c)
    comps = {}
    for i in range(_length(ph) + 1):
        k_i = degree_block(pm.structure, shriek, i, rows=True)
        comps[i] = adj_power_inv(k_i, wm.obj, c, i)
    big = f_star_map(wm.obj, c, comps)
    if not all(la.is_zero(x) for x in c_compose(big, pn.map).values()):
        raise InternalInconsistency("counit transport does not vanish on im chi")
    down = c_compose(big, pn.section)
    ui = unit_star(m)
    out = {}
    for v in ph.quiver.vertices:
        x = la.solve(ui[v], down[v])
        if x is None:
            raise InternalInconsistency("counit does not factor through the unit of f^* -| f_*")
        out[v] = x
    return out, pn.value


def is_gorenstein_projective(m: Representation) -> Tuple[bool, Dict[str, bool]]:
    mono = is_mono_object(m)
    tau_zero = tau(m).value.is_zero()
    u, tgt = unit_nu(m)
    unit_iso = is_iso_map(u) and is_morphism(u, m, tgt)
    report = {"mono": mono, "tau_zero": tau_zero, "unit_iso": unit_iso}
    if len(set(report.values())) != 1:
        raise InternalInconsistency(f"Gorenstein projectivity criteria disagree: {report}")
    return mono, report
