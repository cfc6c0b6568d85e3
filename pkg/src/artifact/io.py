"""JSON interchange for algebras, bimodules, phyla and (Pi-)representations.

Matrices use the row-major dict form of linalg.to_json; a nested list of rows
is accepted on input.  Module and bimodule actions are keyed by basis labels
("e_v" for idempotents, arrow names for arrows, "b*a" for the path a then b);
only idempotents and arrows are required, longer paths are filled in.
"""
from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

import numpy as np

from . import linalg as la
from .algebra import AlgebraError, Bimodule, BoundQuiverAlgebra, LeftModule, build_algebra, tensor_over
from .phylum import Phylum, ShapeQuiver
from .preprojective import PiRepresentation
from .rep import Representation, from_modules


class SchemaError(ValueError):
    """Input does not match the documented format; `where` names the offending field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def _need(d: Any, key: str, where: str):
    if not isinstance(d, dict):
        raise SchemaError(where, "expected an object")
    if key not in d:
        raise SchemaError(f"{where}.{key}", "missing field")
    return d[key]


def matrix_from(d, where: str, shape=None) -> np.ndarray:
    try:
        m = la.from_json(d)
    except (KeyError, TypeError, ValueError, la.DimensionMismatch) as e:
        raise SchemaError(where, f"bad matrix ({e})") from None
    if m.ndim != 2:
        raise SchemaError(where, "matrix must be two-dimensional")
    if shape is not None and m.shape != tuple(shape):
        # an empty nested list cannot carry its column count
        if m.size == 0 and 0 in shape:
            return la.zeros(*shape)
        raise SchemaError(where, f"expected shape {tuple(shape)}, got {m.shape}")
    return m


# -- algebras ------------------------------------------------------------------

def algebra_to_json(alg: BoundQuiverAlgebra) -> Dict:
    return {
        "name": alg.name,
        "vertices": list(alg.vertices),
        "arrows": [{"name": a, "from": s, "to": t} for a, (s, t) in sorted(alg.arrows.items())],
        "relations": [[{"path": list(p), "coeff": int(c)} for p, c in r.items()] for r in alg.relations],
        "nilpotency_bound": alg.bound,
        "basis": list(alg.labels),
    }


def algebra_from_json(d, where: str = "algebra") -> BoundQuiverAlgebra:
    verts = _need(d, "vertices", where)
    if not isinstance(verts, list) or not verts:
        raise SchemaError(f"{where}.vertices", "expected a non-empty list")
    arrows = []
    for i, a in enumerate(d.get("arrows", [])):
        w = f"{where}.arrows[{i}]"
        arrows.append((str(_need(a, "name", w)), str(_need(a, "from", w)), str(_need(a, "to", w))))
    rels = []
    for i, r in enumerate(d.get("relations", [])):
        terms = []
        for j, t in enumerate(r):
            w = f"{where}.relations[{i}][{j}]"
            path = _need(t, "path", w)
            if not isinstance(path, list) or not path:
                raise SchemaError(f"{w}.path", "expected a non-empty list of arrow names")
            terms.append((tuple(str(x) for x in path), int(t.get("coeff", 1))))
        rels.append(terms)
    try:
        return build_algebra([str(v) for v in verts], arrows, rels, d.get("nilpotency_bound"),
                             name=str(d.get("name", "")))
    except AlgebraError as e:
        raise SchemaError(where, str(e)) from None


def _complete_actions(alg: BoundQuiverAlgebra, dim: int, given: Dict[str, np.ndarray], where: str,
                      side: str = "left") -> List[np.ndarray]:
    out = []
    for p, label in zip(alg.paths, alg.labels):
        if label in given:
            out.append(given[label])
        elif p[0] == "@" and len(alg.vertices) == 1:
            out.append(la.eye(dim))
        elif p[0] != "@" and all(a in given for a in p):
            cur = la.eye(dim)
            for a in p:
                # left: (b a) x = b (a x); right: x (b a) = (x b) a
                cur = la.mul(given[a], cur) if side == "left" else la.mul(cur, given[a])
            out.append(cur)
        else:
            raise SchemaError(f"{where}.{label}", "missing action")
    return out


def _actions_from(d: Dict, alg: BoundQuiverAlgebra, dim: int, where: str, side="left") -> List[np.ndarray]:
    given = {}
    if not isinstance(d, dict):
        raise SchemaError(where, "expected an object keyed by basis labels")
    for label, m in d.items():
        if label not in alg.labels:
            raise SchemaError(f"{where}.{label}", f"unknown basis label (known: {alg.labels})")
        given[label] = matrix_from(m, f"{where}.{label}", (dim, dim))
    return _complete_actions(alg, dim, given, where, side)


def module_to_json(m: LeftModule) -> Dict:
    alg = m.algebra
    return {"dim": m.dim, "action": {lab: la.to_json(a) for lab, a in zip(alg.labels, m.actions)}}


def module_from_json(d, alg: BoundQuiverAlgebra, where: str) -> LeftModule:
    if isinstance(d, int):
        d = {"dim": d}
    dim = _need(d, "dim", where)
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError(f"{where}.dim", "expected a non-negative integer")
    acts = _actions_from(d.get("action", {}), alg, dim, f"{where}.action")
    m = LeftModule(alg, dim, acts)
    try:
        m.check()
    except AlgebraError as e:
        raise SchemaError(where, str(e)) from None
    return m


# -- bimodules and phyla -----------------------------------------------------------

def bimodule_to_json(b: Bimodule) -> Dict:
    return {
        "name": b.name,
        "dim": b.dim,
        "left_action": {lab: la.to_json(a) for lab, a in zip(b.left.labels, b.left_actions)},
        "right_action": {lab: la.to_json(a) for lab, a in zip(b.right.labels, b.right_actions)},
    }


def bimodule_from_json(d, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra, where: str) -> Bimodule:
    dim = _need(d, "dim", where)
    if not isinstance(dim, int) or dim <= 0:
        raise SchemaError(f"{where}.dim", "expected a positive integer")
    la_ = _actions_from(d.get("left_action", {}), left, dim, f"{where}.left_action", "left")
    ra = _actions_from(d.get("right_action", {}), right, dim, f"{where}.right_action", "right")
    b = Bimodule(left, right, dim, la_, ra, name=str(d.get("name", "")))
    try:
        b.check()
    except AlgebraError as e:
        raise SchemaError(where, str(e)) from None
    return b


def phylum_to_json(ph: Phylum) -> Dict:
    q = ph.quiver
    return {
        "name": ph.name,
        "quiver": {"vertices": list(q.vertices),
                   "arrows": [{"name": a, "from": s, "to": t} for a, (s, t) in q.arrows.items()]},
        "algebras": {v: algebra_to_json(ph.algebras[v]) for v in q.vertices},
        "bimodules": {a: bimodule_to_json(ph.bimodules[a]) for a in q.arrows},
    }


def phylum_from_json(d, where: str = "phylum") -> Phylum:
    qd = _need(d, "quiver", where)
    verts = [str(v) for v in _need(qd, "vertices", f"{where}.quiver")]
    arrows = []
    for i, a in enumerate(qd.get("arrows", [])):
        w = f"{where}.quiver.arrows[{i}]"
        arrows.append((str(_need(a, "name", w)), str(_need(a, "from", w)), str(_need(a, "to", w))))
    algd = _need(d, "algebras", where)
    bimd = _need(d, "bimodules", where)
    # identical algebra descriptions share one algebra object, so that a module
    # over one vertex can be compared with a module over another
    cache: Dict[str, BoundQuiverAlgebra] = {}
    algs = {}
    for v in verts:
        ad = _need(algd, v, f"{where}.algebras")
        key = json.dumps(ad, sort_keys=True)
        if key not in cache:
            cache[key] = algebra_from_json(ad, f"{where}.algebras.{v}")
        algs[v] = cache[key]
    bims = {}
    for a, s, t in arrows:
        bims[a] = bimodule_from_json(_need(bimd, a, f"{where}.bimodules"), algs[t], algs[s],
                                     f"{where}.bimodules.{a}")
    try:
        quiver = ShapeQuiver(verts, arrows)
    except Exception as e:
        raise SchemaError(f"{where}.quiver", str(e)) from None
    return Phylum(quiver, algs, bims, name=str(d.get("name", "")))


# -- representations --------------------------------------------------------------

def rep_to_json(m: Representation) -> Dict:
    ph = m.phylum
    return {"modules": {v: module_to_json(m.module(v)) for v in ph.quiver.vertices},
            "maps": {a: la.to_json(m.maps[a]) for a in ph.quiver.arrows}}


def rep_from_json(d, ph: Phylum, where: str = "representation") -> Representation:
    md = _need(d, "modules", where)
    q = ph.quiver
    mods = {}
    for v in q.vertices:
        mods[v] = module_from_json(md.get(v, 0), ph.algebras[v], f"{where}.modules.{v}")
    maps = {}
    mapd = d.get("maps", {})
    obj = ph.obj(mods)
    for a in q.arrows:
        rows = obj.dim(q.tgt(a))
        cols = ph.fun(a).F(obj.module(q.src(a))).dim
        maps[a] = matrix_from(mapd[a], f"{where}.maps.{a}", (rows, cols)) if a in mapd else la.zeros(rows, cols)
    for a in mapd:
        if a not in q.arrows:
            raise SchemaError(f"{where}.maps.{a}", "unknown arrow")
    r = from_modules(ph, mods, maps)
    try:
        r.check()
    except Exception as e:
        raise SchemaError(f"{where}.maps", str(e)) from None
    return r


def pi_rep_to_json(pr: PiRepresentation) -> Dict:
    out = rep_to_json(pr.rep)
    out["back_maps"] = {a: la.to_json(pr.back[a]) for a in pr.phylum.quiver.arrows}
    return out


def pi_rep_from_json(d, ph: Phylum, where: str = "representation") -> PiRepresentation:
    r = rep_from_json(d, ph, where)
    q = ph.quiver
    bd = d.get("back_maps", {})
    back = {}
    for a in q.arrows:
        rows = r.dim(q.src(a))
        cols = ph.fun(a).G(r.module(q.tgt(a))).dim
        back[a] = matrix_from(bd[a], f"{where}.back_maps.{a}", (rows, cols)) if a in bd else la.zeros(rows, cols)
    return PiRepresentation(r, back)


# -- basis descriptions ---------------------------------------------------------------

def _tensor_labels(bim: Bimodule, m: LeftModule) -> List[str]:
    tr = tensor_over(bim, m)
    return [f"b{c % bim.dim}(x)m{c // bim.dim}" for c in tr.coords]


def describe_bases(ph: Phylum, m: Optional[Representation] = None) -> Dict:
    """Algebra bases, bimodule dimensions and (given m) the tensor bases its maps live in."""
    q = ph.quiver
    out = {"algebras": {v: list(ph.algebras[v].labels) for v in q.vertices},
           "bimodules": {a: {"dim": ph.bimodules[a].dim, "dual_dim": ph.certificate(a).dual.dim}
                         for a in q.arrows},
           "tensor_index": "b (x) m sits at m * dim_b + b before the quotient"}
    if m is not None:
        spaces = {}
        for a, (s, t) in q.arrows.items():
            f = ph.fun(a)
            spaces[a] = {
                "forward": {"space": f"M_{a} (x) M_{s}", "basis": _tensor_labels(ph.bimodules[a], m.module(s))},
                "backward": {"space": f"M_{a}* (x) M_{t}", "basis": _tensor_labels(f.s, m.module(t))},
            }
        out["maps"] = spaces
    return out


def dump(obj: Dict) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def load_file(path: str, where: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{where} (line {e.lineno}, column {e.colno})", f"malformed JSON: {e.msg}") from None
    except OSError as e:
        raise SchemaError(where, f"cannot read {path}: {e.strerror}") from None
