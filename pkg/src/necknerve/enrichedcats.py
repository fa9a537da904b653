"""Finite enriched categories and the cosimplicial categories Phi(D)^n.

Composition is written in diagrammatic order throughout: comp(x, y) for
x in C(A, B) and y in C(B, C) lies in C(A, C).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from . import chainalg as ca
from .chainalg import ChainComplex, Field, QF
from .neckcomb import (
    CubeMap, Necklace, NecklaceMap, compose, cube_compose, cube_delta, cube_hom,
    cube_identity, identity, nu, poset_vertex,
)

PHI_CAP = 6


class EnrichedError(ValueError):
    pass


def _report(failures: list) -> dict:
    return {"valid": not failures, "failures": failures}


# ---------------------------------------------------------------- ordinary categories


class FinCategory:
    """A finite category given by named arrows and a composition table."""

    def __init__(self, objects: Iterable[Hashable], arrows: dict[Hashable, tuple],
                 ident: dict[Hashable, Hashable], comp: dict[tuple, Hashable]):
        self.objects = list(objects)
        self.arrows = dict(arrows)
        self.ident = dict(ident)
        self.comp = dict(comp)
        self._hom: dict[tuple, list] = {}
        for f, (a, b) in self.arrows.items():
            self._hom.setdefault((a, b), []).append(f)

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def hom(self, a, b) -> list:
        return self._hom.get((a, b), [])

    def then(self, f, g):
        """g after f."""
        return self.comp[(f, g)]

    def validate(self) -> dict:
        fails = []
        for a in self.objects:
            i = self.ident.get(a)
            if i is None or self.arrows.get(i) != (a, a):
                fails.append({"law": "identity", "object": a})
        for f, (a, b) in self.arrows.items():
            for g in self.hom(b, b) + [x for c in self.objects for x in self.hom(b, c)]:
                if (f, g) not in self.comp:
                    fails.append({"law": "total", "pair": (f, g)})
                    break
            if self.comp.get((self.ident.get(a), f)) != f or self.comp.get((f, self.ident.get(b))) != f:
                fails.append({"law": "unit", "arrow": f})
        for (f, g), h in self.comp.items():
            if self.cod(f) != self.dom(g) or self.arrows.get(h) != (self.dom(f), self.cod(g)):
                fails.append({"law": "typing", "pair": (f, g)})
        for (f, g), fg in self.comp.items():
            for k in [x for c in self.objects for x in self.hom(self.cod(g), c)]:
                if self.comp.get((fg, k)) != self.comp.get((f, self.comp.get((g, k)))):
                    fails.append({"law": "associativity", "triple": (f, g, k)})
        return _report(fails)

    def is_groupoid(self) -> bool:
        for f, (a, b) in self.arrows.items():
            if not any(self.comp.get((f, g)) == self.ident[a] and self.comp.get((g, f)) == self.ident[b]
                       for g in self.hom(b, a)):
                return False
        return True

    def to_json(self) -> dict:
        return {"objects": [str(o) for o in self.objects],
                "arrows": {str(f): [str(a), str(b)] for f, (a, b) in self.arrows.items()},
                "ident": {str(a): str(f) for a, f in self.ident.items()},
                "comp": [[str(f), str(g), str(h)] for (f, g), h in self.comp.items()]}

    @staticmethod
    def from_json(d: dict) -> "FinCategory":
        return FinCategory(d["objects"], {f: tuple(ab) for f, ab in d["arrows"].items()},
                           d["ident"], {(f, g): h for f, g, h in d["comp"]})


def poset_category(elements: Iterable, leq: Callable) -> FinCategory:
    els = list(elements)
    arrows = {(x, y): (x, y) for x in els for y in els if leq(x, y)}
    ident = {x: (x, x) for x in els}
    comp = {((x, y), (y2, z)): (x, z) for (x, y) in arrows for (y2, z) in arrows if y == y2}
    return FinCategory(els, arrows, ident, comp)


def ordinal(n: int) -> FinCategory:
    """The poset [n] as a category."""
    return poset_category(range(n + 1), lambda a, b: a <= b)


def monoid_category(elements: list, mult: Callable, unit) -> FinCategory:
    """One object '*'; arrows are the monoid elements; x then y is mult(x, y)."""
    arrows = {x: ("*", "*") for x in elements}
    comp = {(x, y): mult(x, y) for x in elements for y in elements}
    return FinCategory(["*"], arrows, {"*": unit}, comp)


def terminal_category() -> FinCategory:
    return ordinal(0)


def category_functors(src: FinCategory, dst: FinCategory, obj_fixed: dict | None = None
                      ) -> list[tuple[dict, dict]]:
    """All functors src -> dst as (object map, arrow map)."""
    out = []
    objs = src.objects
    choices = [[obj_fixed[o]] if obj_fixed and o in obj_fixed else dst.objects for o in objs]
    arrows = [f for f in src.arrows if f not in set(src.ident.values())]
    for omap in itertools.product(*choices):
        om = dict(zip(objs, omap))
        base = {src.ident[o]: dst.ident[om[o]] for o in objs}

        def go(i, amap):
            if i == len(arrows):
                for (f, g), h in src.comp.items():
                    if dst.comp.get((amap[f], amap[g])) != amap[h]:
                        return
                out.append((om, dict(amap)))
                return
            f = arrows[i]
            a, b = src.arrows[f]
            for x in dst.hom(om[a], om[b]):
                amap[f] = x
                ok = True
                for g in arrows[:i + 1]:
                    for h in arrows[:i + 1]:
                        key = (g, h)
                        if key in src.comp and src.comp[key] in amap:
                            if dst.comp.get((amap[g], amap[h])) != amap[src.comp[key]]:
                                ok = False
                                break
                    if not ok:
                        break
                if ok:
                    go(i + 1, amap)
                del amap[f]
        go(0, dict(base))
    return out


# ---------------------------------------------------------------- dg categories


Vec = dict  # label -> field element


class DgCategory:
    def __init__(self, field: Field, objects: Iterable, hom: dict[tuple, ChainComplex],
                 comp: dict[tuple, dict[tuple, dict]], units: dict[Hashable, Vec]):
        self.field = field
        self.objects = list(objects)
        self.hom = dict(hom)
        self.comp = {k: dict(v) for k, v in comp.items()}
        self.units = dict(units)
        self._zero = ca.zero_complex(field)

    def H(self, a, b) -> ChainComplex:
        return self.hom.get((a, b), self._zero)

    def degree_of(self, a, b, label) -> int:
        for n, xs in self.H(a, b).basis.items():
            if label in self.H(a, b).index[n]:
                return n
        raise EnrichedError(f"{label!r} not in hom({a},{b})")

    def mult(self, a, b, c, x: Vec, y: Vec) -> Vec:
        k = self.field
        table = self.comp.get((a, b, c), {})
        out: Vec = {}
        for lx, cx in x.items():
            for ly, cy in y.items():
                for lz, cz in table.get((lx, ly), {}).items():
                    out[lz] = out.get(lz, k.zero) + cx * cy * cz
        return {key: v for key, v in out.items() if v}

    def comp_map(self, a, b, c) -> ca.ChainMap:
        src = ca.tensor(self.H(a, b), self.H(b, c))
        dst = self.H(a, c)
        table = self.comp.get((a, b, c), {})
        return ca.chain_map_from_images(src, dst, lambda n, xy: table.get(xy, {}))

    def total_dim(self) -> int:
        return sum(sum(c.dims().values()) for c in self.hom.values())

    def validate(self) -> dict:
        k = self.field
        fails = []
        objs = self.objects
        for a, b, c in itertools.product(objs, repeat=3):
            try:
                self.comp_map(a, b, c)
            except (ca.ChainError, KeyError) as err:
                fails.append({"law": "leibniz", "triple": (a, b, c), "detail": str(err)})
        for a in objs:
            u = self.units.get(a, {})
            hom = self.H(a, a)
            if any(lab not in hom.index.get(0, {}) for lab in u):
                fails.append({"law": "unit_degree", "object": a})
                continue
            du = {}
            for lab, cu in u.items():
                for lz, cz in hom.boundary_of(0, lab).items():
                    du[lz] = du.get(lz, k.zero) + cu * cz
            if any(du.values()):
                fails.append({"law": "unit_cycle", "object": a})
        for a, b in itertools.product(objs, repeat=2):
            hom = self.H(a, b)
            for n, xs in hom.basis.items():
                for x in xs:
                    vx = {x: k.one}
                    if self.mult(a, a, b, self.units.get(a, {}), vx) != vx:
                        fails.append({"law": "left_unit", "pair": (a, b), "basis": x})
                    if self.mult(a, b, b, vx, self.units.get(b, {})) != vx:
                        fails.append({"law": "right_unit", "pair": (a, b), "basis": x})
        for a, b, c, d in itertools.product(objs, repeat=4):
            for x in _labels(self.H(a, b)):
                for y in _labels(self.H(b, c)):
                    xy = self.mult(a, b, c, {x: k.one}, {y: k.one})
                    for z in _labels(self.H(c, d)):
                        lhs = self.mult(a, c, d, xy, {z: k.one})
                        rhs = self.mult(a, b, d, {x: k.one},
                                        self.mult(b, c, d, {y: k.one}, {z: k.one}))
                        if lhs != rhs:
                            fails.append({"law": "associativity", "basis": (x, y, z)})
        return _report(fails)

    def to_json(self) -> dict:
        k = self.field
        return {"kind": "dg", "field": k.to_json(), "objects": [str(o) for o in self.objects],
                "hom": [{"src": str(a), "dst": str(b), "complex": c.to_json(label=_enc)}
                        for (a, b), c in self.hom.items()],
                "comp": [{"objs": [str(o) for o in key], "x": _enc(x), "y": _enc(y),
                          "value": {_enc_key(z): k.to_py(v) for z, v in val.items()}}
                         for key, tab in self.comp.items() for (x, y), val in tab.items()],
                "units": {str(a): {_enc_key(z): k.to_py(v) for z, v in u.items()}
                          for a, u in self.units.items()}}

    @staticmethod
    def from_json(d: dict) -> "DgCategory":
        k = Field.from_json(d["field"])
        hom = {}
        for h in d["hom"]:
            cj = dict(h["complex"])
            cj["basis"] = {n: [_dec(x) for x in b] for n, b in cj["basis"].items()}
            hom[(h["src"], h["dst"])] = ChainComplex.from_json(cj)
        comp: dict = {}
        for e in d["comp"]:
            key = tuple(e["objs"])
            comp.setdefault(key, {})[(_dec(e["x"]), _dec(e["y"]))] = {
                _dec_key(z): k.from_py(v) for z, v in e["value"].items()}
        units = {a: {_dec_key(z): k.from_py(v) for z, v in u.items()} for a, u in d["units"].items()}
        return DgCategory(k, d["objects"], hom, comp, units)


def _labels(c: ChainComplex) -> list:
    return [x for n in c.degrees for x in c.basis[n]]


def _enc(label):
    if isinstance(label, NecklaceMap):
        return {"necklace_map": label.to_json()}
    return label


def _dec(obj):
    if isinstance(obj, dict) and "necklace_map" in obj:
        return NecklaceMap.from_json(obj["necklace_map"])
    return obj


def _enc_key(label) -> str:
    import json
    return label if isinstance(label, str) else json.dumps(_enc(label), sort_keys=True)


def _dec_key(s: str):
    import json
    if s.startswith("{"):
        return _dec(json.loads(s))
    return s


def _cx(k: Field, degrees: dict[int, list], d: dict[str, dict[str, int]] | None = None
        ) -> ChainComplex:
    """Small complex from labels per degree and d(label) = {label: coeff}."""
    d = d or {}
    return ca.complex_from_boundaries(k, degrees, lambda n, x: {y: k(c) for y, c in d.get(x, {}).items()})


def one_object_algebra(k: Field, degrees: dict[int, list], d: dict, table: dict,
                       unit: str = "1", obj: str = "*") -> DgCategory:
    """A dg algebra as a one-object dg category; table[(x, y)] = {z: c}."""
    hom = {(obj, obj): _cx(k, degrees, d)}
    comp = {(obj, obj, obj): {xy: {z: k(c) for z, c in v.items()} for xy, v in table.items()}}
    return DgCategory(k, [obj], hom, comp, {obj: {unit: k.one}})


def unit_algebra(k: Field) -> DgCategory:
    """hom = k in degree 0."""
    return one_object_algebra(k, {0: ["1"]}, {}, {("1", "1"): {"1": 1}})


def dual_numbers(k: Field, eps_degree: int = 1) -> DgCategory:
    """k[e]/e^2 with |e| = eps_degree and d e = 0."""
    degrees = {0: ["1"]}
    degrees.setdefault(eps_degree, []).append("e")
    table = {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1}, ("e", "1"): {"e": 1}}
    return one_object_algebra(k, degrees, {}, table)


def acyclic_algebra(k: Field) -> DgCategory:
    """k<x>/x^2 with |x| = 1 and d x = 1."""
    table = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}}
    return one_object_algebra(k, {0: ["1"], 1: ["x"]}, {"x": {"1": 1}}, table)


def zero_category(k: Field) -> DgCategory:
    """One object with zero endomorphisms (so the unit is zero)."""
    return DgCategory(k, ["*"], {}, {}, {"*": {}})


def arrow_category(k: Field, dh: bool = True) -> DgCategory:
    """Objects a, b; hom(a, b) spanned by f (degree 0) and h (degree 1) with d h = f or 0."""
    hom = {("a", "a"): _cx(k, {0: ["1a"]}), ("b", "b"): _cx(k, {0: ["1b"]}),
           ("a", "b"): _cx(k, {0: ["f"], 1: ["h"]}, {"h": {"f": 1}} if dh else {})}
    one = k.one
    comp = {("a", "a", "a"): {("1a", "1a"): {"1a": one}},
            ("b", "b", "b"): {("1b", "1b"): {"1b": one}},
            ("a", "a", "b"): {("1a", "f"): {"f": one}, ("1a", "h"): {"h": one}},
            ("a", "b", "b"): {("f", "1b"): {"f": one}, ("h", "1b"): {"h": one}}}
    return DgCategory(k, ["a", "b"], hom, comp, {"a": {"1a": one}, "b": {"1b": one}})


def broken_leibniz(k: Field) -> DgCategory:
    """A composition that is not a chain map: x * x = x with d x = 1."""
    table = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
             ("x", "x"): {"1": 1}}
    # degree mismatch on x*x as well: used as a constructed failure
    return one_object_algebra(k, {0: ["1"], 1: ["x"]}, {"x": {"1": 1}}, table)


def dg_corpus(k: Field) -> dict[str, DgCategory]:
    return {"unit": unit_algebra(k), "dual_numbers": dual_numbers(k),
            "dual_numbers_deg0": dual_numbers(k, 0), "acyclic": acyclic_algebra(k),
            "arrow": arrow_category(k, True), "arrow_split": arrow_category(k, False),
            "zero": zero_category(k)}


# ---------------------------------------------------------------- 2-categories


class TwoCategory:
    """Strict 2-category; hom(A, B) is a FinCategory of 1-cells and 2-cells.

    hcomp[(A, B, C)] maps pairs of 1-cells and pairs of 2-cells to their
    horizontal composite.
    """

    def __init__(self, objects: Iterable, homs: dict[tuple, FinCategory],
                 hcomp: dict[tuple, dict[tuple, Hashable]], units: dict[Hashable, Hashable]):
        self.objects = list(objects)
        self.homs = dict(homs)
        self.hcomp = {k: dict(v) for k, v in hcomp.items()}
        self.units = dict(units)
        self._empty = FinCategory([], {}, {}, {})

    def hom(self, a, b) -> FinCategory:
        return self.homs.get((a, b), self._empty)

    def h(self, a, b, c, x, y):
        return self.hcomp[(a, b, c)][(x, y)]

    def validate(self) -> dict:
        fails = []
        objs = self.objects
        for key, cat in self.homs.items():
            rep = cat.validate()
            if not rep["valid"]:
                fails.append({"law": "hom_category", "pair": key, "detail": rep["failures"][:3]})
        for a, b, c in itertools.product(objs, repeat=3):
            p, q, r = self.hom(a, b), self.hom(b, c), self.hom(a, c)
            for x in p.objects:
                for y in q.objects:
                    if (a, b, c) not in self.hcomp or (x, y) not in self.hcomp[(a, b, c)]:
                        fails.append({"law": "total", "pair": (x, y)})
                        continue
            for f in p.arrows:
                for g in q.arrows:
                    try:
                        fg = self.h(a, b, c, f, g)
                    except KeyError:
                        fails.append({"law": "total", "pair": (f, g)})
                        continue
                    if r.arrows.get(fg) != (self.h(a, b, c, p.dom(f), q.dom(g)),
                                            self.h(a, b, c, p.cod(f), q.cod(g))):
                        fails.append({"law": "typing", "pair": (f, g)})
            for x in p.objects:
                for y in q.objects:
                    if self.h(a, b, c, p.ident[x], q.ident[y]) != r.ident[self.h(a, b, c, x, y)]:
                        fails.append({"law": "identity_2cells", "pair": (x, y)})
            # interchange law
            for (f1, f2), f12 in p.comp.items():
                for (g1, g2), g12 in q.comp.items():
                    lhs = self.h(a, b, c, f12, g12)
                    rhs = r.comp.get((self.h(a, b, c, f1, g1), self.h(a, b, c, f2, g2)))
                    if lhs != rhs:
                        fails.append({"law": "interchange", "cells": (f1, f2, g1, g2)})
        for a, b in itertools.product(objs, repeat=2):
            p = self.hom(a, b)
            ua, ub = self.units[a], self.units[b]
            ia, ib = self.hom(a, a).ident[ua], self.hom(b, b).ident[ub]
            for x in list(p.objects) + list(p.arrows):
                left = ua if x in p.objects else ia
                right = ub if x in p.objects else ib
                if self.h(a, a, b, left, x) != x or self.h(a, b, b, x, right) != x:
                    fails.append({"law": "unit", "cell": x})
        for a, b, c, d in itertools.product(objs, repeat=4):
            p, q, r = self.hom(a, b), self.hom(b, c), self.hom(c, d)
            for x in list(p.objects) + list(p.arrows):
                for y in list(q.objects) + list(q.arrows):
                    if (x in p.objects) != (y in q.objects):
                        continue
                    xy = self.h(a, b, c, x, y)
                    for z in (r.objects if x in p.objects else r.arrows):
                        if self.h(a, c, d, xy, z) != self.h(a, b, d, x, self.h(b, c, d, y, z)):
                            fails.append({"law": "associativity", "cells": (x, y, z)})
        return _report(fails)

    def all_2cells_invertible(self) -> bool:
        return all(cat.is_groupoid() for cat in self.homs.values())


def locally_discrete(cat: FinCategory) -> TwoCategory:
    homs, hcomp = {}, {}
    for a in cat.objects:
        for b in cat.objects:
            xs = cat.hom(a, b)
            arrows = {("id", x): (x, x) for x in xs}
            homs[(a, b)] = FinCategory(xs, arrows, {x: ("id", x) for x in xs},
                                       {(("id", x), ("id", x)): ("id", x) for x in xs})
    for a, b, c in itertools.product(cat.objects, repeat=3):
        tab = {}
        for x in cat.hom(a, b):
            for y in cat.hom(b, c):
                z = cat.then(x, y)
                tab[(x, y)] = z
                tab[(("id", x), ("id", y))] = ("id", z)
        hcomp[(a, b, c)] = tab
    return TwoCategory(cat.objects, homs, hcomp, dict(cat.ident))


def monoidal_two_category(cells: list, mult: Callable, unit, name: str = "1") -> TwoCategory:
    """One object, one 1-cell, and a commutative monoid of 2-cells."""
    arrows = {c: (name, name) for c in cells}
    hom = FinCategory([name], arrows, {name: unit},
                      {(x, y): mult(x, y) for x in cells for y in cells})
    tab = {(name, name): name}
    tab.update({(x, y): mult(x, y) for x in cells for y in cells})
    return TwoCategory(["*"], {("*", "*"): hom}, {("*", "*", "*"): tab}, {"*": name})


def two_group_z2() -> TwoCategory:
    return monoidal_two_category([0, 1], lambda x, y: (x + y) % 2, 0)


def idempotent_two_category() -> TwoCategory:
    """2-cells {1, e} with e e = e: not all 2-cells are invertible."""
    return monoidal_two_category(["1", "e"], lambda x, y: "e" if "e" in (x, y) else "1", "1")


def two_functors(src: TwoCategory, dst: TwoCategory) -> list[dict]:
    """All strict 2-functors, as {objects, homs: {(a, b): (object map, arrow map)}}."""
    out = []
    for omap in itertools.product(dst.objects, repeat=len(src.objects)):
        om = dict(zip(src.objects, omap))
        pairs = [(a, b) for a in src.objects for b in src.objects if src.hom(a, b).objects]
        options = [category_functors(src.hom(a, b), dst.hom(om[a], om[b])) for a, b in pairs]
        for combo in itertools.product(*options):
            fm = dict(zip(pairs, combo))
            if _two_functor_ok(src, dst, om, fm):
                out.append({"objects": om, "homs": fm})
    return out


def _two_functor_ok(src, dst, om, fm) -> bool:
    for a in src.objects:
        ob, _ = fm[(a, a)]
        if ob[src.units[a]] != dst.units[om[a]]:
            return False
    for (a, b, c), tab in src.hcomp.items():
        if (a, b) not in fm or (b, c) not in fm:
            continue
        oab, aab = fm[(a, b)]
        obc, abc = fm[(b, c)]
        oac, aac = fm[(a, c)]
        for (x, y), z in tab.items():
            if x in oab:
                fx, fy, fz = oab[x], obc[y], oac[z]
            else:
                fx, fy, fz = aab[x], abc[y], aac[z]
            if dst.h(om[a], om[b], om[c], fx, fy) != fz:
                return False
    return True


# ---------------------------------------------------------------- simplicial categories


class SimpCategory:
    """Simplicially enriched category whose hom simplicial sets are nerves of
    finite posets; composition is a monotone map on products of posets."""

    def __init__(self, objects: Iterable, homs: dict[tuple, tuple[list, Callable]],
                 comp: dict[tuple, Callable], units: dict):
        self.objects = list(objects)
        self.homs = dict(homs)
        self.comp = dict(comp)
        self.units = dict(units)

    def elements(self, a, b) -> list:
        return self.homs.get((a, b), ([], None))[0]

    def leq(self, a, b, x, y) -> bool:
        return self.homs[(a, b)][1](x, y)

    def hom_sset(self, a, b):
        from .simpset import poset_nerve_sset
        els, leq = self.homs[(a, b)]
        return poset_nerve_sset(els, leq)

    def validate(self) -> dict:
        fails = []
        objs = self.objects
        for a, b, c in itertools.product(objs, repeat=3):
            xs, ys = self.elements(a, b), self.elements(b, c)
            if not xs or not ys:
                continue
            m = self.comp[(a, b, c)]
            for x1, x2 in itertools.product(xs, repeat=2):
                if not self.leq(a, b, x1, x2):
                    continue
                for y1, y2 in itertools.product(ys, repeat=2):
                    if self.leq(b, c, y1, y2) and not self.leq(a, c, m(x1, y1), m(x2, y2)):
                        fails.append({"law": "monotone", "cells": (x1, x2, y1, y2)})
        for a, b in itertools.product(objs, repeat=2):
            for x in self.elements(a, b):
                if self.comp[(a, a, b)](self.units[a], x) != x or self.comp[(a, b, b)](x, self.units[b]) != x:
                    fails.append({"law": "unit", "cell": x})
        for a, b, c, d in itertools.product(objs, repeat=4):
            for x in self.elements(a, b):
                for y in self.elements(b, c):
                    for z in self.elements(c, d):
                        lhs = self.comp[(a, c, d)](self.comp[(a, b, c)](x, y), z)
                        rhs = self.comp[(a, b, d)](x, self.comp[(b, c, d)](y, z))
                        if lhs != rhs:
                            fails.append({"law": "associativity", "cells": (x, y, z)})
        return _report(fails)


# ---------------------------------------------------------------- cubical categories


class CubicalSet:
    """A finite cubical set with connections, truncated: cubes(k) and act(c, theta)."""

    def cubes(self, k: int) -> list:
        raise NotImplementedError

    def act(self, c, theta: CubeMap):
        raise NotImplementedError


@dataclass(frozen=True)
class RepresentableCube(CubicalSet):
    """The representable cubical set on [1]^n; k-cubes are cube maps [1]^k -> [1]^n."""
    n: int

    def cubes(self, k: int) -> list:
        return cube_hom(k, self.n)[0]

    def act(self, c: CubeMap, theta: CubeMap) -> CubeMap:
        return cube_compose(theta, c)

    def top(self) -> CubeMap:
        return cube_identity(self.n)


@dataclass(frozen=True)
class ConstantCubical(CubicalSet):
    """Every element is a cube of every dimension; all structure maps are identities."""
    elements: tuple

    def cubes(self, k: int) -> list:
        return list(self.elements)

    def act(self, c, theta):
        return c


class CubicalCategory:
    """comp[(A, B, C)](x, y, k1, k2) composes a k1-cube and a k2-cube into a
    (k1 + k2)-cube; units are 0-cubes."""

    def __init__(self, objects: Iterable, homs: dict[tuple, CubicalSet],
                 comp: dict[tuple, Callable], units: dict, kmax: int = 2):
        self.objects = list(objects)
        self.homs = dict(homs)
        self.comp = dict(comp)
        self.units = dict(units)
        self.kmax = kmax

    def hom(self, a, b) -> CubicalSet | None:
        return self.homs.get((a, b))

    def validate(self) -> dict:
        fails = []
        objs = self.objects
        km = self.kmax
        gens = {k: _cube_generators(k) for k in range(km + 1)}
        for a, b in itertools.product(objs, repeat=2):
            h = self.hom(a, b)
            if h is None:
                continue
            for k in range(km + 1):
                for x in h.cubes(k):
                    if self.comp[(a, a, b)](self.units[a], x, 0, k) != x:
                        fails.append({"law": "left_unit", "cube": repr(x)})
                    if self.comp[(a, b, b)](x, self.units[b], k, 0) != x:
                        fails.append({"law": "right_unit", "cube": repr(x)})
        for a, b, c in itertools.product(objs, repeat=3):
            p, q = self.hom(a, b), self.hom(b, c)
            if p is None or q is None:
                continue
            m = self.comp[(a, b, c)]
            r = self.hom(a, c)
            for k1 in range(km + 1):
                for k2 in range(km + 1 - k1):
                    for x in p.cubes(k1):
                        for y in q.cubes(k2):
                            xy = m(x, y, k1, k2)
                            # naturality against generators in each variable
                            for th, src_k in gens[k1]:
                                lhs = m(p.act(x, th), y, src_k, k2)
                                rhs = r.act(xy, th.tensor(cube_identity(k2)))
                                if lhs != rhs:
                                    fails.append({"law": "natural_left", "cubes": (repr(x), repr(y))})
                            for th, src_k in gens[k2]:
                                lhs = m(x, q.act(y, th), k1, src_k)
                                rhs = r.act(xy, cube_identity(k1).tensor(th))
                                if lhs != rhs:
                                    fails.append({"law": "natural_right", "cubes": (repr(x), repr(y))})
        for a, b, c, d in itertools.product(objs, repeat=4):
            p, q, r = self.hom(a, b), self.hom(b, c), self.hom(c, d)
            if p is None or q is None or r is None:
                continue
            for k1 in range(km + 1):
                for k2 in range(km + 1 - k1):
                    for k3 in range(km + 1 - k1 - k2):
                        for x in p.cubes(k1):
                            for y in q.cubes(k2):
                                for z in r.cubes(k3):
                                    lhs = self.comp[(a, c, d)](self.comp[(a, b, c)](x, y, k1, k2), z,
                                                               k1 + k2, k3)
                                    rhs = self.comp[(a, b, d)](x, self.comp[(b, c, d)](y, z, k2, k3),
                                                               k1, k2 + k3)
                                    if lhs != rhs:
                                        fails.append({"law": "associativity"})
        return _report(fails)


def _cube_generators(k: int) -> list[tuple[CubeMap, int]]:
    """Generators with target [1]^k, paired with their source rank."""
    from .neckcomb import cube_gamma, cube_sigma
    out = []
    for i in range(1, k + 1):
        for eps in (0, 1):
            out.append((cube_delta(k, i, eps), k - 1))
    for i in range(1, k + 2):
        out.append((cube_sigma(k + 1, i), k + 1))
    for i in range(1, k + 1):
        out.append((cube_gamma(k + 1, i), k + 1))
    return out


def discrete_cubical(cat: FinCategory, kmax: int = 2) -> CubicalCategory:
    homs = {(a, b): ConstantCubical(tuple(cat.hom(a, b))) for a in cat.objects
            for b in cat.objects if cat.hom(a, b)}
    comp = {}
    for a, b, c in itertools.product(cat.objects, repeat=3):
        comp[(a, b, c)] = (lambda x, y, k1, k2, _c=cat: _c.then(x, y))
    return CubicalCategory(cat.objects, homs, comp, dict(cat.ident), kmax)


# ---------------------------------------------------------------- Phi(D)^n


def _phi_obj(n: int) -> list[int]:
    if not 0 <= n <= PHI_CAP:
        raise EnrichedError(f"n must lie in [0, {PHI_CAP}]")
    return list(range(n + 1))


def poset_of_simplex(i: int, j: int) -> list[frozenset]:
    """P_{Delta^{j-i}} with elements written in absolute vertices i..j."""
    t = Necklace.simplex(j - i)
    return [frozenset(x + i for x in poset_vertex(t, v)) for v in range(1 << t.dim)]


def phi(tag: str, n: int, field: Field = QF, kmax: int = 2):
    objs = _phi_obj(n)
    if tag == "const":
        return ordinal(n)
    if tag in ("Dusk", "dusk"):
        homs, hcomp = {}, {}
        for i in objs:
            for j in objs:
                if i <= j:
                    els = poset_of_simplex(i, j)
                    homs[(i, j)] = poset_category(els, lambda a, b: a <= b)
        for i, j, l in itertools.product(objs, repeat=3):
            if i <= j <= l:
                tab = {}
                for x in homs[(i, j)].objects:
                    for y in homs[(j, l)].objects:
                        tab[(x, y)] = x | y
                for (x1, x2) in homs[(i, j)].arrows:
                    for (y1, y2) in homs[(j, l)].arrows:
                        tab[((x1, x2), (y1, y2))] = (x1 | y1, x2 | y2)
                hcomp[(i, j, l)] = tab
        return TwoCategory(objs, homs, hcomp, {i: frozenset({i}) for i in objs})
    if tag == "hc":
        homs = {(i, j): (poset_of_simplex(i, j), lambda a, b: a <= b)
                for i in objs for j in objs if i <= j}
        comp = {(i, j, l): (lambda x, y: x | y) for i in objs for j in objs for l in objs
                if i <= j <= l}
        return SimpCategory(objs, homs, comp, {i: frozenset({i}) for i in objs})
    if tag == "dg":
        from .diagrams import dg_complex
        hom, comp = {}, {}
        for i in objs:
            for j in objs:
                if i <= j:
                    hom[(i, j)] = dg_complex(Necklace.simplex(j - i), field).complex
        for i, j, l in itertools.product(objs, repeat=3):
            if i <= j <= l:
                tab = {}
                for x in _labels(hom[(i, j)]):
                    for y in _labels(hom[(j, l)]):
                        tab[(x, y)] = {phi_dg_compose(x, y): field.one}
                comp[(i, j, l)] = tab
        units = {i: {identity(Necklace.simplex(0)): field.one} for i in objs}
        return DgCategory(field, objs, hom, comp, units)
    if tag == "cub":
        return cubical_phi(n, kmax)
    raise EnrichedError(f"unsupported tag {tag!r}")


def phi_dg_compose(x: NecklaceMap, y: NecklaceMap) -> NecklaceMap:
    """Composition in Phi(dg): nu o (x v y); the unit wedge is the identity."""
    a, b = x.dst.p, y.dst.p
    if a == 0:
        return y
    if b == 0:
        return x
    return compose(x.wedge(y), nu(a, b))


def cubical_phi(n: int, kmax: int = 2) -> CubicalCategory:
    """W_c^n: hom(i, j) is the representable cube of rank j - i - 1, units rank 0."""
    objs = _phi_obj(n)
    homs: dict = {}
    for i in objs:
        for j in objs:
            if i == j:
                homs[(i, j)] = RepresentableCube(0)
            elif i < j:
                homs[(i, j)] = RepresentableCube(j - i - 1)
    comp = {}
    for i, j, l in itertools.product(objs, repeat=3):
        if i <= j <= l:
            comp[(i, j, l)] = _cubical_phi_comp(i, j, l)
    return CubicalCategory(objs, homs, comp, {i: cube_identity(0) for i in objs}, kmax)


def _cubical_phi_comp(i: int, j: int, l: int):
    def m(x: CubeMap, y: CubeMap, k1: int, k2: int) -> CubeMap:
        if i == j or j == l:
            return x.tensor(y)
        a = j - i - 1
        return cube_compose(x.tensor(y), cube_delta(l - i - 1, a + 1, 1))
    return m


def phi_structure_map(theta: Iterable[int], i: int, j: int) -> NecklaceMap:
    """f_{i,j}: Delta^{j-i} -> Delta^{theta(j)-theta(i)}, the restriction of theta."""
    from .neckcomb import IntervalMap
    th = tuple(theta)
    lo, hi = th[i], th[j]
    return NecklaceMap(Necklace.simplex(j - i), Necklace.simplex(hi - lo),
                       IntervalMap(tuple(th[v] - lo for v in range(i, j + 1))))


def _phi_hom_action(tag: str, kmax: int):
    """(basis of hom(i, j), action of f_{i,j}, composition) for the hom-wise check."""
    from .diagrams import dg_image, injective_maps_into
    from .neckcomb import dim_on_map
    if tag == "dg":
        def basis(i, j):
            return list(injective_maps_into(Necklace.simplex(j - i)))

        def act(th, i, j, x):
            return dg_image(phi_structure_map(th, i, j), x)

        def mult(i, j, l, x, y):
            return phi_dg_compose(x, y)
        return basis, act, mult
    if tag in ("Dusk", "dusk", "hc"):
        def basis(i, j):
            return poset_of_simplex(i, j)

        def act(th, i, j, x):
            return frozenset(th[v] for v in x)

        def mult(i, j, l, x, y):
            return x | y
        return basis, act, mult
    if tag == "cub":
        def basis(i, j):
            r = max(j - i - 1, 0)
            return [(k, c) for k in range(kmax + 1) for c in cube_hom(k, r)[0]]

        def act(th, i, j, x):
            k, c = x
            return k, cube_compose(c, dim_on_map(phi_structure_map(th, i, j)))

        def mult(i, j, l, x, y):
            return x[0] + y[0], _cubical_phi_comp(i, j, l)(x[1], y[1], x[0], y[0])
        return basis, act, mult
    raise EnrichedError(f"unsupported tag {tag!r}")


def phi_structure_check(tag: str, nmax: int = 3, kmax: int = 1) -> dict:
    """Phi(D)(theta) is an enriched functor for every monotone theta: [m] -> [n], and
    Phi(D) respects composition of such maps (n, m <= nmax).

    Works on hom bases: dg acts on injective necklace maps (zero when the dimension
    drops), Dusk/hc on elements of P_T, cub on cubes of rank <= kmax."""
    basis, act, mult = _phi_hom_action(tag, kmax)
    fails = []
    checked = 0

    def monotone(m, n):
        return list(itertools.combinations_with_replacement(range(n + 1), m + 1))

    for n in range(nmax + 1):
        for m in range(nmax + 1):
            for th in monotone(m, n):
                for i, j, l in itertools.combinations_with_replacement(range(m + 1), 3):
                    for x in basis(i, j):
                        for y in basis(j, l):
                            checked += 1
                            xy = act(th, i, l, mult(i, j, l, x, y))
                            ax, ay = act(th, i, j, x), act(th, j, l, y)
                            other = None if ax is None or ay is None else \
                                mult(th[i], th[j], th[l], ax, ay)
                            if xy != other:
                                fails.append({"law": "composition", "theta": th, "homs": (i, j, l)})
                for k in range(nmax + 1):
                    for eta in monotone(k, m):
                        both = tuple(th[v] for v in eta)
                        for i, j in itertools.combinations_with_replacement(range(k + 1), 2):
                            for x in basis(i, j):
                                checked += 1
                                once = act(eta, i, j, x)
                                twice = None if once is None else \
                                    act(th, eta[i], eta[j], once)
                                if twice != act(both, i, j, x):
                                    fails.append({"law": "functorial", "maps": (eta, th)})
    out = _report(fails[:10])
    out["checked"] = checked
    return out


def validate(c) -> dict:
    """Check the enriched-category laws of any supported variant."""
    return c.validate()


# ---------------------------------------------------------------- functor enumeration


def functor_set(src, dst, kmax: int | None = None) -> list:
    """All enriched functors src -> dst (exhaustive, with every law checked)."""
    if isinstance(src, FinCategory) and isinstance(dst, FinCategory):
        return category_functors(src, dst)
    if isinstance(src, TwoCategory) and isinstance(dst, TwoCategory):
        return two_functors(src, dst)
    if isinstance(src, DgCategory) and isinstance(dst, DgCategory):
        return dg_functors(src, dst)
    if isinstance(src, CubicalCategory) and isinstance(dst, CubicalCategory):
        return cubical_functors(src, dst, kmax)
    raise EnrichedError("unsupported pair of enriched categories")


def dg_functors(src: DgCategory, dst: DgCategory) -> list[dict]:
    k = src.field
    if not k.finite:
        raise EnrichedError("functor enumeration needs a finite field")
    out = []
    pairs = [(a, b) for a in src.objects for b in src.objects if sum(src.H(a, b).dims().values())]
    for omap in itertools.product(dst.objects, repeat=len(src.objects)):
        om = dict(zip(src.objects, omap))
        options = [ca.all_chain_maps(src.H(a, b), dst.H(om[a], om[b])) for a, b in pairs]
        for combo in itertools.product(*options):
            fm = dict(zip(pairs, combo))
            if _dg_functor_ok(src, dst, om, fm):
                out.append({"objects": om, "maps": fm})
    return out


def _apply(fm: dict, a, b, src: DgCategory, vec: Vec) -> Vec:
    if (a, b) not in fm:
        return {}
    f = fm[(a, b)]
    out: Vec = {}
    for lab, c in vec.items():
        n = src.degree_of(a, b, lab)
        for z, d in f.image_of(n, lab).items():
            out[z] = out.get(z, src.field.zero) + c * d
    return {z: v for z, v in out.items() if v}


def _dg_functor_ok(src, dst, om, fm) -> bool:
    k = src.field
    for a in src.objects:
        if _apply(fm, a, a, src, src.units.get(a, {})) != {z: v for z, v in dst.units[om[a]].items() if v}:
            return False
    for a, b, c in itertools.product(src.objects, repeat=3):
        for x in _labels(src.H(a, b)):
            for y in _labels(src.H(b, c)):
                lhs = _apply(fm, a, c, src, src.mult(a, b, c, {x: k.one}, {y: k.one}))
                rhs = dst.mult(om[a], om[b], om[c], _apply(fm, a, b, src, {x: k.one}),
                               _apply(fm, b, c, src, {y: k.one}))
                if lhs != rhs:
                    return False
    return True


def cubical_functors(src: CubicalCategory, dst: CubicalCategory, kmax: int | None = None
                     ) -> list[dict]:
    """Functors out of a category whose homs are representable cubes.

    A cubical map out of a representable is a single top cube (Yoneda); the
    composition law is then checked on all pairs of cubes up to kmax.
    """
    km = src.kmax if kmax is None else kmax
    out = []
    pairs = [(a, b) for a in src.objects for b in src.objects if src.hom(a, b) is not None]
    for (a, b) in pairs:
        if not isinstance(src.hom(a, b), RepresentableCube):
            raise EnrichedError("source homs must be representable")
    for omap in itertools.product(dst.objects, repeat=len(src.objects)):
        om = dict(zip(src.objects, omap))
        options = []
        for a, b in pairs:
            h = dst.hom(om[a], om[b])
            options.append([] if h is None else h.cubes(src.hom(a, b).n))
        for combo in itertools.product(*options):
            tops = dict(zip(pairs, combo))
            if _cubical_functor_ok(src, dst, om, tops, km):
                out.append({"objects": om, "tops": tops})
    return out


def _cubical_functor_ok(src, dst, om, tops, km) -> bool:
    def F(a, b, x):
        return dst.hom(om[a], om[b]).act(tops[(a, b)], x)
    for a in src.objects:
        if F(a, a, src.units[a]) != dst.units[om[a]]:
            return False
    for a, b, c in itertools.product(src.objects, repeat=3):
        p, q = src.hom(a, b), src.hom(b, c)
        if p is None or q is None:
            continue
        for k1 in range(km + 1):
            for k2 in range(km + 1 - k1):
                for x in p.cubes(k1):
                    for y in q.cubes(k2):
                        lhs = F(a, c, src.comp[(a, b, c)](x, y, k1, k2))
                        rhs = dst.comp[(om[a], om[b], om[c])](F(a, b, x), F(b, c, y), k1, k2)
                        if lhs != rhs:
                            return False
    return True


__all__ = [
    "FinCategory", "DgCategory", "TwoCategory", "SimpCategory", "CubicalCategory",
    "CubicalSet", "RepresentableCube", "ConstantCubical", "phi", "validate", "functor_set",
    "poset_category", "ordinal", "monoid_category", "locally_discrete", "two_group_z2",
    "idempotent_two_category", "dg_corpus", "unit_algebra", "dual_numbers", "acyclic_algebra",
    "arrow_category", "zero_category", "broken_leibniz", "discrete_cubical", "cubical_phi",
    "category_functors", "two_functors", "dg_functors", "cubical_functors", "EnrichedError",
    "phi_dg_compose", "poset_of_simplex", "phi_structure_map", "phi_structure_check",
]
