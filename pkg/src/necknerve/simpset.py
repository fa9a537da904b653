"""Finite simplicial sets in Eilenberg-Zilber normal form.

Every simplex is a pair (x, s) with x a non-degenerate simplex of dimension m
and s a monotone surjection [n] -> [m] stored by its values.  Faces of the
non-degenerate simplices are the only input; all other structure maps are
derived by epi-mono factorization in the simplex category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .neckcomb import IntervalMap, Necklace, NecklaceMap


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    nd: str
    surj: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def nd_dim(self) -> int:
        return self.surj[-1]

    @property
    def is_degenerate(self) -> bool:
        return self.dim != self.nd_dim

    def degens(self) -> list[int]:
        """Indices i_k > ... > i_1 with s = s_{i_k} ... s_{i_1} (EZ word)."""
        s = self.surj
        return sorted((i for i in range(len(s) - 1) if s[i] == s[i + 1]), reverse=True)

    def to_json(self) -> dict:
        return {"nd": self.nd, "degens": self.degens()}

    def __repr__(self):
        if not self.is_degenerate:
            return self.nd
        return "s" + "".join(map(str, self.degens())) + f"({self.nd})"


def surjection_from_degens(n: int, degens: Iterable[int]) -> tuple[int, ...]:
    """The surjection [n] -> [n - k] of the degeneracy word s_{i_1}...s_{i_k}."""
    vals = list(range(n + 1))
    # apply s_i in the order the word acts on a simplex: innermost first
    for i in sorted(set(degens), reverse=True):
        vals = [v if v <= i else v - 1 for v in vals]
    return tuple(vals)


def _epi_mono(theta: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    img = sorted(set(theta))
    pos = {x: i for i, x in enumerate(img)}
    return tuple(pos[x] for x in theta), tuple(img)


def surjections(n: int, m: int) -> list[tuple[int, ...]]:
    """Monotone surjections [n] -> [m]."""
    out = []
    for cuts in itertools.combinations(range(1, n + 1), m):
        vals, cur = [], 0
        cs = set(cuts)
        for i in range(n + 1):
            if i in cs:
                cur += 1
            vals.append(cur)
        out.append(tuple(vals))
    return out


class FinSimplicialSet:
    def __init__(self, nd: dict[int, list[str]], faces: dict[str, list[Simplex]],
                 validate: bool = True):
        self.nd = {int(k): list(v) for k, v in nd.items() if v}
        self.dim_of = {x: n for n, xs in self.nd.items() for x in xs}
        if len(self.dim_of) != sum(len(v) for v in self.nd.values()):
            raise SimplicialError("duplicate simplex ids")
        self.faces = {x: list(fs) for x, fs in faces.items()}
        self.dmax = max(self.nd) if self.nd else -1
        for x, n in self.dim_of.items():
            fs = self.faces.get(x, [])
            if n == 0:
                if fs:
                    raise SimplicialError(f"vertex {x} has faces")
                continue
            if len(fs) != n + 1:
                raise SimplicialError(f"{x} needs {n + 1} faces")
            for f in fs:
                if f.nd not in self.dim_of or f.dim != n - 1 or self.dim_of[f.nd] != f.nd_dim:
                    raise SimplicialError(f"bad face {f} of {x}")
        self._cache: dict = {}
        if validate:
            self.validate()

    # --- structure maps

    def nd_simplex(self, x: str) -> Simplex:
        return Simplex(x, tuple(range(self.dim_of[x] + 1)))

    def _face_nd(self, x: str, mono: tuple[int, ...]) -> Simplex:
        m = self.dim_of[x]
        if len(mono) == m + 1:
            return self.nd_simplex(x)
        key = (x, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        missing = next(j for j in range(m + 1) if j not in mono)
        # mono = delta_missing o rest
        rest = tuple(v if v < missing else v - 1 for v in mono)
        out = self.apply(self.faces[x][missing], rest)
        self._cache[key] = out
        return out

    def apply(self, s: Simplex, theta: Iterable[int]) -> Simplex:
        """theta^*(s) for a monotone map theta: [k] -> [dim s]."""
        theta = tuple(theta)
        comp = tuple(s.surj[t] for t in theta)
        epi, mono = _epi_mono(comp)
        y = self._face_nd(s.nd, mono)
        return Simplex(y.nd, tuple(y.surj[e] for e in epi))

    def face(self, s: Simplex, i: int) -> Simplex:
        n = s.dim
        return self.apply(s, tuple(j if j < i else j + 1 for j in range(n)))

    def degeneracy(self, s: Simplex, i: int) -> Simplex:
        n = s.dim
        return self.apply(s, tuple(j if j <= i else j - 1 for j in range(n + 2)))

    def vertex(self, s: Simplex, i: int) -> str:
        return self.apply(s, (i,)).nd

    def first_vertex(self, s: Simplex) -> str:
        return self.vertex(s, 0)

    def last_vertex(self, s: Simplex) -> str:
        return self.vertex(s, s.dim)

    # --- enumeration

    def simplices(self, n: int) -> list[Simplex]:
        key = ("all", n)
        if key in self._cache:
            return self._cache[key]
        out = []
        for m in range(min(n, self.dmax) + 1):
            for x in self.nd.get(m, []):
                for s in surjections(n, m):
                    out.append(Simplex(x, s))
        out.sort(key=lambda s: (s.nd, s.surj))
        self._cache[key] = out
        return out

    def simplices_between(self, n: int, a: str, b: str) -> list[Simplex]:
        key = ("between", n, a, b)
        if key not in self._cache:
            self._cache[key] = [s for s in self.simplices(n)
                                if self.first_vertex(s) == a and self.last_vertex(s) == b]
        return self._cache[key]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.nd.get(n, [])) for n in range(self.dmax + 1))

    # --- validation

    def validate(self, upto: int | None = None) -> None:
        for x, n in self.dim_of.items():
            if n < 2:
                continue
            s = self.nd_simplex(x)
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    if self.face(self.face(s, j), i) != self.face(self.face(s, i), j - 1):
                        raise SimplicialError(f"d_{i} d_{j} != d_{j - 1} d_{i} on {x}")
        top = (self.dmax + 1) if upto is None else upto
        for n in range(top + 1):
            for s in self.simplices(n):
                check_identities(self, s)

    def to_json(self) -> dict:
        return {"dmax": self.dmax,
                "nd": {str(n): xs for n, xs in sorted(self.nd.items())},
                "faces": {x: [f.to_json() for f in fs] for x, fs in self.faces.items() if fs}}

    @staticmethod
    def from_json(d: dict) -> "FinSimplicialSet":
        nd = {int(k): list(v) for k, v in d["nd"].items()}
        dim_of = {x: n for n, xs in nd.items() for x in xs}
        faces = {}
        for x, fs in d.get("faces", {}).items():
            if x not in dim_of:
                raise SimplicialError(f"faces given for unknown simplex {x}")
            n = dim_of[x]
            out = []
            for f in fs:
                if f["nd"] not in dim_of:
                    raise SimplicialError(f"unknown simplex {f['nd']}")
                out.append(Simplex(f["nd"], surjection_from_degens(n - 1, f.get("degens", []))))
            faces[x] = out
        return FinSimplicialSet(nd, faces)


def check_identities(k: FinSimplicialSet, s: Simplex) -> None:
    n = s.dim
    for i in range(n + 1):
        for j in range(n + 1):
            si = k.degeneracy(s, i)
            if i <= j and k.degeneracy(k.degeneracy(s, j), i) != k.degeneracy(si, j + 1):
                raise SimplicialError(f"s_i s_j identity fails on {s}")
    for i in range(n + 1):
        for j in range(n + 2):
            dsj = k.face(k.degeneracy(s, i), j)
            if j < i:
                want = k.degeneracy(k.face(s, j), i - 1)
            elif j in (i, i + 1):
                want = s
            else:
                want = k.degeneracy(k.face(s, j - 1), i)
            if dsj != want:
                raise SimplicialError(f"d_{j} s_{i} identity fails on {s}")


@dataclass
class BipointedSSet:
    base: FinSimplicialSet
    a: str
    b: str

    def __post_init__(self):
        for v in (self.a, self.b):
            if self.base.dim_of.get(v) != 0:
                raise SimplicialError(f"{v} is not a vertex")

    def at(self, a: str, b: str) -> "BipointedSSet":
        return BipointedSSet(self.base, a, b)

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["points"] = [self.a, self.b]
        return d

    @staticmethod
    def from_json(d: dict) -> "BipointedSSet":
        base = FinSimplicialSet.from_json(d)
        a, b = d["points"]
        return BipointedSSet(base, a, b)


# ---------------------------------------------------------------- standard objects


def _label(verts: Iterable[int], n: int) -> str:
    verts = list(verts)
    return ("" if n < 10 else ",").join(map(str, verts))


def _sub_simplicial(n: int, keep) -> FinSimplicialSet:
    nd: dict[int, list[str]] = {}
    faces: dict[str, list[Simplex]] = {}
    for k in range(n + 1):
        for vs in itertools.combinations(range(n + 1), k + 1):
            if not keep(vs):
                continue
            x = _label(vs, n)
            nd.setdefault(k, []).append(x)
            if k:
                faces[x] = [Simplex(_label(vs[:i] + vs[i + 1:], n), tuple(range(k)))
                            for i in range(k + 1)]
    return FinSimplicialSet(nd, faces)


def std_simplex(n: int) -> BipointedSSet:
    if n < 0:
        raise SimplicialError("n must be non-negative")
    return BipointedSSet(_sub_simplicial(n, lambda vs: True), "0", _label([n], n))


def boundary(n: int) -> BipointedSSet:
    if n < 1:
        raise SimplicialError("boundary needs n >= 1")
    return BipointedSSet(_sub_simplicial(n, lambda vs: len(vs) <= n), "0", _label([n], n))


def horn(n: int, j: int) -> BipointedSSet:
    if not 0 <= j <= n or n < 1:
        raise SimplicialError(f"horn({n},{j}) out of range")
    full = set(range(n + 1))

    def keep(vs):
        s = set(vs)
        return s != full and s != full - {j}
    return BipointedSSet(_sub_simplicial(n, keep), "0", _label([n], n))


def circle() -> BipointedSSet:
    base = FinSimplicialSet({0: ["*"], 1: ["e"]},
                            {"e": [Simplex("*", (0,)), Simplex("*", (0,))]})
    return BipointedSSet(base, "*", "*")


def sub_of_simplex(n: int, simplices: Iterable[Iterable[int]]) -> BipointedSSet:
    """The simplicial subset of Delta^n generated by the given vertex sets."""
    gens = [frozenset(s) for s in simplices]
    return BipointedSSet(_sub_simplicial(n, lambda vs: any(set(vs) <= g for g in gens)),
                         "0", _label([n], n))


def poset_nerve_sset(elements: list, leq) -> FinSimplicialSet:
    """Nerve of a finite poset; simplices are labelled by strict chains of indices."""
    els = list(elements)
    n = len(els)
    lt = {(i, j) for i in range(n) for j in range(n) if i != j and leq(els[i], els[j])}
    chains = [[(i,) for i in range(n)]]
    while chains[-1]:
        chains.append([c + (j,) for c in chains[-1] for j in range(n) if (c[-1], j) in lt])
    nd: dict[int, list[str]] = {}
    faces: dict[str, list[Simplex]] = {}

    def name(c):
        return "<".join(map(str, c))
    for k, cs in enumerate(chains):
        for c in cs:
            nd.setdefault(k, []).append(name(c))
            if k:
                faces[name(c)] = [Simplex(name(c[:i] + c[i + 1:]), tuple(range(k)))
                                  for i in range(k + 1)]
    return FinSimplicialSet(nd, faces)


# ---------------------------------------------------------------- necklace instances


@dataclass(frozen=True)
class NecklaceInstance:
    T: Necklace
    beads: tuple[Simplex, ...]

    @property
    def totally_nondegenerate(self) -> bool:
        return all(not b.is_degenerate for b in self.beads)

    def to_json(self) -> dict:
        return {"T": self.T.to_json(), "beads": [b.to_json() for b in self.beads]}


def necklace_instances(k: BipointedSSet, t: Necklace, nondeg_only: bool = False
                       ) -> list[NecklaceInstance]:
    """All maps T -> K sending the endpoints to (a, b)."""
    base = k.base
    if t.p == 0:
        return [NecklaceInstance(t, ())] if k.a == k.b else []
    partial: list[tuple[str, tuple[Simplex, ...]]] = [(k.a, ())]
    for length in t.beads:
        pool = base.simplices(length)
        if nondeg_only:
            pool = [s for s in pool if not s.is_degenerate]
        by_start: dict[str, list[Simplex]] = {}
        for s in pool:
            by_start.setdefault(base.first_vertex(s), []).append(s)
        nxt = []
        for v, acc in partial:
            for s in by_start.get(v, ()):
                nxt.append((base.last_vertex(s), acc + (s,)))
        partial = nxt
    return [NecklaceInstance(t, beads) for v, beads in partial if v == k.b]


def totally_nondeg_instances(k: BipointedSSet, t: Necklace) -> list[NecklaceInstance]:
    return necklace_instances(k, t, nondeg_only=True)


def act(m: NecklaceMap, inst: NecklaceInstance, k: BipointedSSet) -> NecklaceInstance:
    """Restrict an instance over the target of m to the source of m."""
    if inst.T != m.dst:
        raise SimplicialError("instance is not over the target of the map")
    base = k.base
    t = m.dst
    if m.src.p == 0:
        return NecklaceInstance(m.src, ())
    if t.p == 0:
        point = Simplex(k.a, (0,))
        return NecklaceInstance(m.src, tuple(base.apply(point, (0,) * (hi - lo + 1))
                                             for lo, hi in m.src.bead_bounds()))
    bounds = t.bead_bounds()
    out = []
    for lo, hi in m.src.bead_bounds():
        flo, fhi = m.f(lo), m.f(hi)
        idx = next(i for i, (a, b) in enumerate(bounds) if a <= flo and fhi <= b)
        a, _ = bounds[idx]
        theta = tuple(m.f(x) - a for x in range(lo, hi + 1))
        out.append(base.apply(inst.beads[idx], theta))
    return NecklaceInstance(m.src, tuple(out))


def collapse_instance(inst: NecklaceInstance) -> tuple[NecklaceMap, NecklaceInstance]:
    """Write inst = act(sigma, y) with sigma active surjective and y totally
    non-degenerate (Eilenberg-Zilber for necklaces)."""
    t = inst.T
    vals = [0]
    for b in inst.beads:
        base = vals[-1]
        vals.extend(base + v for v in b.surj[1:])
    f = IntervalMap(tuple(vals))
    joints = f.image(t.joints)
    u = Necklace(f.dst_rank, tuple(sorted(joints)))
    beads = tuple(Simplex(b.nd, tuple(range(b.nd_dim + 1))) for b in inst.beads
                  if b.nd_dim > 0)
    return NecklaceMap(t, u, f), NecklaceInstance(u, beads)
