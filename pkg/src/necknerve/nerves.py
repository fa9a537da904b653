"""Nerves of finite enriched categories, assembled as truncated simplicial sets.

An n-simplex is a vertex tuple plus a compatible family of components, stored
by direct enumeration rather than through functor search; functor_set is the
independent cross-check. Tags: const, Dusk, hc, dg, cub.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from . import chainalg as ca
from .chainalg import ChainComplex, ChainMap, Field, QF
from .diagrams import (
    bead_sets, boundary_object, dg_boundary, dg_complex, dg_image, horn_object, z_map,
)
from .enrichedcats import (
    CubicalCategory, DgCategory, FinCategory, SimpCategory, TwoCategory,
)
from .neckcomb import (
    IntervalMap, Necklace, NecklaceMap, all_necklaces, compose, cube_delta, dim_on_map,
    ext_compose, ext_factor, ext_maps, injective_maps_into, interval_sigma,
)

NERVE_CAP = 5
TAGS = ("const", "Dusk", "hc", "dg", "cub")


class NerveError(ValueError):
    pass


@dataclass(frozen=True)
class NerveSimplex:
    """Vertices plus components keyed by index tuples (pairs, triples or subsets)."""
    tag: str
    objects: tuple
    data: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.objects) - 1

    def get(self, key):
        for k, v in self.data:
            if k == key:
                return v
        raise KeyError(key)

    def as_dict(self) -> dict:
        return dict(self.data)

    def to_json(self) -> dict:
        return {"tag": self.tag, "objects": [str(o) for o in self.objects],
                "data": [[list(k), repr(v)] for k, v in self.data]}


def _mk(tag: str, objects, data: dict) -> NerveSimplex:
    return NerveSimplex(tag, tuple(objects), tuple(sorted(data.items(), key=lambda kv: (len(kv[0]), kv[0]))))


def _norm_tag(tag: str) -> str:
    t = {"dusk": "Dusk", "N_hc": "hc"}.get(tag, tag)
    if t not in TAGS:
        raise NerveError(f"unknown tag {tag!r}")
    return t


def _pairs(n: int):
    return [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


def _triples(n: int):
    return list(itertools.combinations(range(n + 1), 3))


# ---------------------------------------------------------------- vectors in dg homs


def _vec(d: dict) -> frozenset:
    return frozenset((k, v) for k, v in d.items() if v)


class _DgHoms:
    """Cached enumeration of the homogeneous vectors of a dg-category over F_p."""

    def __init__(self, c: DgCategory):
        self.c = c
        self.k = c.field
        self._cache: dict = {}

    def vectors(self, a, b, deg: int) -> list[dict]:
        key = (a, b, deg)
        if key not in self._cache:
            basis = self.c.H(a, b).basis.get(deg, [])
            out = []
            for coeffs in itertools.product(self.k.elements(), repeat=len(basis)):
                out.append({x: c for x, c in zip(basis, coeffs) if c})
            self._cache[key] = out
        return self._cache[key]

    def d(self, a, b, deg: int, v: dict) -> dict:
        h = self.c.H(a, b)
        out: dict = {}
        for x, c in v.items():
            for y, e in h.boundary_of(deg, x).items():
                out[y] = out.get(y, self.k.zero) + c * e
        return {y: e for y, e in out.items() if e}


def _add(k: Field, acc: dict, v: dict, c) -> None:
    for x, e in v.items():
        acc[x] = acc.get(x, k.zero) + c * e


def _clean(v: dict) -> dict:
    return {x: e for x, e in v.items() if e}


def _simplex_label(size: int, rel: Iterable[int], span: int) -> NecklaceMap:
    """The generator of dg(Delta^span) with image rel and joints its endpoints."""
    return NecklaceMap(Necklace.simplex(size - 1), Necklace.simplex(span), IntervalMap(tuple(rel)))


def _dg_eval(c: DgCategory, objs: tuple, alpha: dict, g: NecklaceMap, i: int) -> dict:
    """F(g) for a basis label g of hom(i, i + p) in Phi(dg)^n, from the components."""
    if g.dst.p == 0:
        return dict(c.units[objs[i]])
    image = [i + v for v in g.f.values]
    joints = [i + g.f(x) for x in g.src.joints]
    out = None
    for lo, s in zip(joints, bead_sets(image, joints)):
        v = alpha[tuple(sorted(s))]
        out = dict(v) if out is None else c.mult(objs[joints[0]], objs[lo], objs[max(s)], out, v)
    return _clean(out)


# ---------------------------------------------------------------- enumeration


def nerve_simplices(tag: str, c, n: int) -> list[NerveSimplex]:
    """Every n-simplex of the D-nerve of c, as a compatible family of components."""
    tag = _norm_tag(tag)
    if not 0 <= n <= NERVE_CAP:
        raise NerveError(f"n must lie in [0, {NERVE_CAP}]")
    if tag == "const":
        return _const_simplices(c, n)
    if tag == "Dusk":
        return _dusk_simplices(c, n)
    if tag == "hc":
        return _hc_simplices(c, n)
    if tag == "dg":
        return _dg_simplices(c, n)
    return _cub_simplices(c, n)


def _const_simplices(c: FinCategory, n: int) -> list[NerveSimplex]:
    out = []

    def go(objs, arrows):
        if len(objs) == n + 1:
            data = {}
            for i, j in _pairs(n):
                f = arrows[i]
                for m in range(i + 1, j):
                    f = c.then(f, arrows[m])
                data[(i, j)] = f
            out.append(_mk("const", objs, data))
            return
        for b in c.objects:
            for f in c.hom(objs[-1], b):
                go(objs + [b], arrows + [f])
    for a in c.objects:
        go([a], [])
    return out


def _dusk_simplices(c: TwoCategory, n: int) -> list[NerveSimplex]:
    out = []
    pairs, triples = _pairs(n), _triples(n)
    quads = list(itertools.combinations(range(n + 1), 4))
    for objs in itertools.product(c.objects, repeat=n + 1):
        def go1(idx, x):
            if idx == len(pairs):
                go2(0, x, {})
                return
            i, j = pairs[idx]
            for y in c.hom(objs[i], objs[j]).objects:
                x[(i, j)] = y
                go1(idx + 1, x)
            x.pop(pairs[idx], None)

        def go2(idx, x, th):
            if idx == len(triples):
                data = dict(x)
                data.update(th)
                out.append(_mk("Dusk", objs, data))
                return
            i, j, l = triples[idx]
            hom = c.hom(objs[i], objs[l])
            target = c.h(objs[i], objs[j], objs[l], x[(i, j)], x[(j, l)])
            for t in hom.hom(x[(i, l)], target):
                th[(i, j, l)] = t
                if all(_cocycle(c, objs, x, th, q) for q in quads
                       if {i, j, l} <= set(q)
                       and all(s in th for s in itertools.combinations(q, 3))):
                    go2(idx + 1, x, th)
                del th[(i, j, l)]
        go1(0, {})
    return out


def _cocycle(c: TwoCategory, objs, x, th, q) -> bool:
    i, j, k, l = q
    A = [objs[v] for v in q]
    hij, hkl = c.hom(A[0], A[1]), c.hom(A[2], A[3])
    left = c.h(A[0], A[1], A[3], hij.ident[x[(i, j)]], th[(j, k, l)])
    right = c.h(A[0], A[2], A[3], th[(i, j, k)], hkl.ident[x[(k, l)]])
    hom = c.hom(A[0], A[3])
    return hom.then(th[(i, j, l)], left) == hom.then(th[(i, k, l)], right)


def _hc_simplices(c: SimpCategory, n: int) -> list[NerveSimplex]:
    out = []
    pairs = _pairs(n)
    for objs in itertools.product(c.objects, repeat=n + 1):
        options = [c.elements(objs[i], objs[j]) for i, j in pairs]
        for combo in itertools.product(*options):
            x = dict(zip(pairs, combo))
            if _hc_monotone(c, objs, x, n):
                out.append(_mk("hc", objs, x))
    return out


def _hc_along(c: SimpCategory, objs, x, v: tuple):
    acc = x[(v[0], v[1])]
    for a, b in zip(v[1:], v[2:]):
        acc = c.comp[(objs[v[0]], objs[a], objs[b])](acc, x[(a, b)])
    return acc


def _hc_monotone(c: SimpCategory, objs, x, n: int) -> bool:
    for i, j in _pairs(n):
        inner = range(i + 1, j)
        for r in range(len(inner) + 1):
            for v in itertools.combinations(inner, r):
                small = (i,) + v + (j,)
                lo = _hc_along(c, objs, x, small)
                for w in inner:
                    if w in v:
                        continue
                    big = tuple(sorted(small + (w,)))
                    if not c.leq(objs[i], objs[j], lo, _hc_along(c, objs, x, big)):
                        return False
    return True


def _subsets(n: int) -> list[tuple[int, ...]]:
    out = []
    for size in range(2, n + 2):
        out.extend(itertools.combinations(range(n + 1), size))
    return out


def _dg_simplices(c: DgCategory, n: int) -> list[NerveSimplex]:
    k = c.field
    if not k.finite:
        raise NerveError("enumerating dg-nerve simplices needs a finite field")
    homs = _DgHoms(c)
    subsets = _subsets(n)
    out = []
    for objs in itertools.product(c.objects, repeat=n + 1):
        def go(idx, alpha):
            if idx == len(subsets):
                out.append(_mk("dg", objs, {s: _vec(v) for s, v in alpha.items()}))
                return
            s = subsets[idx]
            i, j = s[0], s[-1]
            g = _simplex_label(len(s), [v - i for v in s], j - i)
            want: dict = {}
            for h, e in dg_boundary(g).items():
                _add(k, want, _dg_eval(c, objs, alpha, h, i), k(e))
            want = _clean(want)
            deg = len(s) - 2
            for v in homs.vectors(objs[i], objs[j], deg):
                if homs.d(objs[i], objs[j], deg, v) == want:
                    alpha[s] = v
                    go(idx + 1, alpha)
            alpha.pop(s, None)
        go(0, {})
    return out


def _cub_simplices(c: CubicalCategory, n: int) -> list[NerveSimplex]:
    out = []
    pairs = _pairs(n)
    for objs in itertools.product(c.objects, repeat=n + 1):
        options = []
        for i, j in pairs:
            h = c.hom(objs[i], objs[j])
            options.append([] if h is None else h.cubes(j - i - 1))
        for combo in itertools.product(*options):
            x = dict(zip(pairs, combo))
            if _cub_ok(c, objs, x, n):
                out.append(_mk("cub", objs, x))
    return out


def _cub_ok(c: CubicalCategory, objs, x, n: int) -> bool:
    for i, j in _pairs(n):
        for m in range(i + 1, j):
            lhs = c.comp[(objs[i], objs[m], objs[j])](x[(i, m)], x[(m, j)], m - i - 1, j - m - 1)
            rhs = c.hom(objs[i], objs[j]).act(x[(i, j)], cube_delta(j - i - 1, m - i, 1))
            if lhs != rhs:
                return False
    return True


def nerve_counts(tag: str, c, nmax: int) -> dict[int, int]:
    return {n: len(nerve_simplices(tag, c, n)) for n in range(nmax + 1)}


# ---------------------------------------------------------------- functors to simplices


def simplex_from_functor(tag: str, n: int, functor) -> NerveSimplex:
    """The simplex of a functor Phi(D)^n -> C as returned by functor_set."""
    tag = _norm_tag(tag)
    if tag == "const":
        om, amap = functor
        return _mk("const", [om[i] for i in range(n + 1)], {p: amap[p] for p in _pairs(n)})
    if tag == "Dusk":
        om, fm = functor["objects"], functor["homs"]
        data = {}
        for i, j in _pairs(n):
            data[(i, j)] = fm[(i, j)][0][frozenset({i, j})]
        for i, j, l in _triples(n):
            data[(i, j, l)] = fm[(i, l)][1][(frozenset({i, l}), frozenset({i, j, l}))]
        return _mk("Dusk", [om[i] for i in range(n + 1)], data)
    if tag == "dg":
        om, fm = functor["objects"], functor["maps"]
        data = {}
        for s in _subsets(n):
            i, j = s[0], s[-1]
            g = _simplex_label(len(s), [v - i for v in s], j - i)
            data[s] = _vec(fm[(i, j)].image_of(len(s) - 2, g))
        return _mk("dg", [om[i] for i in range(n + 1)], data)
    if tag == "cub":
        om, tops = functor["objects"], functor["tops"]
        return _mk("cub", [om[i] for i in range(n + 1)], {p: tops[p] for p in _pairs(n)})
    raise NerveError(f"no functor enumeration for {tag!r}")


# ---------------------------------------------------------------- simplicial structure


def nerve_apply(tag: str, c, x: NerveSimplex, theta: Iterable[int]) -> NerveSimplex:
    """theta^*(x) for a monotone theta: [m] -> [dim x]."""
    tag = _norm_tag(tag)
    th = tuple(theta)
    if any(a > b for a, b in zip(th, th[1:])) or (th and not 0 <= th[0] <= th[-1] <= x.dim):
        raise NerveError(f"{th} is not a monotone map into [{x.dim}]")
    m = len(th) - 1
    objs = tuple(x.objects[t] for t in th)
    comp = x.as_dict()
    data: dict = {}
    if tag in ("const", "hc", "Dusk"):
        for a, b in _pairs(m):
            if th[a] < th[b]:
                data[(a, b)] = comp[(th[a], th[b])]
            elif tag == "const":
                data[(a, b)] = c.ident[objs[a]]
            else:
                data[(a, b)] = c.units[objs[a]]
        if tag == "Dusk":
            for a, b, l in _triples(m):
                if th[a] < th[b] < th[l]:
                    data[(a, b, l)] = comp[(th[a], th[b], th[l])]
                else:
                    data[(a, b, l)] = c.hom(objs[a], objs[l]).ident[data[(a, l)]]
        return _mk(tag, objs, data)
    if tag == "dg":
        alpha = {s: dict(v) for s, v in comp.items()}
        for s in _subsets(m):
            a, b = s[0], s[-1]
            lo, hi = th[a], th[b]
            f = NecklaceMap(Necklace.simplex(b - a), Necklace.simplex(hi - lo),
                            IntervalMap(tuple(th[v] - lo for v in range(a, b + 1))))
            g = _simplex_label(len(s), [v - a for v in s], b - a)
            h = dg_image(f, g)
            val = {} if h is None else _dg_eval(c, x.objects, alpha, h, lo)
            data[s] = _vec(val)
        return _mk("dg", objs, data)
    for a, b in _pairs(m):
        lo, hi = th[a], th[b]
        f = NecklaceMap(Necklace.simplex(b - a), Necklace.simplex(hi - lo),
                        IntervalMap(tuple(th[v] - lo for v in range(a, b + 1))))
        base = comp[(lo, hi)] if lo < hi else c.units[objs[a]]
        data[(a, b)] = c.hom(objs[a], objs[b]).act(base, dim_on_map(f))
    return _mk("cub", objs, data)


def nerve_faces(tag: str, c, x: NerveSimplex, j: int) -> NerveSimplex:
    """d_j x."""
    n = x.dim
    if not 0 <= j <= n or n == 0:
        raise NerveError(f"d_{j} undefined in dimension {n}")
    return nerve_apply(tag, c, x, tuple(v for v in range(n + 1) if v != j))


def nerve_degeneracies(tag: str, c, x: NerveSimplex, i: int) -> NerveSimplex:
    """s_i x."""
    n = x.dim
    if not 0 <= i <= n:
        raise NerveError(f"s_{i} undefined in dimension {n}")
    return nerve_apply(tag, c, x, interval_sigma(n, i).values)


# ---------------------------------------------------------------- truncated simplicial sets


class TruncatedSSet:
    """Levels 0..nmax with face and degeneracy operators given as callables."""

    def __init__(self, levels: dict[int, list], face: Callable, degen: Callable, name: str = ""):
        self.levels = {n: list(v) for n, v in levels.items()}
        self.nmax = max(self.levels) if self.levels else -1
        self._face = face
        self._degen = degen
        self.name = name
        self._faces: dict = {}
        self._index = {n: set(v) for n, v in self.levels.items()}

    def face(self, x, j: int):
        return self._face(x, j)

    def degen(self, x, i: int):
        return self._degen(x, i)

    def faces_of(self, n: int, x) -> tuple:
        key = (n, x)
        if key not in self._faces:
            self._faces[key] = tuple(self._face(x, j) for j in range(n + 1))
        return self._faces[key]

    def counts(self) -> dict[int, int]:
        return {n: len(v) for n, v in sorted(self.levels.items())}

    def validate(self) -> dict:
        """Closure of the levels plus every simplicial identity, on every simplex."""
        fails = []
        for n in range(1, self.nmax + 1):
            for x in self.levels[n]:
                fs = self.faces_of(n, x)
                for f in fs:
                    if f not in self._index[n - 1]:
                        fails.append(("face outside level", n, x))
                for i in range(n + 1):
                    for j in range(i + 1, n + 1):
                        if n >= 2 and self.face(fs[j], i) != self.face(fs[i], j - 1):
                            fails.append(("d_i d_j", n, i, j, x))
        for n in range(self.nmax):
            for x in self.levels[n]:
                ss = [self.degen(x, i) for i in range(n + 1)]
                for i, s in enumerate(ss):
                    if s not in self._index[n + 1]:
                        fails.append(("degeneracy outside level", n, x))
                        continue
                    for j in range(n + 2):
                        d = self.face(s, j)
                        if j in (i, i + 1):
                            want = x
                        elif j < i:
                            want = self.degen(self.face(x, j), i - 1)
                        else:
                            want = self.degen(self.face(x, j - 1), i)
                        if d != want:
                            fails.append(("d_j s_i", n, i, j, x))
                if n + 2 <= self.nmax:
                    for i in range(n + 1):
                        for j in range(i, n + 1):
                            if self.degen(ss[j], i) != self.degen(ss[i], j + 1):
                                fails.append(("s_i s_j", n, i, j, x))
        return {"valid": not fails, "failures": fails[:20], "checked_to": self.nmax}

    @staticmethod
    def from_finsset(k, nmax: int, name: str = "") -> "TruncatedSSet":
        return TruncatedSSet({n: k.simplices(n) for n in range(nmax + 1)},
                             k.face, k.degeneracy, name)


def nerve_sset(tag: str, c, nmax: int) -> TruncatedSSet:
    tag = _norm_tag(tag)
    levels = {n: nerve_simplices(tag, c, n) for n in range(nmax + 1)}
    return TruncatedSSet(levels, lambda x, j: nerve_faces(tag, c, x, j),
                         lambda x, i: nerve_degeneracies(tag, c, x, i), f"N^{tag}")


def _horns(k: TruncatedSSet, n: int, j: int):
    """Compatible families (y_i)_{i != j} in level n - 1."""
    pool = k.levels[n - 1]
    idx = [i for i in range(n + 1) if i != j]

    def go(pos, chosen):
        if pos == len(idx):
            yield dict(chosen)
            return
        kk = idx[pos]
        for y in pool:
            fy = k.faces_of(n - 1, y) if n >= 2 else ()
            ok = True
            for i, yi in chosen.items():
                # d_i y_k = d_{k-1} y_i for i < k
                if n >= 2 and fy[i] != k.faces_of(n - 1, yi)[kk - 1]:
                    ok = False
                    break
            if ok:
                chosen[kk] = y
                yield from go(pos + 1, chosen)
                del chosen[kk]
    yield from go(0, {})


def quasicat_check(k: TruncatedSSet, nmax: int, inner_only: bool = True) -> dict:
    """Inner-horn filling up to nmax; filler existence and uniqueness per (n, j).

    Only levels n - 1 and n take part in filling a horn of dimension n, so the
    truncation must reach nmax.
    """
    if k.nmax < nmax:
        raise NerveError(f"truncation {k.nmax} is below nmax {nmax}")
    rows, failures = [], []
    for n in range(2 if inner_only else 1, nmax + 1):
        js = range(1, n) if inner_only else range(n + 1)
        for j in js:
            fill: dict = {}
            for x in k.levels[n]:
                fs = k.faces_of(n, x)
                key = tuple(f for i, f in enumerate(fs) if i != j)
                fill.setdefault(key, []).append(x)
            count = filled = unique = 0
            for h in _horns(k, n, j):
                count += 1
                key = tuple(h[i] for i in sorted(h))
                got = fill.get(key, [])
                if got:
                    filled += 1
                    unique += len(got) == 1
                elif len(failures) < 10:
                    failures.append({"n": n, "j": j, "horn": {i: repr(v) for i, v in h.items()}})
            rows.append({"n": n, "j": j, "horns": count, "filled": filled, "unique": unique})
    return {"truncation": k.nmax, "nmax": nmax, "rows": rows,
            "ok": all(r["horns"] == r["filled"] for r in rows), "failures": failures}


# ---------------------------------------------------------------- dg checks


def dg_horn_lift_check(c: DgCategory, n: int, j: int) -> dict:
    """Lift every chain map out of the horn object against each hom of c."""
    if not 0 < j < n <= 5:
        raise NerveError("need 0 < j < n <= 5")
    sub, inc = horn_object("dg", n, j, c.field)
    quo, _ = ca.cokernel(inc)
    acyclic = ca.is_acyclic(quo)
    pairs = {}
    for a in c.objects:
        for b in c.objects:
            target = c.H(a, b)
            pairs[(a, b)] = all(ca.solve_lift(inc, f) is not None
                                for f in ca.hom_chain_maps(sub, target))
    solved = all(pairs.values())
    return {"n": n, "j": j, "pairs": pairs, "quotient_acyclic": acyclic,
            "quotient_dims": quo.dims(), "agree": (not acyclic) or solved,
            "ok": solved and acyclic}


def _dg_label(n: int, image: Iterable[int], joints: Iterable[int]) -> NecklaceMap:
    img, js = set(image), set(joints)
    for g in injective_maps_into(Necklace.simplex(n)):
        if set(g.f.values) == img and g.f.image(g.src.joints) == js:
            return g
    raise NerveError("no such generator")


def _retraction_from(n: int, sub: ChainComplex, inc: ChainMap, pi_delta: dict) -> ChainMap:
    big = inc.dst
    top = _dg_label(n, range(n + 1), (0, n))
    k = big.field
    chosen = {x for b in sub.basis.values() for x in b}

    def img(d, g):
        if g in chosen:
            return {g: k.one}
        if g == top:
            return {}
        return pi_delta
    return ca.chain_map_from_images(big, sub, img, validate=False)


def dg_retraction_probe(n: int, j: int, field: Field = QF) -> dict:
    """Solve for a retraction of the horn inclusion and test the closed forms."""
    if not (2 <= n <= 6 and 0 < j < n):
        raise NerveError("need 2 <= n <= 6 and 0 < j < n")
    sub, inc = horn_object("dg", n, j, field)
    k = field
    pi = ca.solve_lift(inc, ca.identity_map(sub))
    quo, _ = ca.cokernel(inc)
    freedom = len(ca.hom_chain_maps(quo, sub))
    top = _dg_label(n, range(n + 1), (0, n))
    dj = _dg_label(n, [v for v in range(n + 1) if v != j], (0, n))
    nu_j = _dg_label(n, range(n + 1), (0, j, n))
    solved = None
    if pi is not None:
        solved = {"top": {repr(x): k.to_py(v) for x, v in pi.image_of(n - 1, top).items()},
                  "delta_j": {repr(x): k.to_py(v) for x, v in pi.image_of(n - 2, dj).items()}}
    printed: dict = {}
    for i in range(1, n):
        if i == j:
            continue
        sign = k.one if (i + j - 1) % 2 == 0 else -k.one
        _add(k, printed, {_dg_label(n, [v for v in range(n + 1) if v != i], (0, n)): k.one}, sign)
        _add(k, printed, {_dg_label(n, range(n + 1), (0, i, n)): k.one}, -sign)
    variants = {}
    for name, extra in (("printed", k.zero), ("plus_nu", k.one), ("minus_nu", -k.one)):
        val = dict(printed)
        _add(k, val, {nu_j: k.one}, extra)
        val = _clean(val)
        p = _retraction_from(n, sub, inc, val)
        retract = ca.compose_maps(inc, p) == ca.identity_map(sub)
        variants[name] = {"retraction": retract, "chain_map": p.is_chain_map()}
    check = pi is not None and ca.compose_maps(inc, pi) == ca.identity_map(sub)
    return {"n": n, "j": j, "solver_found": pi is not None, "solver_is_retraction": check,
            "solution_space_dim": freedom, "solution": solved, "variants": variants}


def _hom_space(a: ChainComplex, b: ChainComplex, tag: str):
    """[a, b] as a degree-0 complex, with its basis of chain maps and coordinates."""
    basis = ca.hom_chain_maps(a, b)
    k = a.field
    space = ChainComplex(k, {0: [(tag, i) for i in range(len(basis))]})

    def flat(f: ChainMap) -> list:
        out = []
        for n in a.degrees:
            for row in ca.entries(f.at(n)):
                out.extend(row)
        return out
    cols = [flat(f) for f in basis]

    def coords(f: ChainMap) -> list:
        if not basis:
            return []
        m = ca.from_rows(k, [list(r) for r in zip(*cols)], len(basis))
        rhs = ca.from_rows(k, [[v] for v in flat(f)], 1)
        sol = ca.solve(m, rhs)
        if sol is None:
            raise NerveError("not in the span of the chain-map basis")
        return [r[0] for r in ca.entries(sol)]
    return space, basis, coords


def _linear(src: ChainComplex, dst: ChainComplex, columns: list[list]) -> ChainMap:
    k = src.field
    ent = {(i, j): v for j, colv in enumerate(columns) for i, v in enumerate(colv) if v}
    return ChainMap(src, dst, {0: ca.from_sparse(k, ent, dst.dim(0), src.dim(0))})


def module_nerve_low(c: DgCategory, a, b) -> dict:
    """N_1(a, b) and N_2(a, b) of the module-valued dg-nerve, with mu_{1,1} and d_1."""
    k = c.field
    d1 = dg_complex(Necklace.simplex(1), k).complex
    d2 = dg_complex(Necklace.simplex(2), k).complex
    dw = dg_complex(Necklace.spine(2), k).complex
    n1, _, n1_coords = _hom_space(d1, c.H(a, b), "N1")
    s2, s2_basis, _ = _hom_space(d2, c.H(a, b), "D2")
    sw, _, sw_coords = _hom_space(dw, c.H(a, b), "V")
    from .neckcomb import face, nu
    nu_map = _chain_map_of(nu(1, 1), k)
    delta = _chain_map_of(face(2, 1), k)
    f = _linear(s2, sw, [sw_coords(ca.compose_maps(nu_map, h)) for h in s2_basis])
    # the coproduct over middle objects of the tensor products
    labels, cols = [], []
    for m in c.objects:
        _, left, _ = _hom_space(d1, c.H(a, m), "L")
        _, right, _ = _hom_space(d1, c.H(m, b), "R")
        for i, x in enumerate(left):
            for j, y in enumerate(right):
                labels.append((m, i, j))
                img = ca.chain_map_from_images(
                    dw, c.H(a, b), lambda n, g: _wedge_image(c, a, m, b, x, y, g))
                cols.append(sw_coords(img))
    pairs = ChainComplex(k, {0: labels})
    g = _linear(pairs, sw, cols)
    p, p2, mu = ca.pullback(f, g)
    restrict = _linear(s2, n1, [n1_coords(ca.compose_maps(delta, h)) for h in s2_basis])
    d_1 = ca.compose_maps(p2, restrict)
    return {"N1": n1.dim(0), "N2": p.dim(0),
            "mu11": ca.mat_to_json(k, mu.at(0)), "d1": ca.mat_to_json(k, d_1.at(0)),
            "middle_basis": [list(map(str, x)) for x in labels]}


def _chain_map_of(m: NecklaceMap, k: Field) -> ChainMap:
    from .diagrams import dg_on_map
    return dg_on_map(m, k)


def _wedge_image(c: DgCategory, a, m, b, x: ChainMap, y: ChainMap, g: NecklaceMap) -> dict:
    from .diagrams import split_injective
    g1, g2 = split_injective(g, 1)
    u = x.image_of(g1.src.dim, g1)
    v = y.image_of(g2.src.dim, g2)
    return c.mult(a, m, b, u, v)


def _factor_through(inc: ChainMap, f: ChainMap) -> ChainMap:
    """h with inc o h = f for an injective inc."""
    maps = {}
    for n in f.src.degrees:
        if not inc.src.dim(n):
            continue
        sol = ca.solve(inc.at(n), f.at(n))
        if sol is None:
            raise NerveError("map does not factor through the inclusion")
        maps[n] = sol
    return ChainMap(f.src, inc.src, maps)


def _from_quotient(jb: ChainMap, jc: ChainMap, fb: ChainMap, fc: ChainMap) -> ChainMap:
    """u on the pushout with u o jb = fb and u o jc = fc."""
    p = jb.dst
    k = p.field
    maps = {}
    for n in p.degrees:
        both = ca.hstack([jb.at(n), jc.at(n)], p.dim(n), k.dom)
        want = ca.hstack([fb.at(n), fc.at(n)], fb.dst.dim(n), k.dom)
        sol = ca.solve(both.transpose(), want.transpose())
        if sol is None:
            raise NerveError("pushout map is not well defined")
        maps[n] = sol.transpose()
    return ChainMap(p, fb.dst, maps)


def comparison_splitting_check(n: int, field: Field = QF) -> dict:
    """Push l^dg of the boundary out along z and compare with N(hc(Delta^n))."""
    if not 1 <= n <= 4:
        raise NerveError("need 1 <= n <= 4")
    t = Necklace.simplex(n)
    sub_dg, inc_dg = boundary_object("dg", n, field)
    sub_hc, inc_hc = boundary_object("hc", n, field)
    z = z_map(t, field)
    zr = _factor_through(inc_hc, ca.compose_maps(inc_dg, z))
    p, jb, jc = ca.pushout(zr, inc_dg)
    u = _from_quotient(jb, jc, inc_hc, z)
    quo, _ = ca.cokernel(u)
    return {"n": n, "pushout_dims": p.dims(), "target_dims": z.dst.dims(),
            "injective": u.is_injective(), "quotient_dims": quo.dims(),
            "quotient_homology": ca.homology_dims(quo),
            "quotient_acyclic": ca.is_acyclic(quo), "degreewise_free": True,
            "ok": u.is_injective() and ca.is_acyclic(quo)}


# ---------------------------------------------------------------- Frobenius structures


class PosetNerveFrobenius:
    """The nerve of a finite poset; n-simplices are weakly increasing chains.

    mu splits a chain at a vertex and Z concatenates along the shared vertex.
    """

    def __init__(self, elements: Iterable, leq: Callable):
        self.verts = list(elements)
        self.leq = leq
        self._chains: dict[int, list[tuple]] = {0: [(v,) for v in self.verts]}

    def elements(self, n: int) -> list[tuple]:
        while n not in self._chains:
            m = max(self._chains)
            self._chains[m + 1] = [c + (v,) for c in self._chains[m] for v in self.verts
                                   if self.leq(c[-1], v)]
        return self._chains[n]

    def longest_chain(self) -> int:
        """Number of elements in a longest strict chain."""
        best = {v: 1 for v in self.verts}
        for _ in self.verts:
            for a in self.verts:
                for b in self.verts:
                    if a != b and self.leq(a, b):
                        best[b] = max(best[b], best[a] + 1)
        return max(best.values(), default=0)

    def ends(self, x: tuple) -> tuple:
        return x[0], x[-1]

    def unit(self, a) -> tuple:
        return (a,)

    def apply(self, f: IntervalMap, x: tuple) -> tuple:
        return tuple(x[v] for v in f.values)

    def mu(self, k: int, l: int, x: tuple) -> tuple[tuple, tuple]:
        return x[:k + 1], x[k:]

    def Z(self, p: int, q: int, x: tuple, y: tuple) -> tuple:
        if x[-1] != y[0]:
            raise NerveError("Z needs matching endpoints")
        return x + y[1:]


class SwappedPosetFrobenius(PosetNerveFrobenius):
    """Concatenation except on Z^{1,1}, which puts the source in the middle slot."""

    def Z(self, p: int, q: int, x: tuple, y: tuple) -> tuple:
        if p == 1 and q == 1:
            return (x[0], x[0], y[1])
        return super().Z(p, q, x, y)


def std_poset_frobenius(n: int) -> PosetNerveFrobenius:
    """F(Delta^n): the nerve of [n]."""
    return PosetNerveFrobenius(range(n + 1), lambda a, b: a <= b)


def _mu0(x, k: int, l: int, z):
    a, b = x.ends(z)
    if k == 0:
        return x.unit(a), z
    if l == 0:
        return z, x.unit(b)
    return x.mu(k, l, z)


def _fint_generators(p: int) -> list[IntervalMap]:
    gens = [interval_sigma(p, i) for i in range(p + 1)]
    gens += [IntervalMap(tuple(v for v in range(p + 1) if v != i)) for i in range(1, p)]
    return gens


def frobenius_check(x, nmax: int) -> dict:
    """Naturality, unitality, associativity and the Frobenius identities up to nmax."""
    tallies = {k: [0, 0] for k in ("naturality", "unit", "associativity", "frobenius")}
    failures: list = []

    def record(kind, ok, witness):
        tallies[kind][1] += 1
        if ok:
            tallies[kind][0] += 1
        elif len(failures) < 10:
            failures.append({"check": kind, "witness": repr(witness)})

    els = {n: x.elements(n) for n in range(nmax + 1)}
    by_start = {n: {} for n in els}
    for n, xs in els.items():
        for e in xs:
            by_start[n].setdefault(x.ends(e)[0], []).append(e)

    def pairs(p, q):
        for a in els[p]:
            for b in by_start[q].get(x.ends(a)[1], []):
                yield a, b

    for n in range(nmax + 1):
        for e in els[n]:
            a, b = x.ends(e)
            record("unit", x.Z(0, n, x.unit(a), e) == e and x.Z(n, 0, e, x.unit(b)) == e, e)
    for p in range(nmax + 1):
        for q in range(nmax + 1 - p):
            for u, v in pairs(p, q):
                z = x.Z(p, q, u, v)
                if p > 0 and p + q < nmax:
                    for f in _fint_generators(p):
                        if f.src_rank + q > nmax:
                            continue
                        lhs = x.Z(f.src_rank, q, x.apply(f, u), v)
                        rhs = x.apply(f.wedge(IntervalMap.identity(q)), z)
                        record("naturality", lhs == rhs, (f, u, v))
                if q > 0 and p + q < nmax:
                    for f in _fint_generators(q):
                        if p + f.src_rank > nmax:
                            continue
                        lhs = x.Z(p, f.src_rank, u, x.apply(f, v))
                        rhs = x.apply(IntervalMap.identity(p).wedge(f), z)
                        record("naturality", lhs == rhs, (u, f, v))
                for r in range(nmax + 1 - p - q):
                    for w in by_start[r].get(x.ends(v)[1], []):
                        record("associativity",
                               x.Z(p + q, r, z, w) == x.Z(p, q + r, u, x.Z(q, r, v, w)), (u, v, w))
                for k in range(p + q + 1):
                    l = p + q - k
                    got = _mu0(x, k, l, z)
                    if p <= k:
                        y1, y2 = _mu0(x, k - p, l, v)
                        want = (x.Z(p, k - p, u, y1), y2)
                    else:
                        x1, x2 = _mu0(x, k, p - k, u)
                        want = (x1, x.Z(p - k, q, x2, v))
                    record("frobenius", got == want, (k, l, u, v))
    return {"nmax": nmax, "checks": {k: {"passed": v[0], "total": v[1]} for k, v in tallies.items()},
            "ok": not failures, "failures": failures}


# ---------------------------------------------------------------- beta families over F_2


class _Vecs:
    """F_2 vectors of a dg-category as frozensets of basis labels."""

    def __init__(self, c: DgCategory):
        if c.field.tag != 2:
            raise NerveError("the beta-family checks run over F_2")
        self.c = c
        self._mult: dict = {}
        self._prod: dict = {}
        self._d: dict = {}

    def basis(self, a, b, deg: int) -> list:
        return self.c.H(a, b).basis.get(deg, [])

    def all(self, a, b, deg: int) -> list[frozenset]:
        bs = self.basis(a, b, deg)
        return [frozenset(s) for r in range(len(bs) + 1) for s in itertools.combinations(bs, r)]

    def unit(self, a) -> frozenset:
        return frozenset(x for x, v in self.c.units[a].items() if v)

    def mult(self, a, b, c, u: frozenset, v: frozenset) -> frozenset:
        key = (a, b, c, u, v)
        hit = self._prod.get(key)
        if hit is None:
            hit = self._prod[key] = self._mult_basis(a, b, c, u, v)
        return hit

    def _mult_basis(self, a, b, c, u: frozenset, v: frozenset) -> frozenset:
        out: set = set()
        for x in u:
            for y in v:
                key = (a, b, c, x, y)
                if key not in self._mult:
                    one = self.c.field.one
                    self._mult[key] = frozenset(self.c.mult(a, b, c, {x: one}, {y: one}))
                out ^= self._mult[key]
        return frozenset(out)

    def d(self, a, b, deg: int, u: frozenset) -> frozenset:
        out: set = set()
        for x in u:
            key = (a, b, deg, x)
            if key not in self._d:
                self._d[key] = frozenset(y for y, e in self.c.H(a, b).boundary_of(deg, x).items() if e)
            out ^= self._d[key]
        return frozenset(out)


class BetaFamilyInstance:
    """X = F(N(P)) over F_2 with a dg-category C and an object map, capped at rank cap.

    beta families are tuples indexed by slots (n, chain); H collections are tuples
    indexed by keys (g, chain).  Every recipe is compiled to integer indices once.
    """

    def __init__(self, x: PosetNerveFrobenius, c: DgCategory, objmap: dict, cap: int = 3):
        if cap > 3:
            raise NerveError("cap above 3")
        if x.longest_chain() > 3:
            raise NerveError("poset chains longer than 3 elements")
        if c.total_dim() > 4:
            raise NerveError("total hom dimension above 4")
        self.x, self.c, self.om, self.cap = x, c, dict(objmap), cap
        self.v = _Vecs(c)
        self.gs = [g for t in all_necklaces(cap) for g in injective_maps_into(t)]
        self.necklaces = all_necklaces(cap)
        self.slots = [(n, ch) for n in range(1, cap + 1) for ch in x.elements(n)]
        self.slot_index = {s: i for i, s in enumerate(self.slots)}
        self.keys = [(g, ch) for g in self.gs for ch in x.elements(g.dst.p)]
        self.key_index = {k: i for i, k in enumerate(self.keys)}
        self._beads = [self._bead_recipe(g.src, tuple(ch[v] for v in g.f.values))
                       for g, ch in self.keys]
        ident = {(g.src.p, ch): i for i, (g, ch) in enumerate(self.keys)
                 if g.src == g.dst and g.src.dim == g.src.p - 1 and g.src.p > 0}
        self._identity_keys = [ident[s] for s in self.slots]
        self._compiled: dict = {}

    def obj(self, chain: tuple, i: int = 0, j: int = -1):
        return self.om[chain[i]], self.om[chain[j]]

    def as_dict(self, family: tuple, keys: list | None = None) -> dict:
        return dict(zip(self.slots if keys is None else keys, family))

    # -- the two sets
    def s1(self) -> list[tuple]:
        options = [self.v.all(*self.obj(ch), n - 1) for n, ch in self.slots]
        return list(itertools.product(*options))

    def _bead_recipe(self, u: Necklace, y: tuple):
        """('unit', value) or the list of (slot, objects) multiplied left to right."""
        if u.p == 0:
            return self.v.unit(self.om[y[0]])
        steps = []
        for lo, hi in u.bead_bounds():
            piece = y[lo:hi + 1]
            steps.append((self.slot_index[(hi - lo, piece)],
                          (self.om[y[0]], self.om[y[lo]], self.om[piece[-1]])))
        return steps

    def h_from_beta(self, beta: tuple) -> tuple:
        """(m beta_U X(g))_g over all keys (g, chain)."""
        mult = self.v.mult
        out = []
        for r in self._beads:
            if isinstance(r, frozenset):
                out.append(r)
                continue
            acc = beta[r[0][0]]
            for s, (a, b, c) in r[1:]:
                acc = mult(a, b, c, acc, beta[s])
            out.append(acc)
        return tuple(out)

    def beta_from_h(self, h: tuple) -> tuple:
        return tuple(h[i] for i in self._identity_keys)

    # -- S_2 by propagation: (c) glues unknowns into classes, (a)/(b) fix some classes
    def _classes(self):
        if "classes" in self._compiled:
            return self._compiled["classes"]
        idx = self.key_index
        parent = list(range(len(self.keys)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u
        for g in self.gs:
            for t2 in self.necklaces:
                for f in injective_maps_into(t2):
                    if f.src != g.dst:
                        continue
                    fg = compose(g, f)
                    for ch in self.x.elements(t2.p):
                        a = find(idx[(g, tuple(ch[v] for v in f.f.values))])
                        parent[a] = find(idx[(fg, ch)])
        rules: dict[int, list] = {}
        for i, (g, ch) in enumerate(self.keys):
            r = find(i)
            if g.dst.p == 0:
                rules.setdefault(r, []).append(("unit", self.v.unit(self.om[ch[0]])))
                continue
            for k in g.dst.joints[1:-1]:
                g1, g2 = _split(g, k)
                objs = (self.om[ch[0]], self.om[ch[k]], self.om[ch[-1]])
                rules.setdefault(r, []).append(
                    ("mult", idx[(g1, ch[:k + 1])], idx[(g2, ch[k:])], objs))
        root_of = [find(i) for i in range(len(self.keys))]
        roots = sorted(set(root_of))
        free = [r for r in roots if r not in rules]
        # evaluation order: every class after the classes its first rule reads
        order, seen = [], set(free)

        def visit(r):
            if r in seen:
                return
            seen.add(r)
            kind = rules[r][0]
            if kind[0] == "mult":
                visit(root_of[kind[1]])
                visit(root_of[kind[2]])
            order.append(r)
        for r in roots:
            visit(r)
        out = (root_of, roots, free, rules, order)
        self._compiled["classes"] = out
        return out

    def s2(self) -> list[tuple]:
        root_of, roots, free, rules, order = self._classes()
        mult = self.v.mult
        options = [self.v.all(*self.obj(self.keys[r][1]), self.keys[r][0].src.dim) for r in free]
        checks = [(r, kind) for r, rs in rules.items() for kind in rs[1:]]
        out = []
        for combo in itertools.product(*options):
            val = dict(zip(free, combo))
            for r in order:
                kind = rules[r][0]
                if kind[0] == "unit":
                    val[r] = kind[1]
                else:
                    _, i, j, (a, b, c) = kind
                    val[r] = mult(a, b, c, val[root_of[i]], val[root_of[j]])
            ok = True
            for r, kind in checks:
                if kind[0] == "unit":
                    want = kind[1]
                else:
                    _, i, j, (a, b, c) = kind
                    want = mult(a, b, c, val[root_of[i]], val[root_of[j]])
                if want != val[r]:
                    ok = False
                    break
            if ok:
                out.append(tuple(val[r] for r in root_of))
        return out

    def free_class_count(self) -> int:
        return len(self._classes()[2])

    # -- differential equations
    def diff_on_h(self, h: tuple) -> bool:
        if "dh" not in self._compiled:
            rows = []
            idx = self.key_index
            for i, (g, ch) in enumerate(self.keys):
                odd = [idx[(k, ch)] for k, e in dg_boundary(g).items() if e % 2]
                rows.append((i, *self.obj(ch), g.src.dim, odd))
            self._compiled["dh"] = rows
        d = self.v.d
        for i, a, b, deg, odd in self._compiled["dh"]:
            rhs: set = set()
            for j in odd:
                rhs ^= h[j]
            if d(a, b, deg, h[i]) != rhs:
                return False
        return True

    def diff_on_beta(self, beta: tuple) -> bool:
        if "db" not in self._compiled:
            rows = []
            si = self.slot_index
            for i, (n, ch) in enumerate(self.slots):
                faces = [si[(n - 1, ch[:j] + ch[j + 1:])] for j in range(1, n)]
                prods = [(self.om[ch[j]], si[(j, ch[:j + 1])], si[(n - j, ch[j:])])
                         for j in range(1, n)]
                rows.append((i, *self.obj(ch), n - 1, faces, prods))
            self._compiled["db"] = rows
        d, mult = self.v.d, self.v.mult
        for i, a, b, deg, faces, prods in self._compiled["db"]:
            rhs: set = set()
            for j in faces:
                rhs ^= beta[j]
            for m, j, k in prods:
                rhs ^= mult(a, m, b, beta[j], beta[k])
            if d(a, b, deg, beta[i]) != rhs:
                return False
        return True

    # -- degeneracy and Frobenius normalization
    def _norm_pairs(self):
        if "nh" not in self._compiled:
            idx = self.key_index
            rows = []
            for g in self.gs:
                t = g.dst
                for t2 in self.necklaces:
                    for f in ext_maps(t, t2):
                        if not f.in_minus:
                            continue
                        _, plus = ext_factor(ext_compose(g, f))
                        same = plus.src.dim == g.src.dim
                        for ch in self.x.elements(t2.p):
                            pulled = tuple(ch[v] for v in f.f.values)
                            rows.append((idx[(g, pulled)], idx[(plus, ch)] if same else None))
            self._compiled["nh"] = rows
        return self._compiled["nh"]

    def norm_on_h(self, h: tuple) -> bool:
        empty = frozenset()
        for left, right in self._norm_pairs():
            if h[left] != (h[right] if right is not None else empty):
                return False
        return True

    def _norm_beta_rows(self):
        if "nb" not in self._compiled:
            si = self.slot_index
            empty = frozenset()
            degen = []
            for n in range(0, self.cap):
                for ch in self.x.elements(n):
                    for i in range(n + 1):
                        want = self.v.unit(self.om[ch[0]]) if n == i == 0 else empty
                        degen.append((si[(n + 1, ch[:i + 1] + ch[i:])], want))
            frob = []
            for p in range(1, self.cap):
                for q in range(1, self.cap + 1 - p):
                    for u in self.x.elements(p):
                        for w in self.x.elements(q):
                            if u[-1] != w[0]:
                                continue
                            z = u + w[1:]
                            objs = (self.om[u[0]], self.om[u[-1]], self.om[w[-1]])
                            frob.append((si[(p + q, z)], si[(p + q - 1, z[:p] + z[p + 1:])],
                                         si[(p, u)], si[(q, w)], objs))
            self._compiled["nb"] = (degen, frob)
        return self._compiled["nb"]

    def norm_on_beta(self, beta: tuple, degeneracies_only: bool = False) -> bool:
        degen, frob = self._norm_beta_rows()
        if any(beta[i] != want for i, want in degen):
            return False
        if degeneracies_only:
            return True
        for top, face, i, j, (a, m, b) in frob:
            if beta[top]:
                return False
            if beta[face] != self.v.mult(a, m, b, beta[i], beta[j]):
                return False
        return True


def _split(g: NecklaceMap, k: int) -> tuple[NecklaceMap, NecklaceMap]:
    from .diagrams import split_injective
    return split_injective(g, k)


def appendix_bijection_check(x: PosetNerveFrobenius, c: DgCategory, objmap: dict,
                             cap: int = 3) -> dict:
    """Both sides of the beta/H correspondence, enumerated and compared."""
    inst = BetaFamilyInstance(x, c, objmap, cap)
    s1 = inst.s1()
    s2 = inst.s2()
    s1_set, s2_set = set(s1), set(s2)
    images = [inst.h_from_beta(b) for b in s1]
    there = all(h in s2_set for h in images)
    back = all(inst.beta_from_h(h) == b for b, h in zip(s1, images))
    forth = all(inst.h_from_beta(inst.beta_from_h(h)) == h for h in s2)
    onto = {inst.beta_from_h(h) for h in s2} == s1_set
    a2_agree = a3_agree = True
    a2_count = a3_count = both = 0
    witnesses = []
    for b, h in zip(s1, images):
        l2 = (inst.diff_on_h(h), inst.diff_on_beta(b))
        l3 = (inst.norm_on_h(h), inst.norm_on_beta(b))
        a2_count += l2[1]
        a3_count += l3[1]
        both += l2[1] and l3[1]
        if l2[0] != l2[1] or l3[0] != l3[1]:
            a2_agree &= l2[0] == l2[1]
            a3_agree &= l3[0] == l3[1]
            if len(witnesses) < 5:
                witnesses.append({"differential": l2, "normalization": l3,
                                  "beta": repr(inst.as_dict(b))})
    ok = there and back and forth and onto and a2_agree and a3_agree
    return {"cap": cap, "S1": len(s1), "S2": len(s2), "free_classes": inst.free_class_count(),
            "S1_to_S2_lands": there, "inverse_on_S1": back, "inverse_on_S2": forth,
            "S2_to_S1_onto": onto, "differential_equivalent": a2_agree, "normalization_equivalent": a3_agree,
            "differential_count": a2_count, "normalization_count": a3_count, "both_count": both,
            "witnesses": witnesses, "ok": ok}


def beta_nerve_count(c: DgCategory, n: int) -> int:
    """n-simplices of the dg-nerve counted as beta families on F(Delta^n).

    These are the families obeying the differential equation on beta and the
    degeneracy normalization, summed over all object maps.
    """
    x = std_poset_frobenius(n)
    total = 0
    for objs in itertools.product(c.objects, repeat=n + 1):
        inst = BetaFamilyInstance(x, c, dict(enumerate(objs)), n + 1)
        total += sum(1 for b in inst.s1() if inst.norm_on_beta(b, True) and inst.diff_on_beta(b))
    return total
