"""Finite intervals, necklaces, extended necklace maps and cubes with connections.

A necklace is stored as a pair (T, p) with {0, p} <= T <= [p].  Maps between
necklaces carry an underlying interval map [p] -> [q] preserving endpoints.
Cube maps are stored as vertex tables; vertices of [1]^n are encoded as
integers whose most significant bit is the first coordinate, so integer order
agrees with the lexicographic order on bit vectors.
"""

from __future__ import annotations

import itertools
import threading
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator


class NecklaceError(ValueError):
    pass


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True, order=True)
class IntervalMap:
    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if not v or v[0] != 0:
            raise NecklaceError(f"interval map must start at 0: {v}")
        for a, b in zip(v, v[1:]):
            if b < a:
                raise NecklaceError(f"interval map not monotone: {v}")

    @property
    def src_rank(self) -> int:
        return len(self.values) - 1

    @property
    def dst_rank(self) -> int:
        return self.values[-1]

    def __call__(self, i: int) -> int:
        return self.values[i]

    def image(self, s: Iterable[int] | None = None) -> frozenset[int]:
        if s is None:
            return frozenset(self.values)
        return frozenset(self.values[i] for i in s)

    def preimage(self, s: Iterable[int]) -> frozenset[int]:
        s = set(s)
        return frozenset(i for i, x in enumerate(self.values) if x in s)

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.dst_rank + 1

    @property
    def is_identity(self) -> bool:
        return self.values == tuple(range(len(self.values)))

    def wedge(self, other: "IntervalMap") -> "IntervalMap":
        q = self.dst_rank
        return IntervalMap(self.values + tuple(q + x for x in other.values[1:]))

    def restrict(self, lo: int, hi: int) -> "IntervalMap":
        base = self.values[lo]
        return IntervalMap(tuple(x - base for x in self.values[lo:hi + 1]))

    @staticmethod
    def identity(p: int) -> "IntervalMap":
        return IntervalMap(tuple(range(p + 1)))

    @staticmethod
    def from_image(p: int, image: Iterable[int]) -> "IntervalMap":
        """The injective map [r] -> [p] with the given image (must contain 0, p)."""
        img = sorted(set(image))
        if img[0] != 0 or img[-1] != p:
            raise NecklaceError(f"image {img} misses an endpoint of [{p}]")
        return IntervalMap(tuple(img))

    def __repr__(self):
        return f"IntervalMap{self.values}"


def compose_interval(f: IntervalMap, g: IntervalMap) -> IntervalMap:
    """g after f."""
    if f.dst_rank != g.src_rank:
        raise NecklaceError(f"rank mismatch: {f} then {g}")
    gv = g.values
    return IntervalMap(tuple(gv[x] for x in f.values))


def fint(p: int, q: int) -> list[IntervalMap]:
    """All endpoint preserving monotone maps [p] -> [q], lexicographic."""
    if p == 0:
        return [IntervalMap((0,))] if q == 0 else []
    out = []
    for mid in itertools.combinations_with_replacement(range(q + 1), p - 1):
        out.append(IntervalMap((0,) + mid + (q,)))
    return out


def interval_delta(p: int, j: int) -> IntervalMap:
    """delta_j: [p-1] -> [p] skipping j."""
    return IntervalMap(tuple(i if i < j else i + 1 for i in range(p)))


def interval_sigma(p: int, i: int) -> IntervalMap:
    """sigma_i: [p+1] -> [p] hitting i twice."""
    return IntervalMap(tuple(x if x <= i else x - 1 for x in range(p + 2)))


# ---------------------------------------------------------------- necklaces


@dataclass(frozen=True)
class Necklace:
    p: int
    joints: tuple[int, ...]

    def __post_init__(self):
        j = self.joints
        if self.p < 0:
            raise NecklaceError("p must be non-negative")
        if list(j) != sorted(set(j)) or not j or j[0] != 0 or j[-1] != self.p:
            raise NecklaceError(f"bad joints {j} for p={self.p}")
        if j[-1] > self.p:
            raise NecklaceError(f"joint out of range in {j}")

    @staticmethod
    def of(p: int, joints: Iterable[int]) -> "Necklace":
        return Necklace(p, tuple(sorted(set(joints) | {0, p})))

    @staticmethod
    def simplex(n: int) -> "Necklace":
        return Necklace(n, (0, n) if n else (0,))

    @staticmethod
    def from_beads(beads: Iterable[int]) -> "Necklace":
        pts = [0]
        for b in beads:
            if b < 1:
                raise NecklaceError("beads have length >= 1")
            pts.append(pts[-1] + b)
        return Necklace(pts[-1], tuple(pts))

    @staticmethod
    def spine(p: int) -> "Necklace":
        return Necklace(p, tuple(range(p + 1)))

    @property
    def jset(self) -> frozenset[int]:
        return frozenset(self.joints)

    @property
    def complement(self) -> tuple[int, ...]:
        js = self.jset
        return tuple(i for i in range(self.p + 1) if i not in js)

    @property
    def dim(self) -> int:
        return self.p + 1 - len(self.joints)

    @property
    def beads(self) -> tuple[int, ...]:
        j = self.joints
        return tuple(b - a for a, b in zip(j, j[1:]))

    def bead_bounds(self) -> list[tuple[int, int]]:
        j = self.joints
        return list(zip(j, j[1:]))

    def wedge(self, other: "Necklace") -> "Necklace":
        return Necklace(self.p + other.p,
                        self.joints + tuple(self.p + x for x in other.joints[1:]))

    def split(self, k: int) -> tuple["Necklace", "Necklace"]:
        if k not in self.jset:
            raise NecklaceError(f"{k} is not a joint of {self}")
        left = Necklace(k, tuple(x for x in self.joints if x <= k))
        right = Necklace(self.p - k, tuple(x - k for x in self.joints if x >= k))
        return left, right

    def name(self) -> str:
        if self.p == 0:
            return "D0"
        return "v".join(f"D{b}" for b in self.beads)

    def __repr__(self):
        return f"Necklace({self.p}, {set(self.joints)})"

    def sort_key(self):
        return (self.p, len(self.joints), self.joints)

    def to_json(self) -> dict:
        return {"p": self.p, "joints": list(self.joints)}

    @staticmethod
    def from_json(d: dict) -> "Necklace":
        return Necklace(int(d["p"]), tuple(sorted(int(x) for x in d["joints"])))


def enumerate_necklaces(p: int) -> list[Necklace]:
    if p < 0:
        raise NecklaceError("p must be non-negative")
    if p == 0:
        return [Necklace(0, (0,))]
    inner = range(1, p)
    out = []
    for k in range(p):
        for extra in itertools.combinations(inner, k):
            out.append(Necklace(p, (0,) + extra + (p,)))
    return out


def all_necklaces(pmax: int) -> list[Necklace]:
    return [t for p in range(pmax + 1) for t in enumerate_necklaces(p)]


def wedge_all(parts: Iterable[Necklace]) -> Necklace:
    out = Necklace(0, (0,))
    for t in parts:
        out = out.wedge(t)
    return out


# ---------------------------------------------------------------- necklace maps


@dataclass(frozen=True)
class NecklaceMap:
    src: Necklace
    dst: Necklace
    f: IntervalMap

    def __post_init__(self):
        if self.f.src_rank != self.src.p or self.f.dst_rank != self.dst.p:
            raise NecklaceError(f"ranks of {self.f} do not match {self.src}->{self.dst}")
        if not self.dst.jset <= self.f.image(self.src.joints):
            raise NecklaceError(f"{self.dst} not contained in f(T) for {self.f}")

    @property
    def marker(self) -> frozenset[int]:
        return self.f.image(self.src.joints)

    @property
    def is_active(self) -> bool:
        return self.dst.jset == self.marker

    @property
    def is_inert(self) -> bool:
        return self.f.is_identity

    @property
    def is_injective(self) -> bool:
        return self.f.is_injective

    @property
    def is_surjective(self) -> bool:
        return self.f.is_surjective

    def to_ext(self) -> "ExtNecklaceMap":
        return ExtNecklaceMap(self.src, self.dst, self.f, self.marker)

    def wedge(self, other: "NecklaceMap") -> "NecklaceMap":
        return NecklaceMap(self.src.wedge(other.src), self.dst.wedge(other.dst),
                           self.f.wedge(other.f))

    def key(self):
        return (self.src.p, self.src.joints, self.dst.p, self.dst.joints, self.f.values)

    def __repr__(self):
        return f"NecklaceMap({self.src.name()}->{self.dst.name()}, {self.f.values})"

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(),
                "values": list(self.f.values)}

    @staticmethod
    def from_json(d: dict) -> "NecklaceMap":
        return NecklaceMap(Necklace.from_json(d["src"]), Necklace.from_json(d["dst"]),
                           IntervalMap(tuple(int(x) for x in d["values"])))


def compose(a: NecklaceMap, b: NecklaceMap) -> NecklaceMap:
    """b after a."""
    if a.dst != b.src:
        raise NecklaceError(f"cannot compose {a} then {b}")
    return NecklaceMap(a.src, b.dst, compose_interval(a.f, b.f))


def identity(t: Necklace) -> NecklaceMap:
    return NecklaceMap(t, t, IntervalMap.identity(t.p))


def necklace_maps(t: Necklace, u: Necklace) -> list[NecklaceMap]:
    uj = u.jset
    out = []
    for f in fint(t.p, u.p):
        if uj <= f.image(t.joints):
            out.append(NecklaceMap(t, u, f))
    return out


def delta(t: Necklace, j: int) -> NecklaceMap:
    """delta_j: (delta_j^{-1}(T), p-1) -> (T, p) for j not a joint of T."""
    if j in t.jset or not 0 < j < t.p:
        raise NecklaceError(f"{j} must be a non-joint of {t}")
    d = interval_delta(t.p, j)
    return NecklaceMap(Necklace(t.p - 1, tuple(sorted(d.preimage(t.joints)))), t, d)


def face(n: int, j: int) -> NecklaceMap:
    """delta_j: Delta^{n-1} -> Delta^n for 0 < j < n."""
    return delta(Necklace.simplex(n), j)


def sigma(n: int, i: int) -> NecklaceMap:
    """sigma_i: Delta^{n+1} -> Delta^n."""
    if not 0 <= i <= n:
        raise NecklaceError(f"sigma_{i} undefined on Delta^{n + 1}")
    return NecklaceMap(Necklace.simplex(n + 1), Necklace.simplex(n), interval_sigma(n, i))


def inert(t: Necklace, u: Necklace) -> NecklaceMap:
    """The inert map T -> U, defined when U <= T on the same interval."""
    return NecklaceMap(t, u, IntervalMap.identity(t.p))


def nu(k: int, l: int) -> NecklaceMap:
    """nu_{k,l}: Delta^k v Delta^l -> Delta^{k+l}."""
    return inert(Necklace.simplex(k).wedge(Necklace.simplex(l)), Necklace.simplex(k + l))


def nu_at(t: Necklace, i: int) -> NecklaceMap:
    """Inert map (T u {i}, p) -> (T, p)."""
    return inert(Necklace.of(t.p, t.jset | {i}), t)


def injective_maps_into(t: Necklace) -> list[NecklaceMap]:
    """All injective necklace maps g: U -> T.

    Such a map is fixed by its image I (T <= I) and by J = g(U) (T <= J <= I).
    Ordered by (dim U, values, joints).
    """
    comp = t.complement
    out = []
    for states in itertools.product((0, 1, 2), repeat=len(comp)):
        # 0: outside the image, 1: in the image but not a joint, 2: joint
        image = set(t.joints) | {c for c, s in zip(comp, states) if s}
        joints = set(t.joints) | {c for c, s in zip(comp, states) if s == 2}
        g = IntervalMap.from_image(t.p, image)
        inv = {x: i for i, x in enumerate(g.values)}
        u = Necklace(g.src_rank, tuple(sorted(inv[x] for x in joints)))
        out.append(NecklaceMap(u, t, g))
    out.sort(key=lambda m: (m.src.dim, m.f.values, m.src.joints))
    return out


def all_maps(pmax: int, qmax: int | None = None) -> Iterator[NecklaceMap]:
    qmax = pmax if qmax is None else qmax
    for t in all_necklaces(pmax):
        for u in all_necklaces(qmax):
            yield from necklace_maps(t, u)


# ---------------------------------------------------------------- classification


def _structural_spine_collapse(m: NecklaceMap) -> bool:
    """Is m a wedge of identities and copies of Delta^1 -> Delta^0?"""
    if not m.is_active or not m.is_surjective:
        return False
    f = m.f
    for a, b in m.src.bead_bounds():
        fa, fb = f(a), f(b)
        if fa == fb:
            if b - a != 1:
                return False
        else:
            if fb - fa != b - a or f.values[a:b + 1] != tuple(range(fa, fb + 1)):
                return False
    return True


def spine_collapse_conditions(m: NecklaceMap) -> tuple[bool, bool, bool]:
    """The three conditions of the spine collapsing lemma for an active surjection."""
    wedge_form = _structural_spine_collapse(m)
    tc, uc = m.src.complement, set(m.dst.complement)
    imgs = [m.f(i) for i in tc]
    bijective = len(set(imgs)) == len(imgs) and set(imgs) == uc
    return wedge_form, bijective, m.src.dim == m.dst.dim


def classify_map(m: NecklaceMap) -> dict[str, bool]:
    flags = {
        "active": m.is_active,
        "inert": m.is_inert,
        "injective": m.is_injective,
        "surjective": m.is_surjective,
        "spine_collapsing": _structural_spine_collapse(m),
    }
    if flags["active"] and flags["surjective"]:
        a, b, c = spine_collapse_conditions(m)
        if not a == b == c:
            raise AssertionError(f"spine collapsing conditions disagree on {m}")
    return flags


# ---------------------------------------------------------------- factorizations


def factor_active_inert(m: NecklaceMap) -> tuple[NecklaceMap, NecklaceMap]:
    mid = Necklace(m.dst.p, tuple(sorted(m.marker)))
    return NecklaceMap(m.src, mid, m.f), inert(mid, m.dst)


def epi_mono(f: IntervalMap) -> tuple[IntervalMap, IntervalMap]:
    """f = h o s with s surjective, h injective."""
    img = sorted(set(f.values))
    pos = {x: i for i, x in enumerate(img)}
    return IntervalMap(tuple(pos[x] for x in f.values)), IntervalMap(tuple(img))


def factor_minus_plus(m: NecklaceMap) -> tuple[NecklaceMap, NecklaceMap]:
    s, h = epi_mono(m.f)
    mid = Necklace(s.dst_rank, tuple(sorted(s.image(m.src.joints))))
    return NecklaceMap(m.src, mid, s), NecklaceMap(mid, m.dst, h)


# ---------------------------------------------------------------- extended maps


@dataclass(frozen=True)
class ExtNecklaceMap:
    src: Necklace
    dst: Necklace
    f: IntervalMap
    marker: frozenset[int]

    def __post_init__(self):
        if self.f.src_rank != self.src.p or self.f.dst_rank != self.dst.p:
            raise NecklaceError(f"ranks of {self.f} do not match {self.src}->{self.dst}")
        object.__setattr__(self, "marker", frozenset(self.marker))
        low = self.f.image(self.src.joints) | self.dst.jset
        if not low <= self.marker or not self.marker <= frozenset(range(self.dst.p + 1)):
            raise NecklaceError(f"marker {sorted(self.marker)} invalid for {self.f}")

    @property
    def in_nec(self) -> bool:
        return self.marker == self.f.image(self.src.joints)

    @property
    def in_minus(self) -> bool:
        return (self.marker == self.dst.jset
                and self.dst.jset | self.f.image() == frozenset(range(self.dst.p + 1)))

    @property
    def in_plus(self) -> bool:
        return self.f.is_injective and self.in_nec

    @property
    def is_coinert(self) -> bool:
        return self.f.is_identity and self.marker == self.dst.jset

    def to_nec(self) -> NecklaceMap:
        if not self.in_nec:
            raise NecklaceError("not a necklace map")
        return NecklaceMap(self.src, self.dst, self.f)

    def wedge(self, other: "ExtNecklaceMap") -> "ExtNecklaceMap":
        q = self.dst.p
        return ExtNecklaceMap(self.src.wedge(other.src), self.dst.wedge(other.dst),
                              self.f.wedge(other.f),
                              self.marker | {q + x for x in other.marker})

    def key(self):
        return (self.src.p, self.src.joints, self.dst.p, self.dst.joints,
                self.f.values, tuple(sorted(self.marker)))

    def __repr__(self):
        return (f"ExtNecklaceMap({self.src.name()}->{self.dst.name()}, {self.f.values}, "
                f"{sorted(self.marker)})")

    def to_json(self) -> dict:
        d = {"src": self.src.to_json(), "dst": self.dst.to_json(),
             "values": list(self.f.values), "marker": sorted(self.marker)}
        return d

    @staticmethod
    def from_json(d: dict) -> "ExtNecklaceMap":
        return ExtNecklaceMap(Necklace.from_json(d["src"]), Necklace.from_json(d["dst"]),
                              IntervalMap(tuple(int(x) for x in d["values"])),
                              frozenset(int(x) for x in d["marker"]))


def as_ext(m) -> ExtNecklaceMap:
    return m if isinstance(m, ExtNecklaceMap) else m.to_ext()


def ext_identity(t: Necklace) -> ExtNecklaceMap:
    return ExtNecklaceMap(t, t, IntervalMap.identity(t.p), t.jset)


def ext_compose(a, b) -> ExtNecklaceMap:
    """b after a, i.e. (g, V') o (f, U') = (gf, V' u g(U'))."""
    a, b = as_ext(a), as_ext(b)
    if a.dst != b.src:
        raise NecklaceError(f"cannot compose {a} then {b}")
    return ExtNecklaceMap(a.src, b.dst, compose_interval(a.f, b.f),
                          b.marker | b.f.image(a.marker))


def coinert(u: Necklace, t: Necklace) -> ExtNecklaceMap:
    """The coinert map (id, T): U -> T, defined when U <= T."""
    if u.p != t.p or not u.jset <= t.jset:
        raise NecklaceError(f"coinert map needs {u} <= {t}")
    return ExtNecklaceMap(u, t, IntervalMap.identity(u.p), t.jset)


def nu_co(k: int, l: int) -> ExtNecklaceMap:
    """nu^co_{k,l}: Delta^{k+l} -> Delta^k v Delta^l."""
    return coinert(Necklace.simplex(k + l), Necklace.simplex(k).wedge(Necklace.simplex(l)))


def ext_maps(t: Necklace, u: Necklace) -> list[ExtNecklaceMap]:
    out = []
    full = range(u.p + 1)
    for f in fint(t.p, u.p):
        low = f.image(t.joints) | u.jset
        free = [x for x in full if x not in low]
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                out.append(ExtNecklaceMap(t, u, f, low | frozenset(extra)))
    return out


def ext_factor(m) -> tuple[ExtNecklaceMap, NecklaceMap]:
    """Factor m = plus o minus with minus in the minus class and plus injective."""
    m = as_ext(m)
    img = sorted(m.f.image() | m.marker)
    h = IntervalMap(tuple(img))
    pos = {x: i for i, x in enumerate(img)}
    g = IntervalMap(tuple(pos[x] for x in m.f.values))
    v = Necklace(h.src_rank, tuple(sorted(pos[x] for x in m.marker)))
    minus = ExtNecklaceMap(m.src, v, g, v.jset)
    plus = NecklaceMap(v, m.dst, h)
    return minus, plus


def ext_decompose(m) -> tuple[NecklaceMap, ExtNecklaceMap, NecklaceMap]:
    """m = inert o coinert o active."""
    m = as_ext(m)
    q = m.dst.p
    t1 = Necklace(q, tuple(sorted(m.f.image(m.src.joints))))
    t2 = Necklace(q, tuple(sorted(m.marker)))
    return NecklaceMap(m.src, t1, m.f), coinert(t1, t2), inert(t2, m.dst)


def ext_split_wedge(m, k: int):
    """Split m: T1 v T2 -> U at the joint k of the source.

    Returns (m1, m2, nu) with m = nu o (m1 v m2) and nu: U u {f(k)} -> U inert.
    """
    was_nec = isinstance(m, NecklaceMap)
    e = as_ext(m)
    t1, t2 = e.src.split(k)
    pt = e.f(k)
    q = e.dst.p
    uu = e.dst.jset | {pt}
    u1 = Necklace(pt, tuple(sorted(x for x in uu if x <= pt)))
    u2 = Necklace(q - pt, tuple(sorted(x - pt for x in uu if x >= pt)))
    m1 = ExtNecklaceMap(t1, u1, e.f.restrict(0, k), frozenset(x for x in e.marker if x <= pt))
    m2 = ExtNecklaceMap(t2, u2, e.f.restrict(k, e.src.p),
                        frozenset(x - pt for x in e.marker if x >= pt))
    link = inert(Necklace(q, tuple(sorted(uu))), e.dst)
    if was_nec:
        return m1.to_nec(), m2.to_nec(), link
    return m1, m2, link


def all_ext_maps(pmax: int, qmax: int | None = None) -> Iterator[ExtNecklaceMap]:
    qmax = pmax if qmax is None else qmax
    for t in all_necklaces(pmax):
        for u in all_necklaces(qmax):
            yield from ext_maps(t, u)


def minus_generators(qmax: int) -> list[ExtNecklaceMap]:
    """sigma_i, nu^co_{p,q} and nu^co_{p,q} delta_p with all ranks <= qmax."""
    gens = []
    for n in range(qmax):
        for i in range(n + 1):
            gens.append(sigma(n, i).to_ext())
    for k in range(1, qmax):
        for l in range(1, qmax - k + 1):
            c = nu_co(k, l)
            gens.append(c)
            gens.append(ext_compose(face(k + l, k), c))
    return gens


def minus_closure(qmax: int, cap: int | None = None) -> set[tuple]:
    """Keys of all maps reachable as composites of wedges id v gen v id.

    Intermediate ranks are bounded by `cap` (default qmax); the search is a
    plain breadth first closure and reports only what it reaches.
    """
    cap = qmax if cap is None else cap
    gens = minus_generators(cap)
    elementary: dict[Necklace, list[ExtNecklaceMap]] = {}
    necks = all_necklaces(cap)
    for g in gens:
        for a in necks:
            for b in necks:
                if a.p + g.src.p + b.p > cap or a.p + g.dst.p + b.p > cap:
                    continue
                e = ext_identity(a).wedge(g).wedge(ext_identity(b))
                elementary.setdefault(e.src, []).append(e)
    seen: dict[tuple, ExtNecklaceMap] = {}
    queue = deque()
    for t in necks:
        e = ext_identity(t)
        seen[e.key()] = e
        queue.append(e)
    while queue:
        e = queue.popleft()
        for step in elementary.get(e.dst, ()):
            c = ext_compose(e, step)
            k = c.key()
            if k not in seen:
                seen[k] = c
                queue.append(c)
    return {k for k, e in seen.items() if e.src.p <= qmax and e.dst.p <= qmax}


# ---------------------------------------------------------------- cubes


def _bit(v: int, n: int, i: int) -> int:
    """Coordinate i (1-indexed) of vertex v of [1]^n."""
    return (v >> (n - i)) & 1


def _vertex(bits: Iterable[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v


def _bits(v: int, n: int) -> tuple[int, ...]:
    return tuple(_bit(v, n, i) for i in range(1, n + 1))


@dataclass(frozen=True)
class CubeMap:
    m: int
    n: int
    table: tuple[int, ...]
    word: tuple[str, ...] = field(default=(), compare=False, hash=False)

    def __post_init__(self):
        if len(self.table) != 1 << self.m or any(not 0 <= x < (1 << self.n) for x in self.table):
            raise NecklaceError("bad cube table")

    def __call__(self, v: int) -> int:
        return self.table[v]

    @property
    def is_monotone(self) -> bool:
        for v in range(1 << self.m):
            for i in range(self.m):
                w = v | (1 << i)
                if w != v and (self.table[v] & ~self.table[w]):
                    return False
        return True

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == 1 << self.n

    def tensor(self, other: "CubeMap") -> "CubeMap":
        tab = []
        for v in range(1 << (self.m + other.m)):
            a, b = v >> other.m, v & ((1 << other.m) - 1)
            tab.append((self.table[a] << other.n) | other.table[b])
        return CubeMap(self.m + other.m, self.n + other.n, tuple(tab),
                       self.word + other.word)

    def image_face(self) -> tuple["CubeMap", int]:
        """Split off the injective part: the face spanned by the image, and its rank."""
        img = set(self.table)
        n = self.n
        free = [i for i in range(1, n + 1) if len({_bit(v, n, i) for v in img}) == 2]
        fixed = {i: _bit(next(iter(img)), n, i) for i in range(1, n + 1) if i not in free}
        k = len(free)
        tab = []
        for w in range(1 << k):
            wb = _bits(w, k)
            it = iter(wb)
            tab.append(_vertex(fixed[i] if i in fixed else next(it) for i in range(1, n + 1)))
        return CubeMap(k, n, tuple(tab)), k

    def to_json(self) -> dict:
        def bs(v, r):
            return "".join(map(str, _bits(v, r)))
        return {"m": self.m, "n": self.n,
                "table": {bs(v, self.m): bs(w, self.n) for v, w in enumerate(self.table)}}

    @staticmethod
    def from_json(d: dict) -> "CubeMap":
        m, n = int(d["m"]), int(d["n"])
        tab = [0] * (1 << m)
        for k, val in d["table"].items():
            tab[int(k, 2) if k else 0] = int(val, 2) if val else 0
        return CubeMap(m, n, tuple(tab))

    def __repr__(self):
        w = ".".join(self.word) if self.word else "?"
        return f"CubeMap({self.m}->{self.n}, {w})"


def cube_compose(f: CubeMap, g: CubeMap) -> CubeMap:
    """g after f."""
    if f.n != g.m:
        raise NecklaceError("cube rank mismatch")
    return CubeMap(f.m, g.n, tuple(g.table[x] for x in f.table), g.word + f.word)


def cube_identity(n: int) -> CubeMap:
    return CubeMap(n, n, tuple(range(1 << n)))


def cube_delta(n: int, i: int, eps: int) -> CubeMap:
    """delta^eps_i: [1]^{n-1} -> [1]^n inserting eps at position i."""
    if not 1 <= i <= n:
        raise NecklaceError(f"delta_{i} undefined into [1]^{n}")
    tab = []
    for v in range(1 << (n - 1)):
        b = list(_bits(v, n - 1))
        b.insert(i - 1, eps)
        tab.append(_vertex(b))
    return CubeMap(n - 1, n, tuple(tab), (f"d{eps}_{i}",))


def cube_sigma(n: int, i: int) -> CubeMap:
    """sigma_i: [1]^n -> [1]^{n-1} deleting coordinate i."""
    if not 1 <= i <= n:
        raise NecklaceError(f"sigma_{i} undefined on [1]^{n}")
    tab = []
    for v in range(1 << n):
        b = list(_bits(v, n))
        del b[i - 1]
        tab.append(_vertex(b))
    return CubeMap(n, n - 1, tuple(tab), (f"s_{i}",))


def cube_gamma(n: int, i: int) -> CubeMap:
    """gamma_i: [1]^n -> [1]^{n-1} replacing coordinates i, i+1 by their max."""
    if not 1 <= i <= n - 1:
        raise NecklaceError(f"gamma_{i} undefined on [1]^{n}")
    tab = []
    for v in range(1 << n):
        b = list(_bits(v, n))
        b[i - 1:i + 1] = [max(b[i - 1], b[i])]
        tab.append(_vertex(b))
    return CubeMap(n, n - 1, tuple(tab), (f"g_{i}",))


def cube_generators_from(n: int, bound: int, kinds: str = "dsg") -> list[CubeMap]:
    gens = []
    if "d" in kinds and n + 1 <= bound:
        gens += [cube_delta(n + 1, i, e) for i in range(1, n + 2) for e in (0, 1)]
    if "s" in kinds and n >= 1:
        gens += [cube_sigma(n, i) for i in range(1, n + 1)]
    if "g" in kinds and n >= 2:
        gens += [cube_gamma(n, i) for i in range(1, n)]
    return gens


CUBE_CAP = 5
_cube_lock = threading.Lock()


@lru_cache(maxsize=None)
def _cube_closure(m: int, bound: int, kinds: str) -> dict[int, tuple[CubeMap, ...]]:
    start = cube_identity(m)
    seen = {(m, start.table): start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for g in cube_generators_from(c.n, bound, kinds):
            d = cube_compose(c, g)
            k = (d.n, d.table)
            if k not in seen:
                seen[k] = d
                queue.append(d)
    out: dict[int, list[CubeMap]] = {}
    for (n, _), c in sorted(seen.items()):
        out.setdefault(n, []).append(c)
    return {n: tuple(v) for n, v in out.items()}


def cube_hom(m: int, n: int, cap: int = CUBE_CAP) -> tuple[list[CubeMap], list[CubeMap]]:
    """All cube maps [1]^m -> [1]^n reachable from generator words, and the
    sub-list reachable by degeneracy and connection words only.

    Intermediate cubes are bounded by rank max(m, n) + 1.
    """
    if m < 0 or n < 0:
        raise NecklaceError("ranks must be non-negative")
    if m > cap or n > cap:
        raise NecklaceError(f"cube_hom({m},{n}) exceeds the cap {cap}")
    bound = max(m, n) + 1
    with _cube_lock:
        allmaps = _cube_closure(m, bound, "dsg").get(n, ())
        surj = _cube_closure(m, m, "sg").get(n, ())
    return list(allmaps), list(surj)


def surjective_cube_count(m: int, n: int) -> int:
    return len(cube_hom(m, n)[1])


# ---------------------------------------------------------------- dim functor


def dim_on_map(m) -> CubeMap:
    """dim(f, U'): V |-> f(V) u U' on the posets of joint refinements."""
    e = as_ext(m)
    tc = e.src.complement
    uc = e.dst.complement
    n, k = len(tc), len(uc)
    base = e.src.jset
    fv = e.f.values
    tab = []
    for v in range(1 << n):
        vs = base | {tc[i] for i in range(n) if _bit(v, n, i + 1)}
        w = {fv[x] for x in vs} | e.marker
        tab.append(_vertex(1 if x in w else 0 for x in uc))
    return CubeMap(n, k, tuple(tab))


def poset_vertex(t: Necklace, v: int) -> frozenset[int]:
    """The element of P_T encoded by the cube vertex v."""
    tc = t.complement
    n = len(tc)
    return t.jset | {tc[i] for i in range(n) if _bit(v, n, i + 1)}


def dim_lift(t: Necklace, g: CubeMap) -> NecklaceMap:
    """The unique injective necklace map f: U -> T with dim(f) = g."""
    if g.n != t.dim:
        raise NecklaceError(f"target rank {g.n} differs from dim {t.dim}")
    if not g.is_injective:
        raise NecklaceError("cube map is not injective")
    bottom = poset_vertex(t, g(0))
    top = poset_vertex(t, g((1 << g.m) - 1))
    h = IntervalMap.from_image(t.p, top)
    pos = {x: i for i, x in enumerate(h.values)}
    u = Necklace(h.src_rank, tuple(sorted(pos[x] for x in bottom)))
    f = NecklaceMap(u, t, h)
    if dim_on_map(f) != g:
        raise NecklaceError(f"{g} is not in the image of dim")
    return f


def dim_generator_table(pmax: int) -> list[tuple[str, CubeMap, CubeMap]]:
    """(label, dim(generator), expected cube generator) for all generators up to pmax."""
    rows = []
    for p in range(2, pmax + 1):
        for k in range(1, p):
            rows.append((f"delta_{k}:D{p - 1}->D{p}", dim_on_map(face(p, k)),
                         cube_delta(p - 1, k, 0)))
            rows.append((f"nu_{k},{p - k}", dim_on_map(nu(k, p - k)),
                         cube_delta(p - 1, k, 1)))
            rows.append((f"nu^co_{k},{p - k}", dim_on_map(nu_co(k, p - k)),
                         cube_sigma(p - 1, k)))
    for p in range(1, pmax):
        for k in range(p + 1):
            if k == 0:
                want = cube_sigma(p, 1)
            elif k == p:
                want = cube_sigma(p, p)
            else:
                want = cube_gamma(p, k)
            rows.append((f"sigma_{k}:D{p + 1}->D{p}", dim_on_map(sigma(p, k)), want))
    rows.append(("sigma_0:D1->D0", dim_on_map(sigma(0, 0)), cube_identity(0)))
    return rows


# ---------------------------------------------------------------- exhaustive checks


def _tally_unique(targets, pairs, compose_fn) -> tuple[bool, object]:
    """Every target key is hit by exactly one composable pair."""
    hits: dict[tuple, int] = {}
    for a, b in pairs:
        k = compose_fn(a, b).key()
        hits[k] = hits.get(k, 0) + 1
    for m in targets:
        if hits.get(m.key(), 0) != 1:
            return False, (m, hits.get(m.key(), 0))
    return True, None


def _pairs(lefts, rights_by_src):
    for a in lefts:
        for b in rights_by_src.get(a.dst, ()):
            yield a, b


def verify_factorizations(pmax: int = 5) -> dict[str, tuple[bool, object]]:
    """Exhaustive existence and uniqueness checks for all factorization systems."""
    report: dict[str, tuple[bool, object]] = {}
    maps = list(all_maps(pmax))

    def by_src(ms):
        d: dict[Necklace, list] = {}
        for m in ms:
            d.setdefault(m.src, []).append(m)
        return d

    def agree(fac, left_ok, right_ok, comp):
        for m in maps:
            a, b = fac(m)
            if not (left_ok(a) and right_ok(b) and comp(a, b) == m):
                return False, m
        return True, None

    actives = [m for m in maps if m.is_active]
    inerts = by_src(m for m in maps if m.is_inert)
    ok1 = _tally_unique(maps, _pairs(actives, inerts), compose)
    ok2 = agree(factor_active_inert, lambda a: a.is_active, lambda b: b.is_inert, compose)
    report["active_inert"] = (ok1[0] and ok2[0], ok1[1] or ok2[1])

    surj = [m for m in maps if m.is_active and m.is_surjective]
    inj = by_src(m for m in maps if m.is_injective)
    ok1 = _tally_unique(maps, _pairs(surj, inj), compose)
    ok2 = agree(factor_minus_plus, lambda a: a.is_active and a.is_surjective,
                lambda b: b.is_injective, compose)
    report["surjective_injective"] = (ok1[0] and ok2[0], ok1[1] or ok2[1])

    bad = None
    for m in surj:
        a, b, c = spine_collapse_conditions(m)
        if not a == b == c:
            bad = m
            break
    report["spine_collapse_equivalence"] = (bad is None, bad)

    ext = list(all_ext_maps(pmax))
    minus = [e for e in ext if e.in_minus]
    plus = by_src(m for m in maps if m.is_injective)
    ok1 = _tally_unique(ext, _pairs(minus, plus), ext_compose)
    bad = None
    for e in ext:
        mi, pl = ext_factor(e)
        if not (mi.in_minus and pl.is_injective and ext_compose(mi, pl) == e):
            bad = e
            break
    report["ext_minus_plus"] = (ok1[0] and bad is None, ok1[1] or bad)

    coin = by_src(e for e in ext if e.is_coinert)
    hits: dict[tuple, int] = {}
    for a in actives:
        for c in coin.get(a.dst, ()):
            ac = ext_compose(a, c)
            for i in inerts.get(c.dst, ()):
                k = ext_compose(ac, i).key()
                hits[k] = hits.get(k, 0) + 1
    bad = next((e for e in ext if hits.get(e.key(), 0) != 1), None)
    if bad is None:
        for e in ext:
            a, c, i = ext_decompose(e)
            if not (a.is_active and c.is_coinert and i.is_inert
                    and ext_compose(ext_compose(a, c), i) == e):
                bad = e
                break
    report["active_coinert_inert"] = (bad is None, bad)
    return report


def verify_minus_generation(qmax: int = 4) -> tuple[bool, object]:
    """Every minus-class map with ranks <= qmax is a word in the generators."""
    reached = minus_closure(qmax)
    for e in all_ext_maps(qmax):
        if e.in_minus and e.key() not in reached:
            return False, e
    stray = [k for k in reached if not ExtNecklaceMap(
        Necklace(k[0], k[1]), Necklace(k[2], k[3]), IntervalMap(k[4]), frozenset(k[5])).in_minus]
    return (not stray), (stray[0] if stray else None)


def verify_dim(pmax: int = 4, lift_dim: int = 4) -> dict[str, tuple[bool, object]]:
    report: dict[str, tuple[bool, object]] = {}
    bad = next((lab for lab, a, b in dim_generator_table(pmax) if a != b), None)
    report["generator_table"] = (bad is None, bad)

    maps = list(all_maps(pmax))
    by_src: dict[Necklace, list[NecklaceMap]] = {}
    for m in maps:
        by_src.setdefault(m.src, []).append(m)
    dims = {m.key(): dim_on_map(m) for m in maps}
    bad = None
    for a in maps:
        for b in by_src.get(a.dst, ()):
            if cube_compose(dims[a.key()], dims[b.key()]) != dim_on_map(compose(a, b)):
                bad = (a, b)
                break
        if bad:
            break
    report["functoriality"] = (bad is None, bad)

    bad = None
    for t in all_necklaces(lift_dim + 1):
        if t.dim > lift_dim:
            continue
        injs = injective_maps_into(t)
        images: dict[tuple, list[NecklaceMap]] = {}
        for g in injs:
            images.setdefault(dim_on_map(g).table, []).append(g)
        for m in range(t.dim + 1):
            for c in cube_hom(m, t.dim)[0]:
                if not c.is_injective:
                    continue
                hits = images.get(c.table, [])
                if len(hits) != 1 or dim_lift(t, c) != hits[0]:
                    bad = (t, c)
                    break
            if bad:
                break
        if bad:
            break
    report["discrete_fibration"] = (bad is None, bad)

    bad = None
    for a in maps:
        for b in maps:
            if a.src.p + b.src.p > pmax or a.dst.p + b.dst.p > pmax:
                continue
            if dim_on_map(a.wedge(b)) != dim_on_map(a).tensor(dim_on_map(b)):
                bad = (a, b)
                break
        if bad:
            break
    report["strong_monoidal"] = (bad is None, bad)
    return report
