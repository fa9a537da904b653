"""Exact linear algebra and bounded chain complexes over Q and F_p.

Matrices are sympy DomainMatrix objects over QQ or GF(p).  Chain complexes
carry a basis (a list of hashable labels) in every degree and differentials
d_n: C_n -> C_{n-1} as matrices whose columns are indexed by the basis of C_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from sympy import GF, QQ
from sympy.ntheory import isprime
from sympy.polys.matrices import DomainMatrix


class ChainError(ValueError):
    pass


# ---------------------------------------------------------------- fields


@dataclass(frozen=True)
class Field:
    tag: str | int = "Q"

    def __post_init__(self):
        if self.tag != "Q" and not (isinstance(self.tag, int) and isprime(self.tag)):
            raise ChainError(f"unsupported field {self.tag!r}")

    @property
    def dom(self):
        return QQ if self.tag == "Q" else GF(self.tag)

    @property
    def finite(self) -> bool:
        return self.tag != "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if self.tag == "Q":
                return QQ(x.numerator, x.denominator)
            return self.dom(x.numerator) / self.dom(x.denominator)
        return self.dom(int(x)) if self.tag != "Q" else QQ(x)

    @property
    def zero(self):
        return self.dom.zero

    @property
    def one(self):
        return self.dom.one

    def elements(self) -> list:
        if not self.finite:
            raise ChainError("Q is infinite")
        return [self.dom(i) for i in range(self.tag)]

    def to_py(self, x):
        """JSON friendly scalar: int for F_p, int or 'a/b' string for Q."""
        if self.finite:
            return int(x) % self.tag
        fr = Fraction(int(x.numerator), int(x.denominator))
        return fr.numerator if fr.denominator == 1 else str(fr)

    def from_py(self, x):
        if isinstance(x, str):
            return self(Fraction(x))
        return self(x)

    def to_json(self):
        return "Q" if self.tag == "Q" else {"p": self.tag}

    @staticmethod
    def from_json(d) -> "Field":
        if d == "Q":
            return Field("Q")
        if isinstance(d, dict) and "p" in d:
            return Field(int(d["p"]))
        raise ChainError(f"bad field {d!r}")

    def __repr__(self):
        return "Q" if self.tag == "Q" else f"F_{self.tag}"


QF = Field("Q")
F2 = Field(2)


# ---------------------------------------------------------------- matrices


def zeros(k: Field, r: int, c: int) -> DomainMatrix:
    return DomainMatrix.zeros((r, c), k.dom)


def eye(k: Field, n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, k.dom)


def from_rows(k: Field, rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    r = len(rows)
    c = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix([[k(x) if not isinstance(x, type(k.one)) else x for x in row]
                         for row in rows], (r, c), k.dom) if r and c else zeros(k, r, c)


def from_sparse(k: Field, entries: dict[tuple[int, int], object], r: int, c: int) -> DomainMatrix:
    rows: dict[int, dict[int, object]] = {}
    for (i, j), v in entries.items():
        v = v if isinstance(v, type(k.one)) else k(v)
        if v:
            rows.setdefault(i, {})[j] = v
    return DomainMatrix(rows, (r, c), k.dom).to_dense()


def mul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape[1] != b.shape[0]:
        raise ChainError(f"shape mismatch {a.shape} x {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return DomainMatrix.zeros((a.shape[0], b.shape[1]), a.domain)
    return (a * b).to_dense()


def mat_eq(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and (0 in a.shape or (a.to_sparse() - b.to_sparse()).is_zero_matrix)


def is_zero(a: DomainMatrix) -> bool:
    return 0 in a.shape or a.is_zero_matrix


def rank(a: DomainMatrix) -> int:
    return 0 if 0 in a.shape else a.rank()


def nullspace(a: DomainMatrix) -> DomainMatrix:
    """Columns form a basis of {x : a x = 0}."""
    r, c = a.shape
    if c == 0:
        return DomainMatrix.zeros((0, 0), a.domain)
    if r == 0 or a.is_zero_matrix:
        return DomainMatrix.eye(c, a.domain)
    ns = a.to_dense().nullspace()
    if ns.shape[0] == 0:
        return DomainMatrix.zeros((c, 0), a.domain)
    return ns.transpose().to_dense()


def column_space(a: DomainMatrix) -> DomainMatrix:
    """A basis of the column space (pivot columns of a)."""
    r, c = a.shape
    if 0 in a.shape:
        return DomainMatrix.zeros((r, 0), a.domain)
    _, piv = a.to_dense().rref()
    return hstack([col(a, j) for j in piv], r, a.domain)


def col(a: DomainMatrix, j: int) -> DomainMatrix:
    return a.extract(list(range(a.shape[0])), [j]).to_dense()


def hstack(cols: Sequence[DomainMatrix], r: int, dom) -> DomainMatrix:
    if not cols:
        return DomainMatrix.zeros((r, 0), dom)
    if r == 0:
        return DomainMatrix.zeros((0, sum(c.shape[1] for c in cols)), dom)
    out = cols[0]
    for c in cols[1:]:
        out = out.hstack(c)
    return out.to_dense()


def vstack(rows: Sequence[DomainMatrix], c: int, dom) -> DomainMatrix:
    rows = [x for x in rows if x.shape[0]]
    if not rows:
        return DomainMatrix.zeros((0, c), dom)
    if c == 0:
        return DomainMatrix.zeros((sum(x.shape[0] for x in rows), 0), dom)
    out = rows[0]
    for x in rows[1:]:
        out = out.vstack(x)
    return out.to_dense()


def solve(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix | None:
    """Some x with a x = b (b may have several columns), or None."""
    r, c = a.shape
    k = b.shape[1]
    dom = a.domain
    if r == 0:
        return DomainMatrix.zeros((c, k), dom)
    if c == 0:
        return DomainMatrix.zeros((0, k), dom) if is_zero(b) else None
    if k == 0:
        return DomainMatrix.zeros((c, 0), dom)
    aug = a.hstack(b).to_dense()
    red, piv = aug.rref()
    if any(p >= c for p in piv):
        return None
    rows = red.to_list()
    x = [[dom.zero] * k for _ in range(c)]
    for i, p in enumerate(piv):
        for j in range(k):
            x[p][j] = rows[i][c + j]
    return DomainMatrix(x, (c, k), dom)


def entries(a: DomainMatrix) -> list[list]:
    r, c = a.shape
    if r == 0 or c == 0:
        return [[] for _ in range(r)]
    return a.to_list()


def mat_to_json(k: Field, a: DomainMatrix) -> list[list]:
    return [[k.to_py(x) for x in row] for row in entries(a)]


def mat_from_json(k: Field, rows: list[list], r: int, c: int) -> DomainMatrix:
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ChainError(f"matrix shape does not match ({r}, {c})")
    return from_rows(k, [[k.from_py(x) for x in row] for row in rows], c)


# ---------------------------------------------------------------- complexes


class ChainComplex:
    def __init__(self, field: Field, basis: dict[int, list[Hashable]],
                 d: dict[int, DomainMatrix] | None = None, validate: bool = True):
        self.field = field
        self.basis = {n: list(b) for n, b in basis.items() if b}
        self.index = {n: {x: i for i, x in enumerate(b)} for n, b in self.basis.items()}
        for n, b in self.basis.items():
            if len(self.index[n]) != len(b):
                raise ChainError(f"repeated basis label in degree {n}")
        self.d: dict[int, DomainMatrix] = {}
        for n, m in (d or {}).items():
            want = (self.dim(n - 1), self.dim(n))
            if m.shape != want:
                raise ChainError(f"d_{n} has shape {m.shape}, expected {want}")
            if not is_zero(m):
                self.d[n] = m.convert_to(field.dom)
        if validate:
            self.validate()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    @property
    def lo(self) -> int:
        return min(self.basis) if self.basis else 0

    @property
    def hi(self) -> int:
        return max(self.basis) if self.basis else 0

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def dims(self) -> dict[int, int]:
        return {n: len(b) for n, b in sorted(self.basis.items())}

    def dims_tuple(self) -> tuple[int, ...]:
        if not self.basis:
            return ()
        return tuple(self.dim(n) for n in range(self.lo, self.hi + 1))

    def diff(self, n: int) -> DomainMatrix:
        m = self.d.get(n)
        return m if m is not None else zeros(self.field, self.dim(n - 1), self.dim(n))

    def validate(self) -> None:
        for n in self.basis:
            if not is_zero(mul(self.diff(n - 1), self.diff(n))):
                raise ChainError(f"d_{n - 1} d_{n} != 0")

    def boundary_of(self, n: int, label) -> dict:
        """d(label) as {label: coefficient}."""
        j = self.index[n][label]
        m = self.diff(n)
        out = {}
        for i, row in enumerate(entries(m)):
            if row[j]:
                out[self.basis[n - 1][i]] = row[j]
        return out

    def euler(self) -> int:
        return sum((-1) ** n * v for n, v in self.dims().items())

    def __repr__(self):
        return f"ChainComplex({self.field}, dims={self.dims()})"

    def to_json(self, label: Callable = str) -> dict:
        return {"field": self.field.to_json(), "lo": self.lo, "hi": self.hi,
                "basis": {str(n): [label(x) for x in b] for n, b in sorted(self.basis.items())},
                "d": {str(n): mat_to_json(self.field, m) for n, m in sorted(self.d.items())}}

    @staticmethod
    def from_json(d: dict) -> "ChainComplex":
        k = Field.from_json(d["field"])
        basis = {int(n): list(b) for n, b in d["basis"].items()}
        dims = {n: len(b) for n, b in basis.items()}
        diffs = {int(n): mat_from_json(k, m, dims.get(int(n) - 1, 0), dims.get(int(n), 0))
                 for n, m in d.get("d", {}).items()}
        lo, hi = d.get("lo"), d.get("hi")
        if basis and lo is not None and hi is not None:
            if min(basis) < lo or max(basis) > hi:
                raise ChainError("basis outside the declared degree window")
        return ChainComplex(k, basis, diffs)


def complex_from_boundaries(k: Field, basis: dict[int, list], bd: Callable) -> ChainComplex:
    """Build a complex from bd(n, label) -> {label: coefficient}."""
    idx = {n: {x: i for i, x in enumerate(b)} for n, b in basis.items()}
    d = {}
    for n, b in basis.items():
        if not b or n - 1 not in basis:
            continue
        ent = {}
        for j, x in enumerate(b):
            for y, c in bd(n, x).items():
                ent[(idx[n - 1][y], j)] = ent.get((idx[n - 1][y], j), 0) + c
        d[n] = from_sparse(k, ent, len(basis[n - 1]), len(b))
    return ChainComplex(k, basis, d)


def unit_complex(k: Field, label="1") -> ChainComplex:
    return ChainComplex(k, {0: [label]})


def zero_complex(k: Field) -> ChainComplex:
    return ChainComplex(k, {})


@dataclass
class ChainMap:
    src: ChainComplex
    dst: ChainComplex
    maps: dict[int, DomainMatrix] = field(default_factory=dict)
    validate: bool = True

    def __post_init__(self):
        if self.src.field != self.dst.field:
            raise ChainError("field mismatch")
        k = self.src.field
        clean = {}
        for n, m in self.maps.items():
            want = (self.dst.dim(n), self.src.dim(n))
            if m.shape != want:
                raise ChainError(f"component {n} has shape {m.shape}, expected {want}")
            if not is_zero(m):
                clean[n] = m.convert_to(k.dom)
        self.maps = clean
        if self.validate:
            self.check()

    def at(self, n: int) -> DomainMatrix:
        m = self.maps.get(n)
        return m if m is not None else zeros(self.src.field, self.dst.dim(n), self.src.dim(n))

    def degrees(self) -> set[int]:
        return set(self.src.basis) | set(self.dst.basis)

    def check(self) -> None:
        for n in self.degrees() | {n + 1 for n in self.degrees()}:
            lhs = mul(self.dst.diff(n), self.at(n))
            rhs = mul(self.at(n - 1), self.src.diff(n))
            if not mat_eq(lhs, rhs):
                raise ChainError(f"not a chain map in degree {n}")

    def is_chain_map(self) -> bool:
        try:
            self.check()
            return True
        except ChainError:
            return False

    def image_of(self, n: int, label) -> dict:
        j = self.src.index[n][label]
        out = {}
        for i, row in enumerate(entries(self.at(n))):
            if row[j]:
                out[self.dst.basis[n][i]] = row[j]
        return out

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return all(mat_eq(self.at(n), other.at(n)) for n in self.degrees() | other.degrees())

    def is_injective(self) -> bool:
        return all(rank(self.at(n)) == self.src.dim(n) for n in self.src.basis)

    def is_surjective(self) -> bool:
        return all(rank(self.at(n)) == self.dst.dim(n) for n in self.dst.basis)


def chain_map_from_images(src: ChainComplex, dst: ChainComplex, img: Callable,
                          validate: bool = True) -> ChainMap:
    """img(n, label) -> {dst label: coefficient}."""
    k = src.field
    maps = {}
    for n, b in src.basis.items():
        ent = {}
        for j, x in enumerate(b):
            for y, c in img(n, x).items():
                i = dst.index[n][y]
                ent[(i, j)] = ent.get((i, j), 0) + c
        maps[n] = from_sparse(k, ent, dst.dim(n), len(b))
    return ChainMap(src, dst, maps, validate)


def compose_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """g after f."""
    return ChainMap(f.src, g.dst, {n: mul(g.at(n), f.at(n)) for n in f.src.basis})


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: eye(c.field, c.dim(n)) for n in c.basis})


def zero_map(a: ChainComplex, b: ChainComplex) -> ChainMap:
    return ChainMap(a, b, {})


# ---------------------------------------------------------------- tensor


def tensor(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    if c.field != d.field:
        raise ChainError("field mismatch")
    k = c.field
    basis: dict[int, list] = {}
    for i in c.degrees:
        for j in d.degrees:
            for x in c.basis[i]:
                for y in d.basis[j]:
                    basis.setdefault(i + j, []).append((x, y))
    deg_c = {x: i for i, b in c.basis.items() for x in b}

    def bd(n, lab):
        x, y = lab
        i = deg_c[x]
        out = {}
        for x2, a in c.boundary_of(i, x).items():
            out[(x2, y)] = out.get((x2, y), 0) + a
        sign = -k.one if i % 2 else k.one
        for y2, b in d.boundary_of(n - i, y).items():
            out[(x, y2)] = out.get((x, y2), 0) + sign * b
        return out

    return complex_from_boundaries(k, basis, bd)


# ---------------------------------------------------------------- hom and lifts


def _unknown_layout(a: ChainComplex, b: ChainComplex) -> tuple[dict, int]:
    """Index the entries of a degree-0 map a -> b as unknowns."""
    pos, cnt = {}, 0
    for n in a.degrees:
        for i in range(b.dim(n)):
            for j in range(a.dim(n)):
                pos[(n, i, j)] = cnt
                cnt += 1
    return pos, cnt


def _chain_equations(a: ChainComplex, b: ChainComplex, pos: dict, cnt: int) -> DomainMatrix:
    """Rows of d_b phi_n - phi_{n-1} d_a = 0."""
    k = a.field
    rows = []
    for n in sorted(set(a.degrees) | {m + 1 for m in a.degrees}):
        db = entries(b.diff(n))
        da = entries(a.diff(n))
        for i in range(b.dim(n - 1)):
            for j in range(a.dim(n)):
                row = {}
                for l in range(b.dim(n)):
                    c = db[i][l]
                    if c and (n, l, j) in pos:
                        row[pos[(n, l, j)]] = row.get(pos[(n, l, j)], k.zero) + c
                for l in range(a.dim(n - 1)):
                    c = da[l][j]
                    if c and (n - 1, i, l) in pos:
                        row[pos[(n - 1, i, l)]] = row.get(pos[(n - 1, i, l)], k.zero) - c
                row = {key: v for key, v in row.items() if v}
                if row:
                    rows.append(row)
    return DomainMatrix({r: row for r, row in enumerate(rows)}, (len(rows), cnt), k.dom).to_dense()


def _vector_to_map(a: ChainComplex, b: ChainComplex, pos: dict, vec: list) -> ChainMap:
    k = a.field
    maps = {}
    for n in a.degrees:
        ent = {(i, j): vec[pos[(n, i, j)]] for i in range(b.dim(n)) for j in range(a.dim(n))}
        maps[n] = from_sparse(k, ent, b.dim(n), a.dim(n))
    return ChainMap(a, b, maps)


def hom_chain_maps(a: ChainComplex, b: ChainComplex) -> list[ChainMap]:
    """A basis of the space of degree-0 chain maps a -> b."""
    if a.field != b.field:
        raise ChainError("field mismatch")
    pos, cnt = _unknown_layout(a, b)
    if cnt == 0:
        return []
    eqs = _chain_equations(a, b, pos, cnt)
    ns = nullspace(eqs)
    out = []
    for j in range(ns.shape[1]):
        vec = [row[0] for row in entries(col(ns, j))]
        out.append(_vector_to_map(a, b, pos, vec))
    return out


def all_chain_maps(a: ChainComplex, b: ChainComplex) -> list[ChainMap]:
    """Every chain map a -> b; only over a finite field."""
    k = a.field
    if not k.finite:
        raise ChainError("cannot enumerate chain maps over Q")
    basis = hom_chain_maps(a, b)
    out = []
    for coeffs in itertools.product(k.elements(), repeat=len(basis)):
        maps = {}
        for n in a.degrees:
            acc = zeros(k, b.dim(n), a.dim(n))
            for c, f in zip(coeffs, basis):
                if c:
                    acc = (acc + f.at(n) * c).to_dense()
            maps[n] = acc
        out.append(ChainMap(a, b, maps, validate=False))
    return out


def solve_lift(i: ChainMap, f: ChainMap) -> ChainMap | None:
    """Some chain map g: B -> X with g o i = f, or None."""
    if i.src is not f.src and i.src.basis != f.src.basis:
        raise ChainError("i and f must share their source")
    bcx, x = i.dst, f.dst
    pos, cnt = _unknown_layout(bcx, x)
    k = bcx.field
    eqs = [_chain_equations(bcx, x, pos, cnt)]
    rhs = [zeros(k, eqs[0].shape[0], 1)]
    rows, vals = [], []
    for n in f.src.degrees:
        im = entries(i.at(n))
        fv = entries(f.at(n))
        for r in range(x.dim(n)):
            for j in range(f.src.dim(n)):
                row = {}
                for l in range(bcx.dim(n)):
                    c = im[l][j]
                    if c:
                        row[pos[(n, r, l)]] = c
                rows.append(row)
                vals.append(fv[r][j])
    if rows:
        eqs.append(DomainMatrix({r: row for r, row in enumerate(rows) if row},
                                (len(rows), cnt), k.dom).to_dense())
        rhs.append(DomainMatrix([[v] for v in vals], (len(vals), 1), k.dom))
    a = vstack(eqs, cnt, k.dom)
    b = vstack(rhs, 1, k.dom)
    if cnt == 0:
        return zero_map(bcx, x) if is_zero(b) else None
    sol = solve(a, b)
    if sol is None:
        return None
    vec = [row[0] for row in entries(sol)]
    g = _vector_to_map(bcx, x, pos, vec)
    if compose_maps(i, g) != f:
        raise ChainError("lift does not restrict to f")
    return g


# ---------------------------------------------------------------- kernels and friends


def homology_dims(c: ChainComplex) -> dict[int, int]:
    out = {}
    for n in c.degrees:
        z = c.dim(n) - rank(c.diff(n))
        b = rank(c.diff(n + 1))
        out[n] = z - b
    return out


def subcomplex(c: ChainComplex, vectors: dict[int, DomainMatrix], prefix: str = "s"
               ) -> tuple[ChainComplex, ChainMap]:
    """The subcomplex spanned by the given columns (assumed closed under d)."""
    k = c.field
    basis = {n: [(prefix, n, j) for j in range(v.shape[1])] for n, v in vectors.items()}
    d = {}
    for n, v in vectors.items():
        if n - 1 not in vectors or v.shape[1] == 0:
            continue
        img = mul(c.diff(n), v)
        sol = solve(vectors[n - 1], img)
        if sol is None:
            raise ChainError("span is not closed under the differential")
        d[n] = sol
    for n, v in vectors.items():
        if v.shape[1] and n - 1 not in vectors and not is_zero(mul(c.diff(n), v)):
            raise ChainError("span is not closed under the differential")
    sub = ChainComplex(k, basis, d)
    return sub, ChainMap(sub, c, {n: v for n, v in vectors.items()})


def span_of_labels(c: ChainComplex, labels: Iterable) -> tuple[ChainComplex, ChainMap]:
    """The subcomplex spanned by a set of basis labels."""
    k = c.field
    chosen = set(labels)
    basis = {n: [x for x in b if x in chosen] for n, b in c.basis.items()}
    sub_basis = {n: b for n, b in basis.items() if b}

    def bd(n, x):
        out = c.boundary_of(n, x)
        for y in out:
            if y not in chosen:
                raise ChainError(f"span not closed: d({x}) involves {y}")
        return out
    sub = complex_from_boundaries(k, sub_basis, bd)
    inc = chain_map_from_images(sub, c, lambda n, x: {x: k.one})
    return sub, inc


def kernel(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    vecs = {n: nullspace(f.at(n)) for n in f.src.degrees}
    return subcomplex(f.src, vecs, "ker")


def image(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    vecs = {n: column_space(f.at(n)) for n in f.dst.degrees}
    return subcomplex(f.dst, vecs, "im")


def quotient(c: ChainComplex, sub_vectors: dict[int, DomainMatrix], prefix: str = "q"
             ) -> tuple[ChainComplex, ChainMap]:
    """c / span(sub_vectors) with the projection, using a complement basis."""
    k = c.field
    comp: dict[int, list[int]] = {}
    for n in c.degrees:
        s = sub_vectors.get(n, zeros(k, c.dim(n), 0))
        have = s
        chosen = []
        for j in range(c.dim(n)):
            e = col(eye(k, c.dim(n)), j)
            trial = hstack([have, e], c.dim(n), k.dom)
            if rank(trial) > rank(have):
                have = trial
                chosen.append(j)
        comp[n] = chosen
    basis = {n: [(prefix, n, j) for j in range(len(js))] for n, js in comp.items()}
    proj = {}
    for n in c.degrees:
        s = sub_vectors.get(n, zeros(k, c.dim(n), 0))
        cols = [col(eye(k, c.dim(n)), j) for j in comp[n]]
        full = hstack([hstack(cols, c.dim(n), k.dom), s], c.dim(n), k.dom)
        coords = solve(full, eye(k, c.dim(n)))
        proj[n] = coords.extract(list(range(len(comp[n]))), list(range(c.dim(n)))).to_dense() \
            if comp[n] and c.dim(n) else zeros(k, len(comp[n]), c.dim(n))
    d = {}
    for n in c.degrees:
        if n - 1 in c.basis and comp[n]:
            cols = hstack([col(eye(k, c.dim(n)), j) for j in comp[n]], c.dim(n), k.dom)
            d[n] = mul(proj[n - 1], mul(c.diff(n), cols))
    q = ChainComplex(k, basis, d)
    return q, ChainMap(c, q, proj)


def cokernel(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    vecs = {n: f.at(n) for n in f.dst.degrees}
    return quotient(f.dst, vecs, "coker")


def direct_sum(a: ChainComplex, b: ChainComplex) -> tuple[ChainComplex, ChainMap, ChainMap,
                                                           ChainMap, ChainMap]:
    """a + b with inclusions and projections."""
    k = a.field
    basis = {}
    for n in sorted(set(a.basis) | set(b.basis)):
        basis[n] = [(0, x) for x in a.basis.get(n, [])] + [(1, y) for y in b.basis.get(n, [])]

    def bd(n, lab):
        side, x = lab
        src = a if side == 0 else b
        return {(side, y): c for y, c in src.boundary_of(n, x).items()}
    s = complex_from_boundaries(k, basis, bd)
    one = k.one
    ia = chain_map_from_images(a, s, lambda n, x: {(0, x): one})
    ib = chain_map_from_images(b, s, lambda n, x: {(1, x): one})
    pa = chain_map_from_images(s, a, lambda n, lab: {lab[1]: one} if lab[0] == 0 else {})
    pb = chain_map_from_images(s, b, lambda n, lab: {lab[1]: one} if lab[0] == 1 else {})
    return s, ia, ib, pa, pb


def pullback(f: ChainMap, g: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Pullback of a -f-> c <-g- b, with projections to a and b."""
    if f.dst.basis != g.dst.basis:
        raise ChainError("pullback needs a common target")
    s, ia, ib, pa, pb = direct_sum(f.src, g.src)
    k = s.field
    m = ChainMap(s, f.dst, {n: hstack([f.at(n), g.at(n) * k.dom(-1)], f.dst.dim(n), k.dom)
                            for n in s.degrees})
    p, inc = kernel(m)
    qa, qb = compose_maps(inc, pa), compose_maps(inc, pb)
    if compose_maps(qa, f) != compose_maps(qb, g):
        raise ChainError("pullback square does not commute")
    return p, qa, qb


def pushout(f: ChainMap, g: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Pushout of b <-f- a -g-> c, with the structure maps from b and c."""
    if f.src.basis != g.src.basis:
        raise ChainError("pushout needs a common source")
    s, ib, ic, _, _ = direct_sum(f.dst, g.dst)
    k = s.field
    vecs = {}
    for n in s.degrees:
        vecs[n] = vstack([f.at(n), g.at(n) * k.dom(-1)], f.src.dim(n), k.dom)
    q, proj = quotient(s, vecs, "po")
    jb, jc = compose_maps(ib, proj), compose_maps(ic, proj)
    if compose_maps(f, jb) != compose_maps(g, jc):
        raise ChainError("pushout square does not commute")
    return q, jb, jc


def is_acyclic(c: ChainComplex) -> bool:
    return all(v == 0 for v in homology_dims(c).values())
