"""Chain complexes of length two over Z/n, ``A2 -d-> A1 -d-> A0``.

Chain maps are triples of matrices ``(f2, f1, f0)``; a homotopy is a pair
``(t2, t1)`` with ``t2: A1 -> A'2`` and ``t1: A0 -> A'1``. Pullbacks and
induced maps need a prime modulus (they are kernels and linear solves).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ._hashing import cached_hash
from .errors import NoPullback, UnsupportedBackend
from .fincat import Category, PullbackSquare
from .modmat import Mat, all_matrices, block, kernel, rank, solve, vstack

HOM_ENUM_LIMIT = 200_000


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % k for k in range(2, int(n ** 0.5) + 1))


@cached_hash
@dataclass(frozen=True)
class ChainComplex:
    name: str
    mod: int
    dims: tuple[int, int, int]
    d2: Mat
    d1: Mat

    @classmethod
    def of(cls, name: str, mod: int, dims, d2, d1) -> "ChainComplex":
        n2, n1, n0 = dims
        d2m = d2 if isinstance(d2, Mat) else Mat.of(d2, mod, cols=n2)
        d1m = d1 if isinstance(d1, Mat) else Mat.of(d1, mod, cols=n1)
        return cls(name, mod, tuple(dims), d2m, d1m)

    def check(self) -> list[str]:
        n2, n1, n0 = self.dims
        msgs = []
        if self.d2.shape != (n1, n2):
            msgs.append(f"d2 has shape {self.d2.shape}, expected {(n1, n2)}")
        if self.d1.shape != (n0, n1):
            msgs.append(f"d1 has shape {self.d1.shape}, expected {(n0, n1)}")
        if not msgs and not (self.d1 @ self.d2).is_zero():
            msgs.append("d1 . d2 != 0")
        return msgs

    def __repr__(self) -> str:
        return f"ChainComplex({self.name!r})"


def direct_sum(name: str, *cs: ChainComplex) -> ChainComplex:
    mod = cs[0].mod
    dims = tuple(sum(c.dims[k] for c in cs) for k in range(3))

    def diag(mats):
        grid = []
        for i, m in enumerate(mats):
            grid.append([m if j == i else Mat.zeros(m.rows, mats[j].cols, mod) for j in range(len(mats))])
        return block(grid)

    return ChainComplex(name, mod, dims, diag([c.d2 for c in cs]), diag([c.d1 for c in cs]))


@cached_hash
@dataclass(frozen=True)
class ChainMap:
    src: ChainComplex
    tgt: ChainComplex
    comps: tuple[Mat, Mat, Mat]
    name: str | None = field(default=None, compare=False, hash=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.tgt, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.src, self.tgt, tuple(-a for a in self.comps))

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def __repr__(self) -> str:
        if self.name:
            return self.name
        return f"ChainMap({self.src.name}->{self.tgt.name}, {[c.tolist() for c in self.comps]})"


def chain_map(src: ChainComplex, tgt: ChainComplex, comps, name: str | None = None) -> ChainMap:
    mats = []
    for k, m in zip((2, 1, 0), comps):
        if isinstance(m, Mat):
            mats.append(m)
        else:
            mats.append(Mat.of(m, src.mod, cols=src.dims[2 - k]))
    return ChainMap(src, tgt, tuple(mats), name)


def zero_map(src: ChainComplex, tgt: ChainComplex) -> ChainMap:
    return ChainMap(src, tgt, tuple(Mat.zeros(tgt.dims[k], src.dims[k], src.mod) for k in range(3)))


def is_chain_map(f: ChainMap) -> bool:
    a, b = f.src, f.tgt
    f2, f1, f0 = f.comps
    shapes = [(b.dims[k], a.dims[k]) for k in range(3)]
    if [m.shape for m in f.comps] != shapes:
        return False
    return b.d2 @ f2 == f1 @ a.d2 and b.d1 @ f1 == f0 @ a.d1


@cached_hash
@dataclass(frozen=True)
class Htpy:
    """Homotopy components ``(t2, t1)`` between complexes src -> tgt."""
    t2: Mat
    t1: Mat

    def __add__(self, other: "Htpy") -> "Htpy":
        return Htpy(self.t2 + other.t2, self.t1 + other.t1)

    def __neg__(self) -> "Htpy":
        return Htpy(-self.t2, -self.t1)

    def __sub__(self, other: "Htpy") -> "Htpy":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.t2.is_zero() and self.t1.is_zero()

    def __repr__(self) -> str:
        return f"Htpy({self.t2.tolist()}, {self.t1.tolist()})"


def zero_htpy(src: ChainComplex, tgt: ChainComplex) -> Htpy:
    return Htpy(Mat.zeros(tgt.dims[0], src.dims[1], src.mod), Mat.zeros(tgt.dims[1], src.dims[2], src.mod))


def htpy_shapes(src: ChainComplex, tgt: ChainComplex) -> tuple[tuple[int, int], tuple[int, int]]:
    return (tgt.dims[0], src.dims[1]), (tgt.dims[1], src.dims[2])


def boundary(t: Htpy, src: ChainComplex, tgt: ChainComplex) -> ChainMap:
    """``D(t2, t1) = (t2 d, t1 d + d t2, d t1)``."""
    return ChainMap(src, tgt, (t.t2 @ src.d2, t.t1 @ src.d1 + tgt.d2 @ t.t2, tgt.d1 @ t.t1))


def lwhisk_htpy(g: ChainMap, t: Htpy) -> Htpy:
    """``g t``: post-compose componentwise (g2 t2, g1 t1)."""
    return Htpy(g.comps[0] @ t.t2, g.comps[1] @ t.t1)


def rwhisk_htpy(t: Htpy, f: ChainMap) -> Htpy:
    """``t f``: precompose (t2 f1, t1 f0)."""
    return Htpy(t.t2 @ f.comps[1], t.t1 @ f.comps[2])


def all_htpys(src: ChainComplex, tgt: ChainComplex):
    (r2, c2), (r1, c1) = htpy_shapes(src, tgt)
    for t2 in all_matrices(r2, c2, src.mod):
        for t1 in all_matrices(r1, c1, src.mod):
            yield Htpy(t2, t1)


class ChainCategory(Category):
    backend = "extensional"

    def __init__(self, objects=()):
        self._objects = tuple(objects)

    @property
    def objects(self) -> tuple:
        return self._objects

    def source(self, f: ChainMap):
        return f.src

    def target(self, f: ChainMap):
        return f.tgt

    def identity(self, obj: ChainComplex) -> ChainMap:
        return ChainMap(obj, obj, tuple(Mat.eye(obj.dims[k], obj.mod) for k in range(3)))

    def _compose(self, g: ChainMap, f: ChainMap) -> ChainMap:
        return ChainMap(f.src, g.tgt, tuple(a @ b for a, b in zip(g.comps, f.comps)))

    def _hom_size(self, a, b) -> int:
        return a.mod ** sum(a.dims[k] * b.dims[k] for k in range(3))

    @property
    def enumerable(self) -> bool:
        return all(self._hom_size(a, b) <= HOM_ENUM_LIMIT for a in self._objects for b in self._objects)

    def hom(self, a: ChainComplex, b: ChainComplex) -> tuple:
        if self._hom_size(a, b) > HOM_ENUM_LIMIT:
            raise UnsupportedBackend(f"hom({a.name},{b.name}) too large to enumerate")
        out = []
        for comps in product(*(all_matrices(b.dims[k], a.dims[k], a.mod) for k in range(3))):
            f = ChainMap(a, b, comps)
            if is_chain_map(f):
                out.append(f)
        return tuple(out)

    def check_morphism(self, f: ChainMap) -> list[str]:
        return [] if is_chain_map(f) else ["not a chain map"]

    def pullback(self, f: ChainMap, g: ChainMap) -> PullbackSquare:
        a, b = f.src, g.src
        p = a.mod
        if not _is_prime(p):
            raise UnsupportedBackend("pullbacks of chain complexes need a prime modulus")
        bases = [kernel(block([[f.comps[k], -g.comps[k]]])) for k in range(3)]
        dims = tuple(kb.cols for kb in bases)
        diffs = []
        for k, (src_d, dst) in enumerate(((block([[a.d2, Mat.zeros(a.dims[1], b.dims[0], p)],
                                                   [Mat.zeros(b.dims[1], a.dims[0], p), b.d2]]), 1),
                                          (block([[a.d1, Mat.zeros(a.dims[2], b.dims[1], p)],
                                                  [Mat.zeros(b.dims[2], a.dims[1], p), b.d1]]), 2))):
            x = solve(bases[dst], src_d @ bases[k])
            if x is None:
                raise NoPullback("kernel is not a subcomplex")
            diffs.append(x)
        apex = ChainComplex(f"({a.name}x[{f.tgt.name}]{b.name})", p, dims, diffs[0], diffs[1])
        na = a.dims
        p1 = ChainMap(apex, a, tuple(_rows(bases[k], 0, na[k]) for k in range(3)))
        p2 = ChainMap(apex, b, tuple(_rows(bases[k], na[k], bases[k].rows) for k in range(3)))
        return PullbackSquare(apex, p1, p2, f, g)

    def induced(self, square: PullbackSquare, x: ChainMap, y: ChainMap) -> ChainMap:
        comps = []
        for k in range(3):
            u = solve(vstack(square.p1.comps[k], square.p2.comps[k]), vstack(x.comps[k], y.comps[k]))
            if u is None:
                raise NoPullback("cone does not factor through the square")
            comps.append(u)
        return ChainMap(x.src, square.apex, tuple(comps))


def block_map(src: ChainComplex, src_parts, tgt: ChainComplex, tgt_parts, grid) -> ChainMap:
    """A chain map between direct sums, given as a grid of summand maps.

    ``grid[i][j]`` maps ``src_parts[j]`` to ``tgt_parts[i]``; use ``0`` for the
    zero map and ``1`` for an identity.
    """
    mod = src.mod
    comps = []
    for k in range(3):
        rows = []
        for i, t in enumerate(tgt_parts):
            row = []
            for j, s in enumerate(src_parts):
                g = grid[i][j]
                if isinstance(g, ChainMap):
                    row.append(g.comps[k])
                elif g == 1:
                    row.append(Mat.eye(s.dims[k], mod))
                else:
                    row.append(Mat.zeros(t.dims[k], s.dims[k], mod))
            rows.append(row)
        comps.append(block(rows))
    return ChainMap(src, tgt, tuple(comps))


def block_htpy(src_parts, tgt_parts, grid) -> Htpy:
    """A homotopy between direct sums; ``grid[i][j]`` is a homotopy or ``0``."""
    mod = src_parts[0].mod
    out = []
    for attr, (sk, tk) in (("t2", (1, 2)), ("t1", (0, 1))):
        rows = []
        for i, t in enumerate(tgt_parts):
            row = []
            for j, s in enumerate(src_parts):
                g = grid[i][j]
                # t2: degree 1 of the source to degree 2 of the target; dims are (n2, n1, n0)
                if isinstance(g, Htpy):
                    row.append(getattr(g, attr))
                else:
                    row.append(Mat.zeros(t.dims[2 - tk], s.dims[2 - sk], mod))
            rows.append(row)
        out.append(block(rows))
    return Htpy(*out)


def is_pullback(sq: PullbackSquare) -> bool:
    """Degreewise: the square commutes and (p1, p2) maps the apex isomorphically onto ker [f | -g]."""
    f, g = sq.f, sq.g
    if f.tgt != g.tgt or any(a @ b != c @ d for a, b, c, d in zip(f.comps, sq.p1.comps, g.comps, sq.p2.comps)):
        return False
    for k in range(3):
        n = sq.apex.dims[k]
        stacked = vstack(sq.p1.comps[k], sq.p2.comps[k])
        if rank(stacked) != n:
            return False
        if kernel(block([[f.comps[k], -g.comps[k]]])).cols != n:
            return False
    return True


def _rows(m: Mat, lo: int, hi: int) -> Mat:
    return Mat(hi - lo, m.cols, m.data[lo * m.cols:hi * m.cols], m.mod)
