"""2-cell structures over a finite category.

A structure assigns to every ordered pair of objects (A, B) a set of cells
H(A, B) with ``dom``/``cod`` into hom(A, B), zero cells ``0_f``, a partial
vertical sum ``v + u`` (defined when ``dom v == cod u``) and whiskering by
morphisms on both sides.

``TableStructure`` stores all of this as explicit tables over a
:class:`~sesqui.fincat.TableCategory`. Lazy structures (see
:mod:`sesqui.constructions`) compute the same operations from concrete data
and only enumerate cells when the base category is small enough.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Mapping

from .errors import (MissingEntry, NotInvertible, NotVerticallyComposable, NotWhiskerable,
                     ShapeMismatch, TypeMismatch, UnsupportedBackend)
from .fincat import Category, PullbackSquare, TableCategory
from .report import ValidationReport


class CellStructure(ABC):
    base: Category

    @abstractmethod
    def dom(self, x): ...

    @abstractmethod
    def cod(self, x): ...

    @abstractmethod
    def zero(self, f): ...

    @abstractmethod
    def _vsum(self, v, u): ...

    @abstractmethod
    def _lwhisk(self, g, y): ...

    @abstractmethod
    def _rwhisk(self, x, f): ...

    @property
    def enumerable(self) -> bool:
        return self.base.enumerable

    def cells(self, a, b) -> tuple:
        raise UnsupportedBackend(f"{type(self).__name__} does not enumerate cells")

    def pair(self, x) -> tuple:
        f = self.dom(x)
        return self.base.source(f), self.base.target(f)

    def vsum(self, v, u):
        """``v + u``: ``u`` first, so ``dom(v + u) = dom u``."""
        dv, cu = self.dom(v), self.cod(u)
        if dv != cu:
            raise NotVerticallyComposable(f"dom({v!r}) != cod({u!r})", (dv, cu))
        return self._vsum(v, u)

    def lwhisk(self, g, y):
        if self.base.source(g) != self.pair(y)[1]:
            raise NotWhiskerable(f"{g!r} cannot act on the left of {y!r}")
        return self._lwhisk(g, y)

    def rwhisk(self, x, f):
        if self.base.target(f) != self.pair(x)[0]:
            raise NotWhiskerable(f"{f!r} cannot act on the right of {x!r}")
        return self._rwhisk(x, f)

    def neg(self, x):
        """The inverse cell, searched among H(A, B) unless overridden."""
        a, b = self.pair(x)
        zc, zd = self.zero(self.cod(x)), self.zero(self.dom(x))
        for y in self.cells(a, b):
            if self.dom(y) == self.cod(x) and self.cod(y) == self.dom(x):
                if self._vsum(x, y) == zc and self._vsum(y, x) == zd:
                    return y
        raise NotInvertible(f"{x!r} has no inverse")

    def mediate(self, square: PullbackSquare, x, y):
        """The unique cell u in H(D, apex) with ``p1 u = x`` and ``p2 u = y``."""
        d = self.pair(x)[0]
        hits = [u for u in self.cells(d, square.apex)
                if self.lwhisk(square.p1, u) == x and self.lwhisk(square.p2, u) == y]
        if len(hits) != 1:
            from .errors import NotCartesianHere
            raise NotCartesianHere(f"{len(hits)} cells over the pair ({x!r}, {y!r})")
        return hits[0]

    def all_cells(self):
        objs = self.base.objects
        for a in objs:
            for b in objs:
                yield from self.cells(a, b)

    def cell(self, x) -> "Cell":
        a, b = self.pair(x)
        return Cell(self, (a, b), x, self.dom(x), self.cod(x))


@dataclass(frozen=True)
class Cell:
    """Read-only view of one cell with its resolved boundary."""
    structure: Any
    pair: tuple
    id: Hashable
    dom: Any
    cod: Any


class TableStructure(CellStructure):
    backend = "enumerated"

    def __init__(self, base: TableCategory, cells: Mapping[str, tuple[str, str]], zero: Mapping[str, str],
                 vsum: Mapping[tuple[str, str], str], lwhisk: Mapping[tuple[str, str], str],
                 rwhisk: Mapping[tuple[str, str], str], labels: Mapping | None = None):
        self.base = base
        self.cell_types = dict(cells)
        self.zeros = dict(zero)
        self.vsums = dict(vsum)
        self.lwhisks = dict(lwhisk)
        self.rwhisks = dict(rwhisk)
        self.labels = dict(labels or {})
        self._by_pair: dict[tuple, list[str]] = {(a, b): [] for a in base.objects for b in base.objects}
        for x, (f, _) in self.cell_types.items():
            key = (base.morphism_types[f][0], base.morphism_types[f][1]) if f in base.morphism_types else None
            self._by_pair.setdefault(key, []).append(x)

    @property
    def enumerable(self) -> bool:
        return True

    def _type(self, x):
        try:
            return self.cell_types[x]
        except KeyError:
            raise TypeMismatch(f"unknown cell {x!r}") from None

    def dom(self, x):
        return self._type(x)[0]

    def cod(self, x):
        return self._type(x)[1]

    def zero(self, f):
        try:
            return self.zeros[f]
        except KeyError:
            raise MissingEntry(f"no zero cell for {f}") from None

    def _lookup(self, table, key, what):
        try:
            return table[key]
        except KeyError:
            raise MissingEntry(f"no {what} entry for {key}") from None

    def _vsum(self, v, u):
        return self._lookup(self.vsums, (v, u), "plus")

    def _lwhisk(self, g, y):
        return self._lookup(self.lwhisks, (g, y), "lwhisk")

    def _rwhisk(self, x, f):
        return self._lookup(self.rwhisks, (x, f), "rwhisk")

    def cells(self, a, b) -> tuple:
        return tuple(self._by_pair.get((a, b), ()))

    def all_cells(self):
        return iter(self.cell_types)

    def replace(self, **changes) -> "TableStructure":
        kw = dict(base=self.base, cells=self.cell_types, zero=self.zeros, vsum=self.vsums,
                  lwhisk=self.lwhisks, rwhisk=self.rwhisks, labels=self.labels)
        kw.update(changes)
        return TableStructure(**kw)

    def without_cell(self, x) -> "TableStructure":
        """Drop a cell and every table entry taking it as an argument.

        Entries that produce ``x`` are kept, so they now point outside the
        structure and show up as typing findings.
        """
        return self.replace(
            cells={k: v for k, v in self.cell_types.items() if k != x},
            vsum={k: v for k, v in self.vsums.items() if x not in k},
            lwhisk={k: v for k, v in self.lwhisks.items() if k[1] != x},
            rwhisk={k: v for k, v in self.rwhisks.items() if k[0] != x},
        )


# -- operations ---------------------------------------------------------------

def vcomp(H: CellStructure, v, u):
    return H.vsum(v, u)


def lwhisker(H: CellStructure, g, y):
    return H.lwhisk(g, y)


def rwhisker(H: CellStructure, x, f):
    return H.rwhisk(x, f)


def inverse(H: CellStructure, x):
    if not H.enumerable and type(H).neg is CellStructure.neg:
        raise UnsupportedBackend("inverse needs enumerable cells")
    return H.neg(x)


def is_invertible_structure(H: CellStructure) -> bool:
    _require_enumerable(H)
    for x in H.all_cells():
        try:
            H.neg(x)
        except NotInvertible:
            return False
    return True


def _require_enumerable(H: CellStructure) -> None:
    if not H.enumerable:
        raise UnsupportedBackend(f"{type(H).__name__} over this base is not enumerable")


def validate_structure(H: CellStructure) -> ValidationReport:
    """Check the three axiom groups exhaustively; one finding per violated instance."""
    _require_enumerable(H)
    rep = ValidationReport()
    cat = H.base
    objs = cat.objects

    # intern morphisms and cells as integers so the axiom loops hash ints only
    mors, mtype, homs = [], [], {}
    midx: dict = {}
    for a in objs:
        for b in objs:
            ids = []
            for f in cat.hom(a, b):
                midx[f] = len(mors)
                ids.append(len(mors))
                mors.append(f)
                mtype.append((a, b))
            homs[(a, b)] = ids
    cells, ctype, pair_cells = [], [], {}
    cidx: dict = {}
    for a in objs:
        for b in objs:
            ids = []
            for x in H.cells(a, b):
                cidx[x] = len(cells)
                ids.append(len(cells))
                cells.append(x)
                ctype.append((a, b))
            pair_cells[(a, b)] = ids

    def note(axiom, *wit, message=""):
        rep.add("structure", axiom, *wit, message=message)

    comp: dict = {}

    def C(gi, fi):
        key = (gi, fi)
        if key not in comp:
            try:
                comp[key] = midx.get(cat.compose(mors[gi], mors[fi]), -1)
            except Exception:
                comp[key] = -1
        return comp[key]

    def cell_id(x, pair):
        i = cidx.get(x, -1)
        return i if i >= 0 and ctype[i] == pair else -1

    cdom, ccod = [], []
    for i, x in enumerate(cells):
        hom = homs[ctype[i]]
        d, c = midx.get(H.dom(x), -1), midx.get(H.cod(x), -1)
        if d not in hom or c not in hom:
            note("typing.dom_cod", x)
        cdom.append(d)
        ccod.append(c)
    zeros = {}
    for fi, f in enumerate(mors):
        try:
            z = H.zero(f)
        except Exception as exc:
            note("zero.defined", f, message=str(exc))
            continue
        zi = cell_id(z, mtype[fi])
        if zi < 0 or cdom[zi] != fi or ccod[zi] != fi:
            note("zero.typing", f, z)
            continue
        zeros[fi] = zi

    # vertical sums, group (3)
    by_cod: dict = {}
    for i in range(len(cells)):
        by_cod.setdefault(ccod[i], []).append(i)
    vs = {}
    for i, x in enumerate(cells):
        if cdom[i] < 0:
            continue
        for j in by_cod.get(cdom[i], ()):
            try:
                w = H.vsum(x, cells[j])
            except Exception as exc:
                note("vsum.total", x, cells[j], message=str(exc))
                continue
            k = cell_id(w, ctype[i])
            if k < 0:
                note("vsum.typing", x, cells[j], w)
                continue
            vs[(i, j)] = k
            if cdom[k] != cdom[j]:
                note("vsum.dom", x, cells[j], w)
            if ccod[k] != ccod[i]:
                note("vsum.cod", x, cells[j], w)
    for i, x in enumerate(cells):
        zc, zd = zeros.get(ccod[i]), zeros.get(cdom[i])
        if zc is not None and vs.get((zc, i)) != i:
            note("vsum.unit.left", cells[zc], x)
        if zd is not None and vs.get((i, zd)) != i:
            note("vsum.unit.right", x, cells[zd])
    for (i, j), w in vs.items():
        for k in by_cod.get(cdom[j], ()):
            inner = vs.get((j, k))
            outer = vs.get((w, k))
            if inner is None or outer is None:
                continue
            if vs.get((i, inner)) != outer:
                note("vsum.assoc", cells[i], cells[j], cells[k])

    # whiskering, groups (1) and (2)
    lw, rw = {}, {}
    for i, y in enumerate(cells):
        a, b = ctype[i]
        for c in objs:
            for gi in homs[(b, c)]:
                g = mors[gi]
                try:
                    gy = H.lwhisk(g, y)
                except Exception as exc:
                    note("lwhisk.total", g, y, message=str(exc))
                    continue
                k = cell_id(gy, (a, c))
                if k < 0:
                    note("lwhisk.typing", g, y, gy)
                    continue
                lw[(gi, i)] = k
                if cdom[k] != C(gi, cdom[i]):
                    note("whisker.dom", g, y)
                if ccod[k] != C(gi, ccod[i]):
                    note("whisker.cod", g, y)
            for fi in homs[(c, a)]:
                f = mors[fi]
                try:
                    yf = H.rwhisk(y, f)
                except Exception as exc:
                    note("rwhisk.total", y, f, message=str(exc))
                    continue
                k = cell_id(yf, (c, b))
                if k < 0:
                    note("rwhisk.typing", y, f, yf)
                    continue
                rw[(i, fi)] = k
                if cdom[k] != C(cdom[i], fi):
                    note("whisker.dom", y, f)
                if ccod[k] != C(ccod[i], fi):
                    note("whisker.cod", y, f)

    for fi, (a, b) in enumerate(mtype):
        zf = zeros.get(fi, -1)
        for c in objs:
            for gi in homs[(b, c)]:
                zgf = zeros.get(C(gi, fi), -2)
                left = lw.get((gi, zf), -3)
                right = rw.get((zeros.get(gi, -1), fi), -4)
                if not (left == zgf == right):
                    note("whisker.zero", mors[gi], mors[fi])

    for (i, j), w in vs.items():
        a, b = ctype[i]
        for c in objs:
            for fi in homs[(c, a)]:
                lhs, r1, r2 = rw.get((w, fi)), rw.get((i, fi)), rw.get((j, fi))
                if lhs is None or r1 is None or r2 is None:
                    continue
                if vs.get((r1, r2)) != lhs:
                    note("whisker.vsum.right", cells[i], cells[j], mors[fi])
            for gi in homs[(b, c)]:
                lhs, l1, l2 = lw.get((gi, w)), lw.get((gi, i)), lw.get((gi, j))
                if lhs is None or l1 is None or l2 is None:
                    continue
                if vs.get((l1, l2)) != lhs:
                    note("whisker.vsum.left", mors[gi], cells[i], cells[j])

    for (gi, i), k in lw.items():
        c = mtype[gi][1]
        for d in objs:
            for g2 in homs[(c, d)]:
                g2g = C(g2, gi)
                if g2g < 0:
                    continue
                if lw.get((g2, k), -1) != lw.get((g2g, i), -2):
                    note("action.left.assoc", mors[g2], mors[gi], cells[i])
    for (i, fi), k in rw.items():
        a2 = mtype[fi][0]
        for a3 in objs:
            for f2 in homs[(a3, a2)]:
                ff2 = C(fi, f2)
                if ff2 < 0:
                    continue
                if rw.get((k, f2), -1) != rw.get((i, ff2), -2):
                    note("action.right.assoc", cells[i], mors[fi], mors[f2])
        b = ctype[i][1]
        for c in objs:
            for gi in homs[(b, c)]:
                gx = lw.get((gi, i))
                if gx is None:
                    continue
                if lw.get((gi, k), -1) != rw.get((gx, fi), -2):
                    note("action.bimodule", mors[gi], cells[i], mors[fi])
    for i, x in enumerate(cells):
        a, b = ctype[i]
        try:
            ia, ib = midx.get(cat.identity(a), -1), midx.get(cat.identity(b), -1)
        except Exception:
            continue
        if lw.get((ib, i)) != i:
            note("action.unit.left", x)
        if rw.get((i, ia)) != i:
            note("action.unit.right", x)
    return rep


def check_structure_morphism(phi: Mapping | Callable, H: CellStructure, H2: CellStructure) -> ValidationReport:
    """Report every instance where ``phi: H -> H2`` fails to be a morphism of 2-cell structures."""
    _require_enumerable(H)
    _require_enumerable(H2)
    get = phi.get if isinstance(phi, Mapping) else phi
    rep = ValidationReport()
    cat = H.base
    objs = cat.objects
    image = {}
    for a in objs:
        for b in objs:
            target_cells = set(H2.cells(a, b))
            for x in H.cells(a, b):
                y = get(x)
                if y is None:
                    raise ShapeMismatch(f"phi is undefined on {x!r}")
                if y not in target_cells:
                    raise ShapeMismatch(f"phi({x!r}) = {y!r} lies outside H'({a},{b})")
                image[x] = y

    def note(axiom, *wit):
        rep.add("morphism", axiom, *wit)

    for x, y in image.items():
        if H2.dom(y) != H.dom(x):
            note("dom' phi = dom", x)
        if H2.cod(y) != H.cod(x):
            note("cod' phi = cod", x)
    for a in objs:
        for b in objs:
            for f in cat.hom(a, b):
                if image.get(H.zero(f)) != H2.zero(f):
                    note("phi 0 = 0'", f)
            xs = H.cells(a, b)
            for x in xs:
                for x2 in xs:
                    if H.dom(x) != H.cod(x2):
                        continue
                    try:
                        rhs = H2.vsum(image[x], image[x2])
                    except Exception:
                        note("phi + = +'(phi x phi)", x, x2)
                        continue
                    if image.get(H.vsum(x, x2)) != rhs:
                        note("phi + = +'(phi x phi)", x, x2)
                for c in objs:
                    for g in cat.hom(b, c):
                        if image.get(H.lwhisk(g, x)) != H2.lwhisk(g, image[x]):
                            note("phi natural (left)", g, x)
                    for f in cat.hom(c, a):
                        if image.get(H.rwhisk(x, f)) != H2.rwhisk(image[x], f):
                            note("phi natural (right)", x, f)
    return rep


def identity_morphism(H: CellStructure) -> dict:
    return {x: x for x in H.all_cells()}


# -- materialization ------------------------------------------------------------

def _obj_name(o) -> str:
    return o if isinstance(o, str) else getattr(o, "name", str(o))


def materialize(H: CellStructure, cell_prefix: str = "x") -> TableStructure:
    """Enumerate a lazy structure into explicit tables with string ids.

    ``labels`` on the result maps every new id back to the concrete object,
    morphism, or cell it names.
    """
    _require_enumerable(H)
    cat = H.base
    if isinstance(cat, TableCategory):
        table = cat
        mname = {f: f for f in cat.morphisms()}
        oname = {o: o for o in cat.objects}
    else:
        oname = {o: _obj_name(o) for o in cat.objects}
        if len(set(oname.values())) != len(oname):
            raise ValueError("object names are not unique")
        morphisms, identities, mname = {}, {}, {}
        counter = 0
        for a in cat.objects:
            ida = cat.identity(a)
            for b in cat.objects:
                for f in cat.hom(a, b):
                    if f == ida:
                        name = f"id_{oname[a]}"
                    else:
                        name = f"m{counter}"
                        counter += 1
                    mname[f] = name
                    morphisms[name] = (oname[a], oname[b])
            identities[oname[a]] = mname[ida]
        composition = {}
        for f, fn in mname.items():
            for g, gn in mname.items():
                if cat.target(f) == cat.source(g):
                    composition[(gn, fn)] = mname[cat.compose(g, f)]
        table = TableCategory(list(oname.values()), morphisms, identities, composition)
    cname: dict = {}
    cell_types = {}
    counter = 0
    zero_ids = {}
    for a in cat.objects:
        for b in cat.objects:
            for f in cat.hom(a, b):
                zero_ids[H.zero(f)] = f"z_{mname[f]}"
    for a in cat.objects:
        for b in cat.objects:
            for x in H.cells(a, b):
                if x in cname:
                    continue
                if x in zero_ids:
                    name = zero_ids[x]
                else:
                    name = f"{cell_prefix}{counter}"
                    counter += 1
                cname[x] = name
                cell_types[name] = (mname[H.dom(x)], mname[H.cod(x)])
    zero = {mname[f]: cname[H.zero(f)] for f in mname}
    vsum, lw, rw = {}, {}, {}
    for a in cat.objects:
        for b in cat.objects:
            xs = H.cells(a, b)
            for x in xs:
                for x2 in xs:
                    if H.dom(x) == H.cod(x2):
                        vsum[(cname[x], cname[x2])] = cname[H.vsum(x, x2)]
                for c in cat.objects:
                    for g in cat.hom(b, c):
                        lw[(mname[g], cname[x])] = cname[H.lwhisk(g, x)]
                    for f in cat.hom(c, a):
                        rw[(cname[x], mname[f])] = cname[H.rwhisk(x, f)]
    labels = {"cells": {v: k for k, v in cname.items()},
              "morphisms": {v: k for k, v in mname.items()},
              "objects": {v: k for k, v in oname.items()}}
    return TableStructure(table, cell_types, zero, vsum, lw, rw, labels=labels)
