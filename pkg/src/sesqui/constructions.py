"""Concrete 2-cell structures.

Every builder here returns a lazy structure: cells are plain hashable values
and the operations are computed from the underlying data. Use
:func:`sesqui.cellstruct.materialize` to turn one into explicit tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from ._hashing import cached_hash
from .cellstruct import CellStructure
from .chains import (ChainCategory, ChainComplex, Htpy, all_htpys, boundary, lwhisk_htpy,
                     rwhisk_htpy)
from .errors import (ActionAxiomViolation, NotCartesianHere, NotInvertible, UnknownObject,
                     UnsupportedBackend)
from .extensional import Fn, Group, SetCategory, group_homs
from .fincat import Category, PullbackSquare, TableCategory
from .groups import CrossedModulePresentation
from .internal import InternalCatCategory, InternalCategory, InternalFunctor, arrow_object
from .modmat import solve, vstack

GROUP_ORDER_CAP = 8


class LazyStructure(CellStructure):
    backend = "lazy"

    def __init__(self, base: Category):
        self.base = base
        self._homs: dict = {}

    def hom(self, a, b) -> tuple:
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = tuple(self.base.hom(a, b))
        return self._homs[key]

    def cells(self, a, b) -> tuple:
        if not self.enumerable:
            raise UnsupportedBackend(f"{type(self).__name__} over this base is not enumerable")
        return tuple(self._cells(a, b))

    def _cells(self, a, b):
        raise UnsupportedBackend(f"{type(self).__name__} does not enumerate cells")


# -- discrete and codiscrete ------------------------------------------------------

class DiscreteStructure(LazyStructure):
    """H = hom; every cell is the zero cell of its morphism."""

    def dom(self, x):
        return x

    def cod(self, x):
        return x

    def zero(self, f):
        return f

    def _vsum(self, v, u):
        return u

    def _lwhisk(self, g, y):
        return self.base.compose(g, y)

    def _rwhisk(self, x, f):
        return self.base.compose(x, f)

    def neg(self, x):
        return x

    def _cells(self, a, b):
        return self.hom(a, b)

    def mediate(self, square: PullbackSquare, x, y):
        return self.base.induced(square, x, y)


class CodiscreteStructure(LazyStructure):
    """H = hom x hom; the cell ``(g, f)`` goes from f to g."""

    def dom(self, x):
        return x[1]

    def cod(self, x):
        return x[0]

    def zero(self, f):
        return (f, f)

    def _vsum(self, v, u):
        return (v[0], u[1])

    def _lwhisk(self, g, y):
        return (self.base.compose(g, y[0]), self.base.compose(g, y[1]))

    def _rwhisk(self, x, f):
        return (self.base.compose(x[0], f), self.base.compose(x[1], f))

    def neg(self, x):
        return (x[1], x[0])

    def _cells(self, a, b):
        hs = self.hom(a, b)
        return [(g, f) for f in hs for g in hs]

    def mediate(self, square: PullbackSquare, x, y):
        ind = self.base.induced
        return (ind(square, x[0], y[0]), ind(square, x[1], y[1]))


def discrete(cat: Category) -> DiscreteStructure:
    return DiscreteStructure(cat)


def codiscrete(cat: Category) -> CodiscreteStructure:
    return CodiscreteStructure(cat)


# -- cells acting on morphisms -----------------------------------------------------

class ActionStructure(LazyStructure):
    """Cells ``(x, f): f => D(x, f)`` with x drawn from a monoid per hom pair.

    ``monoid(A, B)`` returns an object with ``elements``, ``mul`` and ``unit``;
    ``lact(g, x)`` and ``ract(x, f)`` are the actions of morphisms on monoid
    elements, and ``(x', D(x, f)) + (x, f) = (x' x, f)``.
    """

    def __init__(self, base: Category, monoid: Callable, D: Callable,
                 lact: Callable | None = None, ract: Callable | None = None):
        super().__init__(base)
        self.monoid = monoid
        self.D = D
        self.lact = lact or (lambda g, x: x)
        self.ract = ract or (lambda x, f: x)

    def _monoid_of(self, f):
        return self.monoid(self.base.source(f), self.base.target(f))

    def dom(self, x):
        return x[1]

    def cod(self, x):
        return self.D(x[0], x[1])

    def zero(self, f):
        return (self._monoid_of(f).unit, f)

    def _vsum(self, v, u):
        return (self._monoid_of(u[1]).mul(v[0], u[0]), u[1])

    def _lwhisk(self, g, y):
        return (self.lact(g, y[0]), self.base.compose(g, y[1]))

    def _rwhisk(self, x, f):
        return (self.ract(x[0], f), self.base.compose(x[1], f))

    def neg(self, x):
        mon = self._monoid_of(x[1])
        inv = getattr(mon, "inv", None)
        try:
            t = inv(x[0]) if inv else None
        except StopIteration:
            t = None
        if t is None or mon.mul(t, x[0]) != mon.unit:
            raise NotInvertible(f"{x[0]!r} has no inverse")
        return (t, self.cod(x))

    def _cells(self, a, b):
        mon = self.monoid(a, b)
        return [(x, f) for f in self.hom(a, b) for x in mon.elements]


def check_action(H: ActionStructure) -> list[tuple]:
    """Witnesses ``(axiom, x', x, f)`` where D fails ``D(0, f) = f`` or ``D(x'x, f) = D(x', D(x, f))``."""
    bad = []
    cat = H.base
    for a in cat.objects:
        for b in cat.objects:
            mon = H.monoid(a, b)
            for f in H.hom(a, b):
                if H.D(mon.unit, f) != f:
                    bad.append(("D(0,f) = f", mon.unit, f))
                for x in mon.elements:
                    g = H.D(x, f)
                    for x2 in mon.elements:
                        if H.D(mon.mul(x2, x), f) != H.D(x2, g):
                            bad.append(("D(x'+x,f) = D(x',D(x,f))", x2, x, f))
    return bad


def from_action(cat: Category, monoid: Callable, D: Callable, lact: Callable | None = None,
                ract: Callable | None = None) -> ActionStructure:
    H = ActionStructure(cat, monoid, D, lact, ract)
    bad = check_action(H)
    if bad:
        raise ActionAxiomViolation(f"{bad[0][0]} fails at {bad[0][1:]}")
    return H


def one_object_category(M, name: str = "pt") -> TableCategory:
    """The one-object category whose morphisms are the elements of the monoid M."""
    els = [str(x) for x in M.elements]
    comp = {(str(g), str(f)): str(M.mul(g, f)) for g in M.elements for f in M.elements}
    return TableCategory([name], {x: (name, name) for x in els}, {name: str(M.unit)}, comp)


def _as_fn(table):
    if table is None or callable(table):
        return table
    return lambda p, q: table[(p, q)]


def one_object(M, Hgrp, D=None, lact=None, ract=None) -> ActionStructure:
    """One object, morphisms M, cells ``(x, f)`` with x in the group Hgrp.

    ``D``, ``lact`` and ``ract`` (callables or dicts keyed by pairs) default to
    trivial actions, giving the structure whose cells are endo-cells ``f => f``.
    """
    cat = one_object_category(M)
    el = {str(x): x for x in M.elements}
    dfn, lfn, rfn = _as_fn(D), _as_fn(lact), _as_fn(ract)
    return from_action(cat, lambda a, b: Hgrp,
                       (lambda x, f: str(dfn(x, el[f]))) if dfn else (lambda x, f: f),
                       (lambda g, x: lfn(el[g], x)) if lfn else None,
                       (lambda x, f: rfn(x, el[f])) if rfn else None)


# -- groups and conjugation -----------------------------------------------------------

class ConjugationStructure(ActionStructure):
    """Over Grp: cells ``(t, f)`` with t in the target group and cod ``t f(-) t^-1``."""

    def __init__(self, base: SetCategory):
        super().__init__(base, lambda a, b: b, self._conj, lambda g, t: g(t), None)

    @staticmethod
    def _conj(t, f: Fn) -> Fn:
        b = f.tgt
        return Fn(f.src, b, tuple(b.conj(t, y) for y in f.graph))

    def _monoid_of(self, f):
        return f.tgt

    def zero(self, f):
        return (f.tgt.unit, f)

    def _vsum(self, v, u):
        return (u[1].tgt.mul(v[0], u[0]), u[1])

    def neg(self, x):
        t, f = x
        return (f.tgt.inv(t), self._conj(t, f))

    def mediate(self, square: PullbackSquare, x, y):
        (tx, fx), (ty, fy) = x, y
        apex = square.apex
        if (tx, ty) not in apex.index:
            raise NotCartesianHere(f"({tx!r}, {ty!r}) is not in the pullback group")
        return ((tx, ty), self.base.induced(square, fx, fy))


def _cap(groups, what: str) -> None:
    for g in groups:
        if len(g) > GROUP_ORDER_CAP:
            raise UnsupportedBackend(f"{what}: {g.name} has order {len(g)} > {GROUP_ORDER_CAP}")


def grp_conjugation(groups: list[Group]) -> tuple[SetCategory, ConjugationStructure]:
    _cap(groups, "grp_conjugation")
    cat = SetCategory(groups)
    return cat, ConjugationStructure(cat)


# -- crossed modules and derivations ------------------------------------------------

@cached_hash
@dataclass(frozen=True)
class XModMap:
    src: CrossedModulePresentation
    tgt: CrossedModulePresentation
    f1: Fn
    f0: Fn

    def __repr__(self) -> str:
        return f"XModMap({self.src.name}->{self.tgt.name}, {self.f1.graph}, {self.f0.graph})"


def is_xmod_map(f: XModMap) -> bool:
    a, b = f.src, f.tgt
    for x in a.X.elements:
        if b.d(f.f1(x)) != f.f0(a.d(x)):
            return False
        for s in a.B.elements:
            if f.f1(a.act(s, x)) != b.act(f.f0(s), f.f1(x)):
                return False
    return True


class XModCategory(Category):
    backend = "extensional"

    def __init__(self, objects=()):
        self._objects = tuple(objects)

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def enumerable(self) -> bool:
        return True

    def source(self, f):
        return f.src

    def target(self, f):
        return f.tgt

    def identity(self, obj):
        return XModMap(obj, obj, Fn(obj.X, obj.X, obj.X.elements), Fn(obj.B, obj.B, obj.B.elements))

    def _compose(self, g, f):
        return XModMap(f.src, g.tgt, Fn(f.src.X, g.tgt.X, tuple(g.f1(y) for y in f.f1.graph)),
                       Fn(f.src.B, g.tgt.B, tuple(g.f0(y) for y in f.f0.graph)))

    def hom(self, a, b) -> tuple:
        out = []
        for f0 in group_homs(a.B, b.B):
            for f1 in group_homs(a.X, b.X):
                f = XModMap(a, b, f1, f0)
                if is_xmod_map(f):
                    out.append(f)
        return tuple(out)

    def check_morphism(self, f) -> list[str]:
        return [] if is_xmod_map(f) else ["not a crossed module morphism"]


def derivations(f0: Fn, tgt: CrossedModulePresentation) -> list[Fn]:
    """Maps ``t: B -> X'`` with ``t(bb') = t(b) (f0(b) . t(b'))``."""
    B, X = f0.src, tgt.X
    gens = B.generators()
    out = []
    for imgs in product(X.elements, repeat=len(gens)):
        t = {B.unit: X.unit}
        frontier = [B.unit]
        ok = True
        while frontier and ok:
            nxt = []
            for b in frontier:
                for s, ts in zip(gens, imgs):
                    bs = B.mul(b, s)
                    v = X.mul(t[b], tgt.act(f0(b), ts))
                    if bs in t:
                        if t[bs] != v:
                            ok = False
                            break
                    else:
                        t[bs] = v
                        nxt.append(bs)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(t) != len(B):
            continue
        if all(t[B.mul(b, b2)] == X.mul(t[b], tgt.act(f0(b), t[b2])) for b in B.elements for b2 in B.elements):
            out.append(Fn.of(B, X, t))
    return out


class DerivationStructure(LazyStructure):
    """Cells ``(t, f)`` with t a derivation along f0; cod ``(t d + f1, d t + f0)``."""

    def dom(self, x):
        return x[1]

    def cod(self, x):
        t, f = x
        a, b = f.src, f.tgt
        g1 = Fn(a.X, b.X, tuple(b.X.mul(t(a.d(y)), f.f1(y)) for y in a.X.elements))
        g0 = Fn(a.B, b.B, tuple(b.B.mul(b.d(t(s)), f.f0(s)) for s in a.B.elements))
        return XModMap(a, b, g1, g0)

    def zero(self, f):
        X = f.tgt.X
        return (Fn(f.src.B, X, tuple(X.unit for _ in f.src.B.elements)), f)

    def _vsum(self, v, u):
        X = u[1].tgt.X
        return (Fn(u[0].src, X, tuple(X.mul(p, q) for p, q in zip(v[0].graph, u[0].graph))), u[1])

    def _lwhisk(self, g, y):
        t, f = y
        return (Fn(t.src, g.tgt.X, tuple(g.f1(z) for z in t.graph)), self.base.compose(g, f))

    def _rwhisk(self, x, f):
        t, h = x
        return (Fn(f.src.B, t.tgt, tuple(t(f.f0(s)) for s in f.src.B.elements)), self.base.compose(h, f))

    def neg(self, x):
        t, f = x
        X = f.tgt.X
        cand = (Fn(t.src, X, tuple(X.inv(y) for y in t.graph)), self.cod(x))
        if self.cod(cand) == f and self._vsum(cand, x) == self.zero(f):
            return cand
        return super().neg(x)

    def _cells(self, a, b):
        return [(t, f) for f in self.hom(a, b) for t in derivations(f.f0, b)]


def xmod_derivations(xmods: list[CrossedModulePresentation]) -> tuple[XModCategory, DerivationStructure]:
    for xm in xmods:
        _cap((xm.X, xm.B), "xmod_derivations")
        msgs = xm.check()
        if msgs:
            raise ValueError(f"{xm.name}: {msgs[0]}")
    cat = XModCategory(xmods)
    return cat, DerivationStructure(cat)


# -- chain complexes and homotopies ---------------------------------------------------

class HomotopyStructure(LazyStructure):
    """Cells ``(f, t)`` for a chain map f and homotopy t; cod ``f + D(t)``."""

    def dom(self, x):
        return x[0]

    def cod(self, x):
        f, t = x
        return f + boundary(t, f.src, f.tgt)

    def zero(self, f):
        from .chains import zero_htpy
        return (f, zero_htpy(f.src, f.tgt))

    def _vsum(self, v, u):
        return (u[0], v[1] + u[1])

    def _lwhisk(self, g, y):
        return (self.base.compose(g, y[0]), lwhisk_htpy(g, y[1]))

    def _rwhisk(self, x, f):
        return (self.base.compose(x[0], f), rwhisk_htpy(x[1], f))

    def neg(self, x):
        return (self.cod(x), -x[1])

    def _cells(self, a, b):
        ts = list(all_htpys(a, b))
        return [(f, t) for f in self.hom(a, b) for t in ts]

    def mediate(self, square: PullbackSquare, x, y):
        u = self.base.induced(square, x[0], y[0])
        p1, p2 = square.p1.comps, square.p2.comps
        # t2 lives in degree 2 of the apex, t1 in degree 1
        t2 = solve(vstack(p1[0], p2[0]), vstack(x[1].t2, y[1].t2))
        t1 = solve(vstack(p1[1], p2[1]), vstack(x[1].t1, y[1].t1))
        if t2 is None or t1 is None:
            raise NotCartesianHere("homotopies do not lift to the pullback")
        return (u, Htpy(t2, t1))


def chain_homotopies(complexes: list[ChainComplex]) -> tuple[ChainCategory, HomotopyStructure]:
    if len({c.mod for c in complexes}) > 1:
        raise ValueError("complexes over different moduli cannot share a category")
    for c in complexes:
        msgs = c.check()
        if msgs:
            raise ValueError(f"{c.name}: {msgs[0]}")
    cat = ChainCategory(complexes)
    return cat, HomotopyStructure(cat)


# -- internal categories and transformations ----------------------------------------

@cached_hash
@dataclass(frozen=True)
class InternalCell:
    """``(k, t, h)``: t sends each object a to an arrow h0(a) -> k0(a)."""
    k: InternalFunctor
    t: tuple
    h: InternalFunctor

    def component(self, a):
        return self.t[self.h.src.C0.index[a]]

    def __repr__(self) -> str:
        return f"Cell({self.k!r}, {self.t}, {self.h!r})"


class InternalTransformationStructure(LazyStructure):

    def dom(self, x):
        return x.h

    def cod(self, x):
        return x.k

    def zero(self, f):
        b = f.tgt
        return InternalCell(f, tuple(b.e(f.on_object(a)) for a in f.src.C0.elements), f)

    def _vsum(self, v, u):
        b = u.h.tgt
        return InternalCell(v.k, tuple(b.m[(p, q)] for p, q in zip(v.t, u.t)), u.h)

    def _lwhisk(self, g, y):
        comp = self.base.compose
        return InternalCell(comp(g, y.k), tuple(g.on_arrow(p) for p in y.t), comp(g, y.h))

    def _rwhisk(self, x, f):
        comp = self.base.compose
        return InternalCell(comp(x.k, f), tuple(x.component(f.on_object(a)) for a in f.src.C0.elements),
                            comp(x.h, f))

    def neg(self, x):
        b = x.h.tgt
        inv = []
        for a, p in zip(x.h.src.C0.elements, x.t):
            q = next((q for q in b.C1.elements if b.d(q) == b.c(p) and b.c(q) == b.d(p)
                      and b.m.get((q, p)) == b.e(b.d(p)) and b.m.get((p, q)) == b.e(b.c(p))), None)
            if q is None:
                raise NotInvertible(f"component {p!r} of {x!r} is not invertible")
            inv.append(q)
        return InternalCell(x.h, tuple(inv), x.k)

    def _cells(self, a, b):
        out = []
        hs = self.hom(a, b)
        for h in hs:
            for k in hs:
                choices = [[p for p in b.C1.elements if b.d(p) == h.on_object(o) and b.c(p) == k.on_object(o)]
                           for o in a.C0.elements]
                out.extend(InternalCell(k, t, h) for t in product(*choices))
        return out


def internal_transformations(cats: list[InternalCategory], arrows: bool = True
                             ) -> tuple[InternalCatCategory, InternalTransformationStructure]:
    """The structure of internal transformations on the given internal categories.

    With ``arrows`` the arrow object of every category is registered as well,
    so :func:`arrow_cell` can be used as a probe.
    """
    objs = list(cats)
    for a in cats:
        msgs = a.check()
        if msgs:
            raise ValueError(f"{a.name}: {msgs[0]}")
        if arrows:
            objs.append(arrow_object(a))
    cat = InternalCatCategory(objs)
    return cat, InternalTransformationStructure(cat)


def arrow_functors(a: InternalCategory, arr: InternalCategory) -> tuple[InternalFunctor, InternalFunctor]:
    """``d-> = (e d, d)`` and ``c-> = (e c, c)`` from the arrow object to ``a``."""
    arrows = a.C1.elements
    dom = InternalFunctor(arr, a, tuple(a.e(a.d(p)) for p in arrows), tuple(a.d(p) for p in arrows))
    cod = InternalFunctor(arr, a, tuple(a.e(a.c(p)) for p in arrows), tuple(a.c(p) for p in arrows))
    return dom, cod


def arrow_cell(H: InternalTransformationStructure, a: InternalCategory) -> InternalCell:
    """The tautological cell ``(c->, 1, d->)`` in H(A->, A)."""
    objs = H.base.objects
    if a not in objs:
        raise UnknownObject(f"{a.name} is not an object of the structure")
    arr = arrow_object(a)
    if arr not in objs:
        raise UnknownObject(f"arrow object of {a.name} is not registered")
    dom, cod = arrow_functors(a, arr)
    return InternalCell(cod, a.C1.elements, dom)


def is_internal_natural(x: InternalCell) -> bool:
    """``m(k1(p), t(d p)) == m(t(c p), h1(p))`` for every arrow p of the source."""
    a, b = x.h.src, x.h.tgt
    for p in a.C1.elements:
        left = b.m.get((x.k.on_arrow(p), x.component(a.d(p))))
        right = b.m.get((x.component(a.c(p)), x.h.on_arrow(p)))
        if left is None or left != right:
            return False
    return True
