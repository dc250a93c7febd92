"""Internal categories in FinSet and the category Cat(FinSet) they form.

Composition is stored as ``m(a, b) = a . b`` on composable pairs
``d(a) == c(b)`` (``b`` first), matching the pullback ``C2`` whose first
projection is the arrow applied last.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ._hashing import cached_hash
from .extensional import FinSet, Fn
from .fincat import Category


@cached_hash
@dataclass(frozen=True)
class InternalCategory:
    name: str
    C0: FinSet
    C1: FinSet
    d: Fn
    c: Fn
    e: Fn
    m: dict = field(compare=False, hash=False)

    @classmethod
    def build(cls, name: str, objs, arrows, dom: dict, cod: dict, unit: dict, comp: dict) -> "InternalCategory":
        C0 = FinSet(f"{name}_0", tuple(objs))
        C1 = FinSet(f"{name}_1", tuple(arrows))
        return cls(name, C0, C1, Fn.of(C1, C0, dom), Fn.of(C1, C0, cod), Fn.of(C0, C1, unit), dict(comp))

    @classmethod
    def from_group(cls, name: str, group) -> "InternalCategory":
        star = "pt"
        comp = {(a, b): group.mul(a, b) for a in group.elements for b in group.elements}
        return cls.build(name, [star], group.elements, {a: star for a in group.elements},
                         {a: star for a in group.elements}, {star: group.unit}, comp)

    def composable(self):
        return [(a, b) for a in self.C1.elements for b in self.C1.elements if self.d(a) == self.c(b)]

    def check(self) -> list[str]:
        msgs = []
        d, c, e, m = self.d, self.c, self.e, self.m
        for x in self.C0.elements:
            if d(e(x)) != x or c(e(x)) != x:
                msgs.append(f"de = 1 = ce fails at {x}")
        for a, b in self.composable():
            ab = m.get((a, b))
            if ab is None:
                msgs.append(f"m({a},{b}) undefined")
                continue
            if d(ab) != d(b) or c(ab) != c(a):
                msgs.append(f"m({a},{b}) has wrong domain/codomain")
        for a in self.C1.elements:
            if m.get((e(c(a)), a)) != a or m.get((a, e(d(a)))) != a:
                msgs.append(f"unit law fails at {a}")
        for a, b in self.composable():
            for z in self.C1.elements:
                if d(b) == c(z) and (a, b) in m and (b, z) in m:
                    if m.get((m[(a, b)], z)) != m.get((a, m[(b, z)])):
                        msgs.append(f"associativity fails at ({a},{b},{z})")
        return msgs

    def __repr__(self) -> str:
        return f"InternalCategory({self.name!r})"


def arrow_object(a: InternalCategory) -> InternalCategory:
    """``A-> = (A1, A1, 1, 1, 1, 1)``: the discrete internal category on arrows."""
    arrows = a.C1.elements
    name = f"{a.name}_arr"
    return InternalCategory.build(name, arrows, arrows, {x: x for x in arrows}, {x: x for x in arrows},
                                  {x: x for x in arrows}, {(x, x): x for x in arrows})


@cached_hash
@dataclass(frozen=True)
class InternalFunctor:
    src: InternalCategory
    tgt: InternalCategory
    f1: tuple
    f0: tuple
    name: str | None = field(default=None, compare=False, hash=False)

    def on_arrow(self, a):
        return self.f1[self.src.C1.index[a]]

    def on_object(self, x):
        return self.f0[self.src.C0.index[x]]

    def __repr__(self) -> str:
        return self.name or f"F({self.src.name}->{self.tgt.name}, {self.f1}, {self.f0})"


def is_internal_functor(f: InternalFunctor) -> bool:
    a, b = f.src, f.tgt
    for x in a.C1.elements:
        fx = f.on_arrow(x)
        if b.d(fx) != f.on_object(a.d(x)) or b.c(fx) != f.on_object(a.c(x)):
            return False
    for x in a.C0.elements:
        if f.on_arrow(a.e(x)) != b.e(f.on_object(x)):
            return False
    for p, q in a.composable():
        if f.on_arrow(a.m[(p, q)]) != b.m[(f.on_arrow(p), f.on_arrow(q))]:
            return False
    return True


class InternalCatCategory(Category):
    backend = "extensional"

    def __init__(self, objects=()):
        self._objects = tuple(objects)

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def enumerable(self) -> bool:
        return True

    def source(self, f: InternalFunctor):
        return f.src

    def target(self, f: InternalFunctor):
        return f.tgt

    def identity(self, obj: InternalCategory) -> InternalFunctor:
        return InternalFunctor(obj, obj, obj.C1.elements, obj.C0.elements)

    def _compose(self, g: InternalFunctor, f: InternalFunctor) -> InternalFunctor:
        return InternalFunctor(f.src, g.tgt, tuple(g.on_arrow(x) for x in f.f1),
                               tuple(g.on_object(x) for x in f.f0))

    def hom(self, a: InternalCategory, b: InternalCategory) -> tuple:
        out = []
        for f0 in product(b.C0.elements, repeat=len(a.C0)):
            obj = dict(zip(a.C0.elements, f0))
            choices = []
            for x in a.C1.elements:
                s, t = obj[a.d(x)], obj[a.c(x)]
                choices.append([y for y in b.C1.elements if b.d(y) == s and b.c(y) == t])
            for f1 in product(*choices):
                f = InternalFunctor(a, b, tuple(f1), tuple(f0))
                if is_internal_functor(f):
                    out.append(f)
        return tuple(out)

    def check_morphism(self, f: InternalFunctor) -> list[str]:
        return [] if is_internal_functor(f) else ["not an internal functor"]
