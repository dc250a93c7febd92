"""Extensional backend: finite sets and finite groups with explicit maps.

Morphisms are function graphs, so equality of morphisms is graph equality.
Pullbacks are fibered products of carriers (subgroups of the product when
all three objects are groups).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Callable, Iterable

from ._hashing import cached_hash
from .errors import UnsupportedBackend
from .fincat import Category, PullbackSquare

HOM_ENUM_LIMIT = 200_000


@cached_hash
@dataclass(frozen=True)
class FinSet:
    name: str
    elements: tuple

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, |{len(self.elements)}|)"


@cached_hash
@dataclass(frozen=True, repr=False)
class Group(FinSet):
    """A finite group given by its multiplication table, written multiplicatively."""
    table: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_op(cls, name: str, elements: Iterable, op: Callable[[Any, Any], Any]) -> "Group":
        elements = tuple(elements)
        return cls(name, elements, {(a, b): op(a, b) for a in elements for b in elements})

    def mul(self, a, b):
        return self.table[(a, b)]

    @cached_property
    def unit(self):
        for e in self.elements:
            if all(self.table[(e, x)] == x == self.table[(x, e)] for x in self.elements):
                return e
        raise ValueError(f"{self.name}: no two-sided unit")

    @cached_property
    def _inverses(self) -> dict:
        e = self.unit
        return {a: next(b for b in self.elements if self.table[(a, b)] == e) for a in self.elements}

    def inv(self, a):
        return self._inverses[a]

    def power(self, a, k: int):
        out = self.unit
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def conj(self, t, a):
        """``t a t^-1``."""
        return self.mul(self.mul(t, a), self.inv(t))

    def is_group(self) -> list[str]:
        problems = []
        els = self.elements
        for a, b in product(els, repeat=2):
            if self.table.get((a, b)) not in self.index:
                problems.append(f"{a}*{b} undefined or outside carrier")
        if problems:
            return problems
        for a, b, c in product(els, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                problems.append(f"associativity fails at ({a},{b},{c})")
                break
        try:
            e = self.unit
        except ValueError as exc:
            return problems + [str(exc)]
        for a in els:
            if not any(self.mul(a, b) == e for b in els):
                problems.append(f"{a} has no inverse")
        return problems

    @cached_property
    def center(self) -> tuple:
        return tuple(z for z in self.elements
                     if all(self.mul(z, a) == self.mul(a, z) for a in self.elements))

    def generators(self) -> list:
        gens, span = [], {self.unit}
        for a in self.elements:
            if a in span:
                continue
            gens.append(a)
            span = self.closure(gens)
            if len(span) == len(self.elements):
                break
        return gens

    def closure(self, gens) -> set:
        span = {self.unit}
        frontier = [self.unit]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = self.mul(a, s)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        return span


@cached_hash
@dataclass(frozen=True)
class Fn:
    src: FinSet
    tgt: FinSet
    graph: tuple
    name: str | None = field(default=None, compare=False, hash=False)

    @classmethod
    def of(cls, src: FinSet, tgt: FinSet, fun: Callable | dict, name: str | None = None) -> "Fn":
        get = fun.__getitem__ if isinstance(fun, dict) else fun
        return cls(src, tgt, tuple(get(x) for x in src.elements), name)

    def __call__(self, x):
        return self.graph[self.src.index[x]]

    def __repr__(self) -> str:
        if self.name:
            return self.name
        return f"Fn({self.src.name}->{self.tgt.name}, {self.graph})"


def is_homomorphism(f: Fn) -> bool:
    a, b = f.src, f.tgt
    return all(f(a.mul(x, y)) == b.mul(f(x), f(y)) for x in a.elements for y in a.elements)


def group_homs(a: Group, b: Group) -> list[Fn]:
    """All homomorphisms a -> b, by extension from a generating set."""
    gens = a.generators()
    out = []
    for imgs in product(b.elements, repeat=len(gens)):
        phi = {a.unit: b.unit}
        frontier = [a.unit]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, t in zip(gens, imgs):
                    y, v = a.mul(x, s), b.mul(phi[x], t)
                    if y in phi:
                        if phi[y] != v:
                            ok = False
                            break
                    else:
                        phi[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(phi) == len(a.elements):
            out.append(Fn.of(a, b, phi))
    return out


def fibered_product(f: Fn, g: Fn, name: str | None = None) -> PullbackSquare:
    a, b, c = f.src, g.src, f.tgt
    pairs = tuple((x, y) for x in a.elements for y in b.elements if f(x) == g(y))
    name = name or f"({a.name}x[{c.name}]{b.name})"
    if all(isinstance(o, Group) for o in (a, b, c)):
        apex: FinSet = Group(name, pairs, {(p, q): (a.mul(p[0], q[0]), b.mul(p[1], q[1]))
                                           for p in pairs for q in pairs})
    else:
        apex = FinSet(name, pairs)
    p1 = Fn(apex, a, tuple(p[0] for p in pairs))
    p2 = Fn(apex, b, tuple(p[1] for p in pairs))
    return PullbackSquare(apex, p1, p2, f, g)


class SetCategory(Category):
    """FinSet or Grp, depending on the objects registered."""

    backend = "extensional"

    def __init__(self, objects: Iterable[FinSet] = ()):
        self._objects = tuple(objects)

    @property
    def objects(self) -> tuple:
        return self._objects

    def source(self, f: Fn):
        return f.src

    def target(self, f: Fn):
        return f.tgt

    def identity(self, obj: FinSet) -> Fn:
        return Fn(obj, obj, obj.elements)

    def _compose(self, g: Fn, f: Fn) -> Fn:
        return Fn(f.src, g.tgt, tuple(g(y) for y in f.graph))

    @property
    def enumerable(self) -> bool:
        return all(len(b) ** len(a) <= HOM_ENUM_LIMIT for a in self._objects for b in self._objects)

    def hom(self, a: FinSet, b: FinSet) -> tuple:
        if isinstance(a, Group) and isinstance(b, Group):
            return tuple(group_homs(a, b))
        if len(b) ** len(a) > HOM_ENUM_LIMIT:
            raise UnsupportedBackend(f"hom({a.name},{b.name}) too large to enumerate")
        return tuple(Fn(a, b, g) for g in product(b.elements, repeat=len(a)))

    def check_morphism(self, f: Fn) -> list[str]:
        msgs = []
        if len(f.graph) != len(f.src):
            msgs.append("graph length differs from source size")
        if any(y not in f.tgt.index for y in f.graph):
            msgs.append("graph leaves the target carrier")
        if not msgs and isinstance(f.src, Group) and isinstance(f.tgt, Group) and not is_homomorphism(f):
            msgs.append("not a group homomorphism")
        return msgs

    def pullback(self, f: Fn, g: Fn) -> PullbackSquare:
        return fibered_product(f, g)

    def induced(self, square: PullbackSquare, x: Fn, y: Fn) -> Fn:
        apex = square.apex
        lookup = {(square.p1(p), square.p2(p)): p for p in apex.elements}
        return Fn(x.src, apex, tuple(lookup[(x(d), y(d))] for d in x.src.elements))

    def first_difference(self, f: Fn, g: Fn):
        """An element where two parallel maps disagree, or None."""
        for x in f.src.elements:
            if f(x) != g(x):
                return x
        return None
