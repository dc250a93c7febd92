"""Finite categories, their axioms, and pullbacks.

Two backends share the :class:`Category` interface. ``TableCategory`` stores
every hom-set and the full composition table; extensional categories (see
:mod:`sesqui.extensional`, :mod:`sesqui.chains`, :mod:`sesqui.internal`)
compute composites from concrete maps and only enumerate hom-sets on demand.
"""
from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from typing import Any, Hashable, Iterable

from .errors import ConeMismatch, MissingEntry, NoPullback, NotComposable, UnsupportedBackend
from .report import ValidationReport


class Category(ABC):
    backend: str = "abstract"

    @property
    @abstractmethod
    def objects(self) -> tuple: ...

    @abstractmethod
    def source(self, f) -> Hashable: ...

    @abstractmethod
    def target(self, f) -> Hashable: ...

    @abstractmethod
    def identity(self, obj): ...

    @abstractmethod
    def _compose(self, g, f): ...

    def compose(self, g, f):
        """``g . f``: apply ``f`` first."""
        if self.target(f) != self.source(g):
            raise NotComposable(f"{g!r} . {f!r}: target {self.target(f)!r} != source {self.source(g)!r}")
        return self._compose(g, f)

    def hom(self, a, b) -> tuple:
        raise UnsupportedBackend(f"{self.backend} backend does not enumerate hom-sets")

    @property
    def enumerable(self) -> bool:
        return False

    def morphisms(self):
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def pullback(self, f, g) -> "PullbackSquare":
        raise UnsupportedBackend(f"no pullback construction on {self.backend} backend")

    def induced(self, square: "PullbackSquare", x, y):
        raise UnsupportedBackend(f"no induced maps on {self.backend} backend")

    def chain(self, *fs):
        """Compose left to right as written: ``chain(g, f) == g . f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out


@dataclass(frozen=True)
class PullbackSquare:
    """``apex --p1--> A --f--> C <--g-- B <--p2-- apex`` with f.p1 == g.p2."""
    apex: Any
    p1: Any
    p2: Any
    f: Any
    g: Any


class TableCategory(Category):
    backend = "table"

    def __init__(self, objects: Iterable[str], morphisms: dict[str, tuple[str, str]],
                 identities: dict[str, str], composition: dict[tuple[str, str], str]):
        self._objects = tuple(objects)
        self.morphism_types = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self._homs: dict[tuple[str, str], list[str]] = {(a, b): [] for a in self._objects for b in self._objects}
        for m, (s, t) in self.morphism_types.items():
            self._homs.setdefault((s, t), []).append(m)

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def enumerable(self) -> bool:
        return True

    def source(self, f):
        try:
            return self.morphism_types[f][0]
        except KeyError:
            raise NotComposable(f"unknown morphism {f!r}") from None

    def target(self, f):
        try:
            return self.morphism_types[f][1]
        except KeyError:
            raise NotComposable(f"unknown morphism {f!r}") from None

    def identity(self, obj):
        return self.identities[obj]

    def _compose(self, g, f):
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise MissingEntry(f"no composition entry for {g} . {f}") from None

    def hom(self, a, b) -> tuple:
        return tuple(self._homs.get((a, b), ()))

    def morphisms(self):
        return iter(self.morphism_types)

    def replace(self, **changes) -> "TableCategory":
        kw = dict(objects=self._objects, morphisms=self.morphism_types,
                  identities=self.identities, composition=self.composition)
        kw.update(changes)
        return TableCategory(**kw)

    # pullbacks by exhaustive search

    def cones(self, d, f, g):
        a, b = self.source(f), self.source(g)
        for x in self.hom(d, a):
            for y in self.hom(d, b):
                if self.compose(f, x) == self.compose(g, y):
                    yield x, y

    def _is_pullback(self, sq: PullbackSquare) -> bool:
        for d in self.objects:
            for x, y in self.cones(d, sq.f, sq.g):
                hits = [u for u in self.hom(d, sq.apex)
                        if self.compose(sq.p1, u) == x and self.compose(sq.p2, u) == y]
                if len(hits) != 1:
                    return False
        return True

    def pullback(self, f, g) -> PullbackSquare:
        if self.target(f) != self.target(g):
            raise NotComposable(f"{f} and {g} do not form a cospan")
        a, b = self.source(f), self.source(g)
        for p in sorted(self.objects):
            for p1 in sorted(self.hom(p, a)):
                for p2 in sorted(self.hom(p, b)):
                    if self.compose(f, p1) != self.compose(g, p2):
                        continue
                    sq = PullbackSquare(p, p1, p2, f, g)
                    if self._is_pullback(sq):
                        return sq
        raise NoPullback(f"no pullback of cospan ({f}, {g})")

    def induced(self, square: PullbackSquare, x, y):
        d = self.source(x)
        hits = [u for u in self.hom(d, square.apex)
                if self.compose(square.p1, u) == x and self.compose(square.p2, u) == y]
        if len(hits) != 1:
            raise NoPullback(f"{len(hits)} mediators for ({x}, {y}); square is not a pullback")
        return hits[0]


def compose(cat: Category, g, f):
    return cat.compose(g, f)


def find_pullback(cat: Category, f, g) -> PullbackSquare:
    """Deterministic chosen pullback of the cospan ``f: A -> C <- B :g``."""
    return cat.pullback(f, g)


def induced_into_pullback(cat: Category, square: PullbackSquare, x, y):
    """The unique ``u`` with ``p1 u = x`` and ``p2 u = y``."""
    if cat.source(x) != cat.source(y):
        raise ConeMismatch(f"cone legs have different sources: {x!r}, {y!r}")
    if cat.compose(square.f, x) != cat.compose(square.g, y):
        raise ConeMismatch(f"f.x != g.y for x={x!r}, y={y!r}")
    return cat.induced(square, x, y)


def validate_category(cat: Category, sample: int = 200, seed: int = 0,
                      morphisms: Iterable | None = None) -> ValidationReport:
    """Every violated typing, identity, or associativity instance.

    Table categories are checked exhaustively. Extensional ones are checked on
    the given ``morphisms`` (defaults to identities), spot-checking at most
    ``sample`` composable triples.
    """
    if isinstance(cat, TableCategory):
        return _validate_table(cat)
    rep = ValidationReport()
    mors = list(morphisms) if morphisms is not None else []
    mors += [cat.identity(o) for o in cat.objects]
    check = getattr(cat, "check_morphism", None)
    if check is not None:
        for f in mors:
            for msg in check(f):
                rep.add("category", "typing", f, message=msg)
    for f in mors:
        if cat.compose(cat.identity(cat.target(f)), f) != f:
            rep.add("category", "identity.left", f)
        if cat.compose(f, cat.identity(cat.source(f))) != f:
            rep.add("category", "identity.right", f)
    triples = [(h, g, f) for h, g, f in product(mors, repeat=3)
               if cat.target(f) == cat.source(g) and cat.target(g) == cat.source(h)]
    rng = random.Random(seed)
    if len(triples) > sample:
        triples = rng.sample(triples, sample)
    for h, g, f in triples:
        if cat.compose(h, cat.compose(g, f)) != cat.compose(cat.compose(h, g), f):
            rep.add("category", "associativity", h, g, f)
    return rep


def _validate_table(cat: TableCategory) -> ValidationReport:
    rep = ValidationReport()
    types = cat.morphism_types
    objs = set(cat.objects)
    for m, (s, t) in types.items():
        if s not in objs or t not in objs:
            rep.add("category", "typing.object", m, message=f"{s}->{t}")
    for o in cat.objects:
        i = cat.identities.get(o)
        if i is None or i not in types or types[i] != (o, o):
            rep.add("category", "typing.identity", o, i)
    for (g, f), h in cat.composition.items():
        if g not in types or f not in types:
            rep.add("category", "typing.reference", g, f)
            continue
        if h not in types:
            rep.add("category", "typing.reference", g, f, h, message="result is not a declared morphism")
            continue
        if types[f][1] != types[g][0]:
            rep.add("category", "typing.composable", g, f)
        elif types[h] != (types[f][0], types[g][1]):
            rep.add("category", "typing.composite", g, f, h)
    for f, (_, ft) in types.items():
        for b in cat.objects:
            for g in cat.hom(ft, b):
                if (g, f) not in cat.composition:
                    rep.add("category", "composition.total", g, f)

    def comp(g, f):
        h = cat.composition.get((g, f))
        return h if h in types else None

    for o in cat.objects:
        i = cat.identities.get(o)
        if i not in types:
            continue
        for b in cat.objects:
            for f in cat.hom(o, b):
                if comp(f, i) != f:
                    rep.add("category", "identity.right", f, i)
            for f in cat.hom(b, o):
                if comp(i, f) != f:
                    rep.add("category", "identity.left", i, f)
    for f, (a, b) in types.items():
        for c in cat.objects:
            for g in cat.hom(b, c):
                gf = comp(g, f)
                if gf is None:
                    continue
                for d in cat.objects:
                    for h in cat.hom(c, d):
                        hg = comp(h, g)
                        if hg is None:
                            continue
                        left, right = comp(h, gf), comp(hg, f)
                        if left is None or left != right:
                            rep.add("category", "associativity", h, g, f)
    return rep
