"""Naturalization: the universal quotient of a 2-cell structure that is natural.

Cells are identified by the smallest equivalence that relates the two
whiskered paths of every composable pair and is a congruence for vertical
sum and both whisker actions. Each class is represented by its first member
in enumeration order.
"""
from __future__ import annotations

from typing import Callable, Mapping

from .cellstruct import CellStructure, TableStructure, _require_enumerable, check_structure_morphism
from .errors import QuotientIllTyped, SesquiError, ShapeMismatch
from .naturality import _sides, composable_pairs, is_two_category


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.order = {x: i for i, x in enumerate(self.parent)}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # the earlier cell stays the root, so roots are class representatives
        if self.order[ry] < self.order[rx]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _close(H: CellStructure, cells: list) -> _UnionFind:
    uf = _UnionFind(cells)
    for x, z in composable_pairs(H):
        left, right = _sides(H, x, z)
        uf.union(left, right)
    cat = H.base
    objs = cat.objects
    by_pair = {(a, b): H.cells(a, b) for a in objs for b in objs}
    while True:
        changed = False
        seen: dict = {}
        for xs in by_pair.values():
            for v in xs:
                for u in xs:
                    if H.dom(v) != H.cod(u):
                        continue
                    key = ("+", uf.find(v), uf.find(u))
                    w = H.vsum(v, u)
                    if key in seen:
                        changed |= uf.union(seen[key], w)
                    else:
                        seen[key] = w
        for (a, b), xs in by_pair.items():
            for x in xs:
                rx = uf.find(x)
                for c in objs:
                    for g in cat.hom(b, c):
                        key = ("l", g, rx)
                        w = H.lwhisk(g, x)
                        if key in seen:
                            changed |= uf.union(seen[key], w)
                        else:
                            seen[key] = w
                    for f in cat.hom(c, a):
                        key = ("r", rx, f)
                        w = H.rwhisk(x, f)
                        if key in seen:
                            changed |= uf.union(seen[key], w)
                        else:
                            seen[key] = w
        if not changed:
            return uf


class QuotientStructure(CellStructure):
    """Quotient of an enumerable structure by a congruence, on representatives."""
    backend = "quotient"

    def __init__(self, H: CellStructure, rep: Mapping):
        self.parent = H
        self.base = H.base
        self.rep = dict(rep)
        self._cells = {}
        for x, r in self.rep.items():
            if x == r:
                self._cells.setdefault(H.pair(x), []).append(x)

    @property
    def enumerable(self) -> bool:
        return True

    def _check(self, x):
        if self.rep.get(x) != x:
            raise ShapeMismatch(f"{x!r} is not a class representative")
        return x

    def dom(self, x):
        return self.parent.dom(self._check(x))

    def cod(self, x):
        return self.parent.cod(self._check(x))

    def zero(self, f):
        return self.rep[self.parent.zero(f)]

    def _vsum(self, v, u):
        return self.rep[self.parent.vsum(self._check(v), self._check(u))]

    def _lwhisk(self, g, y):
        return self.rep[self.parent.lwhisk(g, self._check(y))]

    def _rwhisk(self, x, f):
        return self.rep[self.parent.rwhisk(self._check(x), f)]

    def cells(self, a, b) -> tuple:
        return tuple(self._cells.get((a, b), ()))


def _as_table(H: TableStructure, rep: Mapping) -> TableStructure:
    keep = {x for x, r in rep.items() if x == r}
    return TableStructure(
        H.base,
        {x: t for x, t in H.cell_types.items() if x in keep},
        {f: rep[z] for f, z in H.zeros.items()},
        {k: rep[w] for k, w in H.vsums.items() if k[0] in keep and k[1] in keep},
        {k: rep[w] for k, w in H.lwhisks.items() if k[1] in keep},
        {k: rep[w] for k, w in H.rwhisks.items() if k[0] in keep},
        labels=H.labels,
    )


def naturalize(H: CellStructure):
    """Return ``(H_nat, phi)`` with phi the quotient map as a dict.

    Table structures give a table quotient that keeps the representative
    ids; other structures give a :class:`QuotientStructure`.
    """
    _require_enumerable(H)
    cells = list(H.all_cells())
    uf = _close(H, cells)
    rep = {x: uf.find(x) for x in cells}
    for x, r in rep.items():
        if H.dom(x) != H.dom(r) or H.cod(x) != H.cod(r):
            raise QuotientIllTyped(f"{x!r} and {r!r} are identified but have different boundaries")
    quotient = _as_table(H, rep) if isinstance(H, TableStructure) else QuotientStructure(H, rep)
    return quotient, rep


def check_reflection_property(H: CellStructure, N: CellStructure, psi: Mapping | Callable) -> bool:
    """Whether psi factors uniquely through the naturalization of H."""
    if not is_two_category(N):
        return False
    get = psi.get if isinstance(psi, Mapping) else psi
    Hn, phi = naturalize(H)
    bar: dict = {}
    for x, r in phi.items():
        y = get(x)
        if bar.setdefault(r, y) != y:
            return False
    # phi is onto, so bar is the only candidate
    try:
        return not check_structure_morphism(bar, Hn, N)
    except (ShapeMismatch, SesquiError):
        return False
