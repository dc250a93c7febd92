"""Naturality of cells, horizontal composition, and commutators.

Throughout, ``x`` is the outer cell in H(A, B) and ``z`` (or ``y``) the inner
cell in H(X, A). The two whiskered paths around the square are

    cod(x) z + x dom(z)    and    x cod(z) + dom(x) z

and ``x`` is natural with respect to ``z`` when they agree.
"""
from __future__ import annotations

from .cellstruct import CellStructure, _require_enumerable
from .errors import NotComposableCells, NotNaturalPair


def _check_pair(H: CellStructure, x, z) -> None:
    if H.pair(z)[1] != H.pair(x)[0]:
        raise NotComposableCells(f"{x!r} cannot be composed after {z!r}")


def _sides(H: CellStructure, x, z):
    left = H.vsum(H.lwhisk(H.cod(x), z), H.rwhisk(x, H.dom(z)))
    right = H.vsum(H.rwhisk(x, H.cod(z)), H.lwhisk(H.dom(x), z))
    return left, right


def natural_wrt(H: CellStructure, x, z) -> bool:
    _check_pair(H, x, z)
    left, right = _sides(H, x, z)
    return left == right


def composable_pairs(H: CellStructure):
    """Every (x, z) with x in H(A, B) and z in H(X, A)."""
    _require_enumerable(H)
    objs = H.base.objects
    for a in objs:
        for b in objs:
            for x in H.cells(a, b):
                for o in objs:
                    for z in H.cells(o, a):
                        yield x, z


def is_natural(H: CellStructure, x) -> bool:
    _require_enumerable(H)
    a = H.pair(x)[0]
    return all(natural_wrt(H, x, z) for o in H.base.objects for z in H.cells(o, a))


def failing_pairs(H: CellStructure) -> list[tuple]:
    return [(x, z) for x, z in composable_pairs(H) if not natural_wrt(H, x, z)]


def is_two_category(H: CellStructure) -> bool:
    return all(natural_wrt(H, x, z) for x, z in composable_pairs(H))


def hcomp(H: CellStructure, x, y):
    """Horizontal composite ``x o y``; only defined on natural pairs."""
    _check_pair(H, x, y)
    left, right = _sides(H, x, y)
    if left != right:
        raise NotNaturalPair(f"{x!r} is not natural with respect to {y!r}")
    return left


def commutator(H: CellStructure, x, y):
    """``[x, y] = c1 + d2 - d1 - c2``, summed so that each step is composable.

    With c1 = cod(x)y, c2 = x cod(y), d1 = dom(x)y, d2 = x dom(y) the value is
    ``c1 + (d2 + (-d1 + -c2))``, an endo-cell on cod(x) cod(y). It is the zero
    cell exactly when x is natural with respect to y.
    """
    _check_pair(H, x, y)
    c1 = H.lwhisk(H.cod(x), y)
    c2 = H.rwhisk(x, H.cod(y))
    d1 = H.lwhisk(H.dom(x), y)
    d2 = H.rwhisk(x, H.dom(y))
    return H.vsum(c1, H.vsum(d2, H.vsum(H.neg(d1), H.neg(c2))))


def naturality_matrix(H: CellStructure):
    """Rows of outer cells, columns of inner cells, entries True/False/None (not composable)."""
    _require_enumerable(H)
    xs = list(H.all_cells())
    grid = []
    for x in xs:
        a = H.pair(x)[0]
        grid.append([natural_wrt(H, x, z) if H.pair(z)[1] == a else None for z in xs])
    return xs, grid
