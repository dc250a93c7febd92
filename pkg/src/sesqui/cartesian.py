"""Cartesian 2-cell structures and induced product cells.

A structure is cartesian when every ``H(D, -)`` preserves pullbacks: cells
into a pullback apex correspond one-to-one to pairs of cells ``(x, y)`` into
the two legs with ``f x == g y``.
"""
from __future__ import annotations

from .cellstruct import CellStructure, _require_enumerable
from .errors import MissingEntry, NoPullback, NotCartesianHere, SesquiError, TypeMismatch
from .fincat import PullbackSquare
from .report import ValidationReport


def cospans(cat):
    """Every pair ``(f, g)`` of morphisms with a common target."""
    by_target: dict = {}
    for f in cat.morphisms():
        by_target.setdefault(cat.target(f), []).append(f)
    for fs in by_target.values():
        for f in fs:
            for g in fs:
                yield f, g


def _check_square(H: CellStructure, sq: PullbackSquare, rep: ValidationReport) -> None:
    cat = H.base
    a, b = cat.source(sq.f), cat.source(sq.g)
    for d in cat.objects:
        cones = {}
        for x in H.cells(d, a):
            fx = H.lwhisk(sq.f, x)
            for y in H.cells(d, b):
                if fx == H.lwhisk(sq.g, y):
                    cones[(x, y)] = []
        stray = []
        for u in H.cells(d, sq.apex):
            key = (H.lwhisk(sq.p1, u), H.lwhisk(sq.p2, u))
            if key in cones:
                cones[key].append(u)
            else:
                stray.append((u, key))
        for u, key in stray:
            rep.add("cartesian", "projections.cone", d, sq, u, message=f"f.p1 u != g.p2 u for {key}")
        mediators = {}
        for (x, y), us in cones.items():
            if not us:
                rep.add("cartesian", "mediator.exists", d, sq, x, y,
                        message="no cell into the apex over this pair")
            elif len(us) > 1:
                rep.add("cartesian", "mediator.unique", d, sq, x, y, *us)
            else:
                mediators[(x, y)] = us[0]
        for (x, y), u in mediators.items():
            for d2 in cat.objects:
                for h in cat.hom(d2, d):
                    key = (H.rwhisk(x, h), H.rwhisk(y, h))
                    if mediators_at(H, sq, d2, key) != H.rwhisk(u, h):
                        rep.add("cartesian", "mediator.natural", d, sq, x, y, h)


def mediators_at(H: CellStructure, sq: PullbackSquare, d, key):
    hits = [u for u in H.cells(d, sq.apex) if (H.lwhisk(sq.p1, u), H.lwhisk(sq.p2, u)) == key]
    return hits[0] if len(hits) == 1 else None


def is_cartesian(H: CellStructure) -> ValidationReport:
    """Check the pullback-preservation property over every cospan of the base.

    Missing pullbacks and missing table entries become findings.
    """
    _require_enumerable(H)
    rep = ValidationReport()
    cat = H.base
    for f, g in cospans(cat):
        try:
            sq = cat.pullback(f, g)
        except NoPullback:
            rep.add("cartesian", "pullback.exists", f, g)
            continue
        try:
            _check_square(H, sq, rep)
        except MissingEntry as exc:
            rep.add("cartesian", "table.total", f, g, message=str(exc))
        except SesquiError as exc:
            rep.add("cartesian", "evaluation", f, g, message=str(exc))
    return rep


def product_cell(H: CellStructure, square: PullbackSquare, square2: PullbackSquare, x, z, y):
    """The cell ``x x_z y`` between pullback apexes.

    ``square`` is the pullback of ``A -> C <- B`` and ``square2`` that of
    ``A' -> C' <- B'``; x, y, z are cells A' => A, B' => B and C' => C. The
    result w satisfies ``p1 w = x p1'`` and ``p2 w = y p2'``.
    """
    cat = H.base
    want = {"x": (cat.source(square2.f), cat.source(square.f)),
            "y": (cat.source(square2.g), cat.source(square.g)),
            "z": (cat.target(square2.f), cat.target(square.f))}
    for name, cell in (("x", x), ("y", y), ("z", z)):
        if H.pair(cell) != want[name]:
            raise TypeMismatch(f"{name} = {cell!r} lies over {H.pair(cell)}, expected {want[name]}")
    if H.lwhisk(square.f, x) != H.rwhisk(z, square2.f) or H.lwhisk(square.g, y) != H.rwhisk(z, square2.g):
        raise TypeMismatch("x, z, y do not commute with the two cospans")
    left = H.rwhisk(x, square2.p1)
    right = H.rwhisk(y, square2.p2)
    if H.lwhisk(square.f, left) != H.lwhisk(square.g, right):
        raise TypeMismatch("x p1' and y p2' do not form a cone over the target cospan")
    try:
        return H.mediate(square, left, right)
    except NotCartesianHere:
        raise
    except SesquiError as exc:
        raise NotCartesianHere(str(exc)) from exc
