"""Pseudocategories relative to a cartesian 2-cell structure.

Conventions. ``C2`` is the pullback of ``d: C1 -> C0`` and ``c: C1 -> C0``
with legs ``pi1`` (the arrow applied last) and ``pi2``, so a generalized
element of C2 is a composable pair ``(f, g)`` with ``m(f, g) = fg``. ``C3``
is the pullback of ``pi2`` and ``pi1`` with legs ``p1 = (f, g)`` and
``p2 = (g, h)``. ``C4`` is built by one more chosen pullback, either as
``C3 x C1`` (left association) or ``C1 x C3`` (right association); every
map out of it is obtained from the four legs ``f, g, h, k`` by mediation.

Induced maps on generalized elements:

    e1: f -> (f, 1)          e2: f -> (1, f)
    m1: (f, g, h) -> (f, gh) m2: (f, g, h) -> (fg, h)
    i0: (f, g) -> (f, 1, g)  i1: (f, g) -> (f, g, 1)  i2: (f, g) -> (1, f, g)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .cellstruct import CellStructure
from .chains import (ChainCategory, ChainComplex, ChainMap, Htpy, block_htpy, block_map, boundary,
                     direct_sum, htpy_shapes, is_pullback, lwhisk_htpy, rwhisk_htpy)
from .constructions import ConjugationStructure, HomotopyStructure
from .errors import (ConeMismatch, DeltaNotCentral, DeltaNotInKernel, MissingPullback, NoPullback,
                     NotVerticallyComposable, SesquiError, SideConditionViolation)
from .extensional import Fn, SetCategory, fibered_product, is_homomorphism
from .fincat import Category, PullbackSquare, induced_into_pullback
from .groups import CrossedModulePresentation, semidirect
from .modmat import Mat
from .naturality import natural_wrt
from .report import ValidationReport

NATURAL = "natural"
NON_NATURAL = "non_natural"


@dataclass
class PseudocategoryData:
    """``(C0, C1, d, c, e, m, alpha, lambda, rho)`` plus optional chosen pullbacks.

    ``C2`` and ``C3`` are :class:`PullbackSquare` witnesses; when omitted they
    are computed with the base category's pullback construction. ``C4`` and
    ``C4r`` optionally fix the left and right associated quadruple objects.
    """
    C0: Any
    C1: Any
    d: Any
    c: Any
    e: Any
    m: Any
    alpha: Any
    lam: Any
    rho: Any
    C2: PullbackSquare | None = None
    C3: PullbackSquare | None = None
    C4: PullbackSquare | None = None
    C4r: PullbackSquare | None = None


@dataclass
class Frame:
    """Every morphism derived from the reflexive graph and m."""
    C2: PullbackSquare
    C3: PullbackSquare
    C4: PullbackSquare
    pi1: Any
    pi2: Any
    p1: Any
    p2: Any
    e1: Any
    e2: Any
    m1: Any
    m2: Any
    i0: Any
    i1: Any
    i2: Any
    legs: tuple
    F3: Any
    G3: Any
    one_m_one: Any
    m_one_one: Any
    one_one_m: Any


def _pullback(cat: Category, f, g, given: PullbackSquare | None) -> PullbackSquare:
    if given is not None:
        return given
    try:
        return cat.pullback(f, g)
    except NoPullback as exc:
        raise MissingPullback(str(exc)) from exc


def build_frame(cat: Category, data: PseudocategoryData, association: str = "left") -> Frame:
    """Derive pullbacks and induced maps; raises ConeMismatch if m is badly typed."""
    comp = cat.chain
    d, c, e, m = data.d, data.c, data.e, data.m
    C2 = _pullback(cat, d, c, data.C2)
    pi1, pi2 = C2.p1, C2.p2
    C3 = _pullback(cat, pi2, pi1, data.C3)
    p1, p2 = C3.p1, C3.p2
    one = cat.identity(data.C1)

    def pair(x, y):
        return induced_into_pullback(cat, C2, x, y)

    def triple(x, y, z):
        return induced_into_pullback(cat, C3, pair(x, y), pair(y, z))

    e1 = pair(one, comp(e, d))
    e2 = pair(comp(e, c), one)
    f3, g3, h3 = comp(pi1, p1), comp(pi2, p1), comp(pi2, p2)
    m1 = pair(f3, comp(m, p2))
    m2 = pair(comp(m, p1), h3)
    i0 = induced_into_pullback(cat, C3, comp(e1, pi1), comp(e2, pi2))
    i1 = induced_into_pullback(cat, C3, cat.identity(C2.apex), comp(e1, pi2))
    i2 = induced_into_pullback(cat, C3, comp(e2, pi1), cat.identity(C2.apex))
    if association == "left":
        C4 = _pullback(cat, comp(d, pi2, p2), c, data.C4)
        ql, qr = C4.p1, C4.p2
        legs = (comp(f3, ql), comp(g3, ql), comp(h3, ql), qr)
    elif association == "right":
        C4 = _pullback(cat, d, comp(c, pi1, p1), data.C4r)
        rf, rg = C4.p1, C4.p2
        legs = (rf, comp(f3, rg), comp(g3, rg), comp(h3, rg))
    else:
        raise ValueError(f"unknown association {association!r}")
    f, g, h, k = legs
    return Frame(
        C2=C2, C3=C3, C4=C4, pi1=pi1, pi2=pi2, p1=p1, p2=p2, e1=e1, e2=e2, m1=m1, m2=m2,
        i0=i0, i1=i1, i2=i2, legs=legs,
        F3=triple(f, g, h), G3=triple(g, h, k),
        one_m_one=triple(f, comp(m, pair(g, h)), k),
        m_one_one=triple(comp(m, pair(f, g)), h, k),
        one_one_m=triple(f, g, comp(m, pair(h, k))),
    )


# -- equation sides -------------------------------------------------------------

def _zero1(H: CellStructure, data: PseudocategoryData):
    return H.zero(H.base.identity(data.C1))


def pentagon_sides(H: CellStructure, data: PseudocategoryData, fr: Frame):
    """``m(a x 0) + a(1 x m x 1) + m(0 x a)`` and ``a(m x 1 x 1) + a(1 x 1 x m)`` in H(C4, C1)."""
    a, m, z = data.alpha, data.m, _zero1(H, data)
    f, g, h, k = fr.legs
    a_x_0 = H.mediate(fr.C2, H.rwhisk(a, fr.F3), H.rwhisk(z, k))
    o_x_a = H.mediate(fr.C2, H.rwhisk(z, f), H.rwhisk(a, fr.G3))
    lhs = H.vsum(H.lwhisk(m, a_x_0), H.vsum(H.rwhisk(a, fr.one_m_one), H.lwhisk(m, o_x_a)))
    rhs = H.vsum(H.rwhisk(a, fr.m_one_one), H.rwhisk(a, fr.one_one_m))
    return lhs, rhs


def _times_zero(H, data, fr, x):
    """``x x 0_1`` in H(C2, C2)."""
    return H.mediate(fr.C2, H.rwhisk(x, fr.pi1), H.rwhisk(_zero1(H, data), fr.pi2))


def _zero_times(H, data, fr, x):
    """``0_1 x x`` in H(C2, C2)."""
    return H.mediate(fr.C2, H.rwhisk(_zero1(H, data), fr.pi1), H.rwhisk(x, fr.pi2))


def middle_triangle_sides(H, data, fr, mode: str = NATURAL):
    """Natural form ``m(rho x 0) + a i0 = m(0 x lambda)``; otherwise solved for ``a i0``."""
    m = data.m
    r0 = H.lwhisk(m, _times_zero(H, data, fr, data.rho))
    ol = H.lwhisk(m, _zero_times(H, data, fr, data.lam))
    ai0 = H.rwhisk(data.alpha, fr.i0)
    if mode == NATURAL:
        return H.vsum(r0, ai0), ol
    return ai0, H.vsum(H.neg(r0), ol)


def left_triangle_sides(H, data, fr):
    """``a i2 = -m(lambda x 0) + lambda m``."""
    m = data.m
    l0 = H.lwhisk(m, _times_zero(H, data, fr, data.lam))
    return H.rwhisk(data.alpha, fr.i2), H.vsum(H.neg(l0), H.rwhisk(data.lam, m))


def right_triangle_sides(H, data, fr):
    """``a i1 = -rho m + m(0 x rho)``."""
    m = data.m
    o_r = H.lwhisk(m, _zero_times(H, data, fr, data.rho))
    return H.rwhisk(data.alpha, fr.i1), H.vsum(H.neg(H.rwhisk(data.rho, m)), o_r)


# -- checker ----------------------------------------------------------------------

def _difference(cat, lhs, rhs):
    first = getattr(cat, "first_difference", None)
    if first is not None and isinstance(lhs, Fn) and isinstance(rhs, Fn):
        return first(lhs, rhs)
    return None


def _equation(rep: ValidationReport, cat, kind: str, axiom: str, sides) -> None:
    try:
        lhs, rhs = sides()
    except NotVerticallyComposable as exc:
        # the boundaries that failed to meet are the witness
        where = _difference(cat, *exc.maps) if exc.maps else None
        wit = exc.maps if where is None else (*exc.maps, where)
        rep.add(kind, axiom, *wit, message=f"ill-typed: {exc}")
        return
    except SesquiError as exc:
        rep.add(kind, axiom, message=f"ill-typed: {exc}")
        return
    if lhs != rhs:
        where = _difference(cat, lhs, rhs)
        wit = (lhs, rhs) if where is None else (lhs, rhs, where)
        rep.add(kind, axiom, *wit)


def _structural(rep: ValidationReport, H: CellStructure, data: PseudocategoryData) -> None:
    cat = H.base
    comp = cat.chain
    d, c, e, m = data.d, data.c, data.e, data.m
    C0 = data.C0
    one0 = cat.identity(C0)

    def eq(axiom, lhs, rhs, *wit):
        if lhs != rhs:
            rep.add("structural", axiom, *wit, message=f"{lhs!r} != {rhs!r}")

    def safe(axiom, fn):
        try:
            return fn()
        except SesquiError as exc:
            rep.add("structural", axiom, message=f"ill-typed: {exc}")
            return None

    eq("de = 1", safe("de = 1", lambda: comp(d, e)), one0)
    eq("ce = 1", safe("ce = 1", lambda: comp(c, e)), one0)
    C2 = _pullback(cat, d, c, data.C2)
    eq("dm = d pi2", safe("dm = d pi2", lambda: comp(d, m)), comp(d, C2.p2))
    eq("cm = c pi1", safe("cm = c pi1", lambda: comp(c, m)), comp(c, C2.p1))


def _structural_cells(rep: ValidationReport, H: CellStructure, data: PseudocategoryData, fr: Frame) -> None:
    cat = H.base
    comp = cat.chain
    d, c, e, m = data.d, data.c, data.e, data.m
    a, lam, rho = data.alpha, data.lam, data.rho
    one1 = cat.identity(data.C1)

    checks = [
        ("alpha in H(C3, C1)", lambda: H.pair(a), lambda: (fr.C3.apex, data.C1)),
        ("lambda in H(C1, C1)", lambda: H.pair(lam), lambda: (data.C1, data.C1)),
        ("rho in H(C1, C1)", lambda: H.pair(rho), lambda: (data.C1, data.C1)),
        ("dom(alpha) = m m1", lambda: H.dom(a), lambda: comp(m, fr.m1)),
        ("cod(alpha) = m m2", lambda: H.cod(a), lambda: comp(m, fr.m2)),
        ("dom(lambda) = m e2", lambda: H.dom(lam), lambda: comp(m, fr.e2)),
        ("dom(rho) = m e1", lambda: H.dom(rho), lambda: comp(m, fr.e1)),
        ("cod(lambda) = 1", lambda: H.cod(lam), lambda: one1),
        ("cod(rho) = 1", lambda: H.cod(rho), lambda: one1),
        ("d lambda = 0_d", lambda: H.lwhisk(d, lam), lambda: H.zero(d)),
        ("d rho = 0_d", lambda: H.lwhisk(d, rho), lambda: H.zero(d)),
        ("c lambda = 0_c", lambda: H.lwhisk(c, lam), lambda: H.zero(c)),
        ("c rho = 0_c", lambda: H.lwhisk(c, rho), lambda: H.zero(c)),
        ("d alpha = 0_{d pi2 p2}", lambda: H.lwhisk(d, a), lambda: H.zero(comp(d, fr.pi2, fr.p2))),
        ("c alpha = 0_{c pi1 p1}", lambda: H.lwhisk(c, a), lambda: H.zero(comp(c, fr.pi1, fr.p1))),
        ("lambda e = rho e", lambda: H.rwhisk(lam, e), lambda: H.rwhisk(rho, e)),
    ]
    for axiom, lhs, rhs in checks:
        _equation(rep, cat, "structural", axiom, lambda: (lhs(), rhs()))
    for name, x in (("alpha", a), ("lambda", lam), ("rho", rho)):
        try:
            H.neg(x)
        except SesquiError as exc:
            rep.add("structural", f"{name} invertible", x, message=str(exc))


def default_probes(H: CellStructure, data: PseudocategoryData, fr: Frame) -> list:
    """Cells available without enumeration: the coherence cells and zeros of the frame maps."""
    mors = [data.d, data.c, data.e, data.m, fr.pi1, fr.pi2, fr.p1, fr.p2, fr.e1, fr.e2, fr.m1, fr.m2,
            fr.i0, fr.i1, fr.i2, fr.F3, fr.G3, fr.one_m_one, fr.m_one_one, fr.one_one_m, *fr.legs]
    cells = [data.alpha, data.lam, data.rho]
    cells += [H.zero(f) for f in mors]
    return cells


def _naturality(rep, H, data, fr, probes) -> None:
    if probes is None:
        if H.enumerable:
            probes = [z for z in H.all_cells()]
        else:
            probes = default_probes(H, data, fr)
    for name, x in (("alpha", data.alpha), ("lambda", data.lam), ("rho", data.rho)):
        src = H.pair(x)[0]
        for z in probes:
            if H.pair(z)[1] != src:
                continue
            try:
                ok = natural_wrt(H, x, z)
            except SesquiError as exc:
                rep.add("naturality", f"{name} natural", z, message=f"ill-typed: {exc}")
                continue
            if not ok:
                rep.add("naturality", f"{name} natural", z)


EQUATIONS = {
    NATURAL: ("structural", "pentagon", "middle_triangle", "naturality"),
    NON_NATURAL: ("structural", "pentagon", "middle_triangle", "left_triangle", "right_triangle", "eq_a5"),
}


def check_pseudocategory(H: CellStructure, data: PseudocategoryData, mode: str = NON_NATURAL,
                         probes: Iterable | None = None, association: str = "left") -> ValidationReport:
    """Verify the structural conditions and the coherence equations.

    In ``natural`` mode: pentagon, middle triangle, and naturality of alpha,
    lambda, rho against every cell (enumerable structures) or against
    ``probes`` (default: the coherence cells and zeros of the frame maps).
    In ``non_natural`` mode: pentagon, the three triangles in solved form,
    and the four naturality facts between lambda and rho.
    """
    mode = mode.replace("-", "_")
    if mode not in EQUATIONS:
        raise ValueError(f"unknown mode {mode!r}")
    rep = ValidationReport()
    cat = H.base
    _structural(rep, H, data)
    try:
        fr = build_frame(cat, data, association)
    except ConeMismatch as exc:
        rep.add("structural", "induced maps", message=str(exc))
        return rep
    _structural_cells(rep, H, data, fr)
    _equation(rep, cat, "pentagon", "m(a x 0) + a(1 x m x 1) + m(0 x a) = a(m x 1 x 1) + a(1 x 1 x m)",
              lambda: pentagon_sides(H, data, fr))
    if mode == NATURAL:
        _equation(rep, cat, "middle_triangle", "m(rho x 0) + a i0 = m(0 x lambda)",
                  lambda: middle_triangle_sides(H, data, fr, NATURAL))
        _naturality(rep, H, data, fr, probes)
        return rep
    _equation(rep, cat, "middle_triangle", "a i0 = -m(rho x 0) + m(0 x lambda)",
              lambda: middle_triangle_sides(H, data, fr, NON_NATURAL))
    _equation(rep, cat, "left_triangle", "a i2 = -m(lambda x 0) + lambda m",
              lambda: left_triangle_sides(H, data, fr))
    _equation(rep, cat, "right_triangle", "a i1 = -rho m + m(0 x rho)",
              lambda: right_triangle_sides(H, data, fr))
    for name, x, y in (("lambda o lambda", data.lam, data.lam), ("lambda o rho", data.lam, data.rho),
                       ("rho o rho", data.rho, data.rho), ("rho o lambda", data.rho, data.lam)):
        try:
            if not natural_wrt(H, x, y):
                rep.add("eq_a5", name, x, y)
        except SesquiError as exc:
            rep.add("eq_a5", name, message=f"ill-typed: {exc}")
    return rep


# -- groups: crossed modules with a central element ------------------------------------

def build_group_pseudocategory(xm: CrossedModulePresentation, delta, check: bool = True):
    """Pseudocategory in Grp from a crossed module and an element delta of X.

    Objects are the elements of B and arrows ``(x, b): b -> d(x) b``; the
    composite of ``(x', d(x) b)`` after ``(x, b)`` is
    ``(x' x delta^-1 (b . delta), b)``. The unit coherence cells are
    conjugation by ``(delta, 1)``; alpha is solved from the middle triangle.

    Returns ``(cat, H, data)``. With ``check`` the centrality and kernel
    conditions on delta are enforced.
    """
    X, B = xm.X, xm.B
    if delta not in X.index:
        raise ValueError(f"{delta!r} is not an element of {X.name}")
    if check:
        if xm.d(delta) != B.unit:
            raise DeltaNotInKernel(f"d({delta}) = {xm.d(delta)} is not the unit")
        if delta not in X.center:
            bad = next(x for x in X.elements if X.mul(delta, x) != X.mul(x, delta))
            raise DeltaNotCentral(f"{delta} does not commute with {bad}")
    C1 = semidirect(X, B, xm.act, name=f"{X.name}x|{B.name}")
    C0 = B
    d = Fn.of(C1, C0, lambda p: p[1], name="d")
    c = Fn.of(C1, C0, lambda p: B.mul(xm.d(p[0]), p[1]), name="c")
    e = Fn.of(C0, C1, lambda b: (X.unit, b), name="e")
    C2 = fibered_product(d, c, name="C2")
    dinv = X.inv(delta)

    def compose(pair):
        (x2, _), (x, b) = pair
        return (X.mul(X.mul(X.mul(x2, x), dinv), xm.act(b, delta)), b)

    m = Fn.of(C2.apex, C1, compose, name="m")
    if check and not is_homomorphism(m):
        raise ValueError("composition is not a homomorphism for this crossed module")
    pi1, pi2 = C2.p1, C2.p2
    C3 = fibered_product(pi2, pi1, name="C3")
    cat = SetCategory([C0, C1, C2.apex, C3.apex])
    H = ConjugationStructure(cat)
    chain = cat.chain
    t = (delta, B.unit)
    probe = PseudocategoryData(C0, C1, d, c, e, m, None, None, None, C2, C3)
    fr = build_frame(cat, probe)
    lam = (t, chain(m, fr.e2))
    rho = (t, chain(m, fr.e1))
    probe.lam, probe.rho = lam, rho
    probe.alpha = (C1.unit, chain(m, fr.m1))
    _, rhs = middle_triangle_sides(H, probe, fr, NON_NATURAL)
    probe.alpha = (rhs[0], chain(m, fr.m1))
    probe.C4 = fr.C4
    return cat, H, probe


# -- additive: chain complexes with homotopies -----------------------------------------

def _check_side_conditions(h: ChainMap, **cells: Htpy) -> None:
    for name, t in cells.items():
        if not lwhisk_htpy(h, t).is_zero():
            raise SideConditionViolation(f"h {name} != 0")


def build_additive_pseudocategory(A: ChainComplex, B: ChainComplex, h: ChainMap, lam: Htpy, rho: Htpy,
                                  eta: Htpy):
    """Pseudocategory in chain complexes over ``C0 = B``, ``C1 = A + B``.

    ``d = (0 1)``, ``c = (h 1)``, ``e = (0; 1)`` and
    ``m = (1 - D rho, 1 - D lambda, -D eta; 0, 0, 1)`` on ``C2 = A + A + B``.
    The unit cells are ``(lambda eta; 0 0)`` and ``(rho eta; 0 0)``; alpha is
    given by :func:`additive_alpha`. The side triangles need not hold; the
    checker reports them.

    Returns ``(cat, H, data)``; ``data.C2``, ``C3``, ``C4``, ``C4r`` are the
    explicit direct-sum pullbacks.
    """
    _check_side_conditions(h, **{"lambda": lam, "rho": rho, "eta": eta})
    C1 = direct_sum("A+B", A, B)
    C2 = direct_sum("A+A+B", A, A, B)
    C3 = direct_sum("A+A+A+B", A, A, A, B)
    C4 = direct_sum("A+A+A+A+B", A, A, A, A, B)
    p_1, p_2, p_3, p_4 = [A, B], [A, A, B], [A, A, A, B], [A, A, A, A, B]
    bm = block_map
    d = bm(C1, p_1, B, [B], [[0, 1]])
    c = bm(C1, p_1, B, [B], [[h, 1]])
    e = bm(B, [B], C1, p_1, [[0], [1]])
    pi1 = bm(C2, p_2, C1, p_1, [[1, 0, 0], [0, h, 1]])
    pi2 = bm(C2, p_2, C1, p_1, [[0, 1, 0], [0, 0, 1]])
    p1 = bm(C3, p_3, C2, p_2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, h, 1]])
    p2 = bm(C3, p_3, C2, p_2, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    cat = ChainCategory([A, B, C1, C2, C3, C4])
    chain = cat.chain
    sq2 = PullbackSquare(C2, pi1, pi2, d, c)
    sq3 = PullbackSquare(C3, p1, p2, pi2, pi1)
    ql = bm(C4, p_4, C3, p_3, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, h, 1]])
    qr = bm(C4, p_4, C1, p_1, [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    sq4 = PullbackSquare(C4, ql, qr, chain(d, pi2, p2), c)
    rf = bm(C4, p_4, C1, p_1, [[1, 0, 0, 0, 0], [0, h, h, h, 1]])
    rg = bm(C4, p_4, C3, p_3, [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    sq4r = PullbackSquare(C4, rf, rg, d, chain(c, pi1, p1))
    for sq in (sq2, sq3, sq4, sq4r):
        if not is_pullback(sq):
            raise MissingPullback(f"direct-sum square over {sq.apex.name} is not a pullback")
    one_a = cat.identity(A)
    f = one_a - boundary(rho, A, A)
    g = one_a - boundary(lam, A, A)
    m = bm(C2, p_2, C1, p_1, [[f, g, -boundary(eta, B, A)], [0, 0, 1]])
    H = HomotopyStructure(cat)
    data = PseudocategoryData(B, C1, d, c, e, m, None, None, None, sq2, sq3, sq4, sq4r)
    fr = build_frame(cat, data)
    data.lam = (chain(m, fr.e2), block_htpy(p_1, p_1, [[lam, eta], [0, 0]]))
    data.rho = (chain(m, fr.e1), block_htpy(p_1, p_1, [[rho, eta], [0, 0]]))
    data.alpha = (chain(m, fr.m1), additive_alpha(A, B, h, lam, rho, eta))
    return cat, H, data


def additive_alpha(A: ChainComplex, B: ChainComplex, h: ChainMap, lam: Htpy, rho: Htpy, eta: Htpy) -> Htpy:
    """The associator homotopy ``(a1 a2 a3 a0; 0 0 0 0)`` on ``A+A+A+B``.

    a1 = -f rho, a2 = lambda + g rho - rho - f lambda, a3 = g lambda - f eta h,
    a0 = g eta - f eta, with f = 1 - D rho and g = 1 - D lambda. The columns
    a1, a3, a0 are exactly what the middle triangle forces along i0.
    """
    one = _identity_map(A)
    f, g = one - boundary(rho, A, A), one - boundary(lam, A, A)
    L = lwhisk_htpy
    a1 = -L(f, rho)
    a2 = lam + L(g, rho) - rho - L(f, lam)
    a3 = L(g, lam) - rwhisk_htpy(L(f, eta), h)
    a0 = L(g, eta) - L(f, eta)
    za, zb = _zero_htpy(A, B), _zero_htpy(B, B)
    return block_htpy([A, A, A, B], [A, B], [[a1, a2, a3, a0], [za, za, za, zb]])


def _identity_map(A: ChainComplex) -> ChainMap:
    return ChainMap(A, A, tuple(Mat.eye(n, A.mod) for n in A.dims))


def _zero_htpy(src: ChainComplex, tgt: ChainComplex) -> Htpy:
    return Htpy(*[Mat.zeros(r, c, src.mod) for r, c in htpy_shapes(src, tgt)])


def bracket(x: Htpy, xs: ChainComplex, xt: ChainComplex, y: Htpy, ys: ChainComplex) -> Htpy:
    """``[x, y] = D(x) y - x D(y)`` for x in H(xs, xt) and y in H(ys, xs)."""
    return lwhisk_htpy(boundary(x, xs, xt), y) - rwhisk_htpy(x, boundary(y, ys, xs))


def additive_bracket_identities(A: ChainComplex, B: ChainComplex, h: ChainMap, lam: Htpy, rho: Htpy,
                                eta: Htpy) -> dict[str, bool]:
    """Evaluate the five bracket identities in terms of lambda, rho, eta and h.

    The bracket ``[x, eta]`` lands in H(B, A); where it is compared with a
    cell in H(A, A) it is whiskered by h on the right.
    """
    one = _identity_map(A)
    Dl, Dr = boundary(lam, A, A), boundary(rho, A, A)
    f, g = one - Dr, one - Dl

    def br(x, y, ys=A):
        return bracket(x, A, A, y, ys)

    L = lwhisk_htpy
    rr, lr, rl, ll = br(rho, rho), br(lam, rho), br(rho, lam), br(lam, lam)
    le, re = br(lam, eta, B), br(rho, eta, B)
    leh, reh = rwhisk_htpy(le, h), rwhisk_htpy(re, h)
    k = one - Dr - Dl
    return {
        "(1 - D rho)[rho, rho] = 0": L(f, rr).is_zero(),
        "D lambda [rho, rho] = D rho [lambda, rho] + (1 - D rho)[rho, lambda]":
            L(Dl, rr) == L(Dr, lr) + L(f, rl),
        "(1 - D lambda)[lambda, rho] + D lambda [rho, lambda] = D rho [lambda, lambda] + (1 - D rho)[rho, eta] h":
            L(g, lr) + L(Dl, rl) == L(Dr, ll) + L(f, reh),
        "(1 - D lambda)[lambda, lambda] = (1 - D lambda)[lambda, eta] h": L(g, ll) == L(g, leh),
        "(1 - D rho - D lambda)[lambda, eta] = (1 - D rho - D lambda)[rho, eta]": L(k, le) == L(k, re),
    }
