"""Small concrete categories, structures, and pseudocategories shared by the tests."""
from __future__ import annotations

from sesqui.cellstruct import TableStructure, materialize
from sesqui.chains import ChainComplex
from sesqui.constructions import codiscrete, discrete, one_object
from sesqui.extensional import FinSet, Fn, SetCategory, fibered_product
from sesqui.fincat import TableCategory
from sesqui.groups import CrossedModulePresentation, catalog, symmetric3, trivial
from sesqui.internal import InternalCategory
from sesqui.pseudocat import PseudocategoryData, build_frame


def terminal() -> TableCategory:
    return TableCategory(["A"], {"idA": ("A", "A")}, {"A": "idA"}, {("idA", "idA"): "idA"})


def z2_cells() -> TableStructure:
    """One object, one morphism, two cells added as Z2."""
    return TableStructure(
        terminal(),
        {"z": ("idA", "idA"), "u": ("idA", "idA")},
        {"idA": "z"},
        {("z", "z"): "z", ("z", "u"): "u", ("u", "z"): "u", ("u", "u"): "z"},
        {("idA", "z"): "z", ("idA", "u"): "u"},
        {("z", "idA"): "z", ("u", "idA"): "u"},
    )


def s3_cells():
    """One object, one morphism, cells the elements of S3 under multiplication."""
    return one_object(trivial(), symmetric3())


def s3_table() -> TableStructure:
    return materialize(s3_cells())


def group_cells(name: str):
    return one_object(trivial(), catalog(name))


def id_complex() -> ChainComplex:
    """Z2 -id-> Z2 -0-> Z2."""
    return ChainComplex.of("K", 2, (1, 1, 1), [[1]], [[0]])


def z4_complex() -> ChainComplex:
    """Z4 -2-> Z4 -2-> Z4."""
    return ChainComplex.of("Z4c", 4, (1, 1, 1), [[2]], [[2]])


def poset(n: int) -> TableCategory:
    """The total order 0 < 1 < ... < n-1."""
    objs = [str(i) for i in range(n)]
    mors = {f"{i}{j}": (str(i), str(j)) for i in range(n) for j in range(i, n)}
    comp = {(f"{j}{k}", f"{i}{j}"): f"{i}{k}" for i in range(n) for j in range(i, n) for k in range(j, n)}
    return TableCategory(objs, mors, {o: f"{o}{o}" for o in objs}, comp)


def diamond() -> TableCategory:
    """The lattice 0 < a, b < 1; every cospan has a pullback (the meet)."""
    objs = ["0", "a", "b", "1"]
    le = [("0", "0"), ("a", "a"), ("b", "b"), ("1", "1"), ("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"),
          ("b", "1")]
    mors = {f"{x}{y}": (x, y) for x, y in le}
    comp = {}
    for f, (x, y) in mors.items():
        for g, (y2, z) in mors.items():
            if y == y2:
                comp[(g, f)] = f"{x}{z}"
    return TableCategory(objs, mors, {x: f"{x}{x}" for x in objs}, comp)


def bz2() -> TableCategory:
    """Z2 as a one-object category."""
    return TableCategory(["o"], {"e": ("o", "o"), "s": ("o", "o")}, {"o": "e"},
                         {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})


def xmod_zero() -> CrossedModulePresentation:
    Z2 = catalog("Z2")
    return CrossedModulePresentation.build("zero_Z2", Z2, Z2, {"0": "0", "1": "0"})


def xmod_identity() -> CrossedModulePresentation:
    Z2 = catalog("Z2")
    return CrossedModulePresentation.build("id_Z2", Z2, Z2, {"0": "0", "1": "1"})


def xmod_inversion() -> CrossedModulePresentation:
    """Z3 with Z2 acting by inversion and trivial boundary."""
    Z3, Z2 = catalog("Z3"), catalog("Z2")
    return CrossedModulePresentation.build(
        "inv_Z3", Z3, Z2, {x: "0" for x in Z3.elements},
        lambda b, x: x if b == "0" else str((-int(x)) % 3))


def xmod_s3_over_trivial() -> CrossedModulePresentation:
    S3 = catalog("S3")
    return CrossedModulePresentation.build("S3_1", S3, trivial(), {x: "e" for x in S3.elements})


def internal_z2() -> InternalCategory:
    return InternalCategory.build("BZ2", ["o"], ["0", "1"], {"0": "o", "1": "o"}, {"0": "o", "1": "o"},
                                  {"o": "0"}, {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"})


def internal_arrow() -> InternalCategory:
    """The category 0 -> 1."""
    return InternalCategory.build(
        "P2", [0, 1], ["i0", "i1", "a"], {"i0": 0, "i1": 1, "a": 0}, {"i0": 0, "i1": 1, "a": 1},
        {0: "i0", 1: "i1"}, {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("a", "i0"): "a", ("i1", "a"): "a"})


# -- pseudocategories in finite sets ---------------------------------------------------

def one_object_magma(elements, mul, unit):
    """A reflexive graph over a point with multiplication ``m(f, g) = mul(f, g)``; cells unset."""
    C0 = FinSet("pt", ("*",))
    C1 = FinSet("M", tuple(elements))
    d = Fn.of(C1, C0, lambda _: "*", name="d")
    c = Fn.of(C1, C0, lambda _: "*", name="c")
    e = Fn.of(C0, C1, lambda _: unit, name="e")
    C2 = fibered_product(d, c, name="C2")
    m = Fn.of(C2.apex, C1, lambda p: mul(p[0], p[1]), name="m")
    cat = SetCategory([C0, C1, C2.apex])
    return cat, PseudocategoryData(C0, C1, d, c, e, m, None, None, None, C2)


def z2_groupoid():
    return one_object_magma(["0", "1"], lambda a, b: str((int(a) + int(b)) % 2), "0")


_LOOP = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}


def unital_magma():
    """Three elements with a two-sided unit whose product is not associative."""
    return one_object_magma(["0", "a", "b"], lambda x, y: y if x == "0" else x if y == "0" else _LOOP[(x, y)], "0")


def with_zero_cells(cat, data):
    """Discrete structure with every coherence cell a zero cell."""
    H = discrete(cat)
    fr = build_frame(cat, data)
    ch = cat.chain
    data.alpha = H.zero(ch(data.m, fr.m1))
    data.lam = H.zero(ch(data.m, fr.e2))
    data.rho = H.zero(ch(data.m, fr.e1))
    return H, data


def with_unique_cells(cat, data):
    """Codiscrete structure with the unique cells between the required boundaries."""
    H = codiscrete(cat)
    fr = build_frame(cat, data)
    ch = cat.chain
    one = cat.identity(data.C1)
    data.alpha = (ch(data.m, fr.m2), ch(data.m, fr.m1))
    data.lam = (one, ch(data.m, fr.e2))
    data.rho = (one, ch(data.m, fr.e1))
    return H, data


def times_bz2(cat: TableCategory) -> TableCategory:
    """The product of a table category with Z2 viewed as a one-object category."""
    mors = {f"{f}{g}": t for f, t in cat.morphism_types.items() for g in "es"}
    ids = {o: f"{i}e" for o, i in cat.identities.items()}
    mul = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    comp = {(f"{g}{a}", f"{f}{b}"): f"{h}{mul[(a, b)]}"
            for (g, f), h in cat.composition.items() for a in "es" for b in "es"}
    return TableCategory(cat.objects, mors, ids, comp)


def random_additive(mod: int, rng):
    """A random small additive instance ``(A, B, h, lam, rho, eta)`` with h killing the homotopies."""
    from sesqui.chains import ChainMap, Htpy, htpy_shapes, is_chain_map, lwhisk_htpy
    from sesqui.modmat import Mat

    def mat(r, c):
        return Mat(r, c, tuple(rng.randrange(mod) for _ in range(r * c)), mod)

    def cx(name):
        while True:
            dims = tuple(rng.randint(1, 2) for _ in range(3))
            c = ChainComplex(name, mod, dims, mat(dims[1], dims[0]), mat(dims[2], dims[1]))
            if not c.check():
                return c

    A, B = cx("A"), cx("B")
    h = ChainMap(A, B, tuple(Mat.zeros(B.dims[k], A.dims[k], mod) for k in range(3)))
    for _ in range(300):
        f = ChainMap(A, B, tuple(mat(B.dims[k], A.dims[k]) for k in range(3)))
        if is_chain_map(f):
            h = f
            break

    def htpy(src):
        shapes = htpy_shapes(src, A)
        for _ in range(300):
            t = Htpy(*(mat(r, c) for r, c in shapes))
            if lwhisk_htpy(h, t).is_zero():
                return t
        return Htpy(*(Mat.zeros(r, c, mod) for r, c in shapes))

    return A, B, h, htpy(A), htpy(A), htpy(B)
