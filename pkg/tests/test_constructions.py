from itertools import product

import pytest

import fixtures
from sesqui.cellstruct import validate_structure
from sesqui.constructions import (arrow_cell, chain_homotopies, codiscrete, derivations, discrete, from_action,
                                  grp_conjugation, internal_transformations, is_internal_natural, one_object,
                                  xmod_derivations)
from sesqui.errors import ActionAxiomViolation
from sesqui.extensional import Fn
from sesqui.fincat import TableCategory
from sesqui.groups import catalog, trivial
from sesqui.naturality import is_natural, is_two_category, natural_wrt


def parallel_pair() -> TableCategory:
    return TableCategory(["A", "B"], {"iA": ("A", "A"), "iB": ("B", "B"), "f": ("A", "B"), "g": ("A", "B")},
                         {"A": "iA", "B": "iB"},
                         {("iA", "iA"): "iA", ("iB", "iB"): "iB", ("f", "iA"): "f", ("g", "iA"): "g",
                          ("iB", "f"): "f", ("iB", "g"): "g"})


def test_discrete_and_codiscrete():
    assert len(list(discrete(fixtures.terminal()).all_cells())) == 1
    cat = parallel_pair()
    H = codiscrete(cat)
    assert len(H.cells("A", "B")) == 4
    for S in (discrete(cat), H):
        assert validate_structure(S).ok
        assert is_two_category(S)


def test_trivial_action_gives_endo_cells():
    Z3 = catalog("Z3")
    H = from_action(parallel_pair(), lambda a, b: Z3, lambda x, f: f)
    assert validate_structure(H).ok
    assert all(H.dom(x) == H.cod(x) for x in H.all_cells())
    assert is_two_category(H)


def test_action_axiom_violation():
    Z2 = catalog("Z2")

    def D(x, f):
        return "g" if (f, x) == ("f", "0") else f

    with pytest.raises(ActionAxiomViolation):
        from_action(parallel_pair(), lambda a, b: Z2, D)


def test_one_object_semimodule_is_valid():
    H = one_object(trivial(), catalog("S3"))
    assert validate_structure(H).ok
    assert len(list(H.all_cells())) == 6


def test_conjugation_on_z2():
    cat, H = grp_conjugation([catalog("Z2")])
    Z2 = cat.objects[0]
    assert len(cat.hom(Z2, Z2)) == 2
    cells = H.cells(Z2, Z2)
    assert len(cells) == 4
    assert all(H.dom(x) == H.cod(x) for x in cells)


def test_conjugation_on_s3():
    S3 = catalog("S3")
    cat, H = grp_conjugation([S3])
    G = cat.objects[0]
    one = cat.identity(G)
    for t in S3.elements:
        g = H.cod((t, one))
        assert all(g(x) == S3.mul(S3.mul(t, x), S3.inv(t)) for x in S3.elements)
    assert validate_structure(H).ok
    assert is_two_category(H)


def test_derivations_of_trivial_crossed_module():
    xm = fixtures.xmod_zero()
    cat, H = xmod_derivations([xm])
    A = cat.objects[0]
    one = cat.identity(A)
    assert len([x for x in H.cells(A, A) if x[1] == one]) == 2
    assert validate_structure(H).ok


def test_derivations_match_brute_force():
    for xm in (fixtures.xmod_zero(), fixtures.xmod_inversion()):
        cat, _ = xmod_derivations([xm])
        A = cat.objects[0]
        B, X = xm.B, xm.X
        for f in cat.hom(A, A):
            found = {t.graph for t in derivations(f.f0, xm)}
            brute = set()
            for images in product(X.elements, repeat=len(B.elements)):
                t = dict(zip(B.elements, images))
                if all(t[B.mul(b, b2)] == X.mul(t[b], xm.act(f.f0(b), t[b2]))
                       for b in B.elements for b2 in B.elements):
                    brute.add(Fn.of(B, X, t).graph)
            assert found == brute


def test_homotopy_counts(id_complex):
    cat, H = chain_homotopies([id_complex])
    K = id_complex
    n_htpys = len(list(product(range(2), repeat=2)))
    assert len(H.cells(K, K)) == len(cat.hom(K, K)) * n_htpys
    f = cat.identity(K)
    assert H.zero(f) == (f, H.zero(f)[1]) and H.zero(f)[1].is_zero()


def test_internal_zero_and_arrow_cell():
    A = fixtures.internal_z2()
    cat, H = internal_transformations([A])
    ac = arrow_cell(H, A)
    assert ac.t == A.C1.elements
    f = cat.identity(A)
    z = H.zero(f)
    assert all(p == A.e("o") for p in z.t)
    assert is_internal_natural(z)


def test_internal_cells_match_conjugation():
    A = fixtures.internal_z2()
    cat, H = internal_transformations([A], arrows=False)
    gcat, G = grp_conjugation([catalog("Z2")])
    Z2 = gcat.objects[0]
    # conjugation cells are the natural ones: k = t h t^-1
    natural = [x for x in H.cells(A, A) if is_internal_natural(x)]
    assert len(natural) == len(G.cells(Z2, Z2)) == 4
    assert len(H.cells(A, A)) == 8


def test_internal_naturality_against_arrow_cell():
    for A in (fixtures.internal_z2(), fixtures.internal_arrow()):
        cat, H = internal_transformations([fixtures.internal_z2(), fixtures.internal_arrow()])
        ac = arrow_cell(H, A)
        seen_false = False
        for b in cat.objects:
            for x in H.cells(A, b):
                nat = is_internal_natural(x)
                assert nat == natural_wrt(H, x, ac)
                if nat:
                    assert is_natural(H, x)
                seen_false |= not nat
        if A.name == "P2":
            assert seen_false


@pytest.mark.parametrize("build", [
    lambda: discrete(fixtures.diamond()),
    lambda: codiscrete(fixtures.diamond()),
    lambda: grp_conjugation([catalog("Z2"), catalog("Z4")])[1],
    lambda: xmod_derivations([fixtures.xmod_zero(), fixtures.xmod_identity()])[1],
    lambda: chain_homotopies([fixtures.id_complex()])[1],
    lambda: chain_homotopies([fixtures.z4_complex()])[1],
    lambda: internal_transformations([fixtures.internal_z2(), fixtures.internal_arrow()])[1],
    fixtures.s3_cells,
])
def test_constructed_structures_are_valid(build):
    assert validate_structure(build()).ok
