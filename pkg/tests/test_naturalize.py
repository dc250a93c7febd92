import pytest
from hypothesis import given, strategies as st

import fixtures
from oracle import abelianization_order
from sesqui.cellstruct import check_structure_morphism, identity_morphism, materialize
from sesqui.constructions import codiscrete, discrete, one_object
from sesqui.errors import QuotientIllTyped
from sesqui.groups import catalog, trivial
from sesqui.naturality import is_two_category
from sesqui.naturalize import check_reflection_property, naturalize

SIGN = {"e": "0", "r": "0", "rr": "0", "s12": "1", "s13": "1", "s23": "1"}


def n_cells(H) -> int:
    return len(list(H.all_cells()))


@pytest.mark.parametrize("name", ["Z2", "Z4", "S3", "D4", "Q8", "Klein"])
def test_quotient_size_is_abelianization(name):
    H = fixtures.group_cells(name)
    N, phi = naturalize(H)
    assert n_cells(N) == abelianization_order(catalog(name))
    assert is_two_category(N)
    assert check_structure_morphism(phi, H, N).ok


def test_two_category_is_fixed():
    for H in (materialize(codiscrete(fixtures.diamond())), discrete(fixtures.diamond()), fixtures.z2_cells()):
        N, phi = naturalize(H)
        assert sorted(phi, key=str) == sorted(set(phi.values()), key=str)
        assert n_cells(N) == n_cells(H)


def test_table_quotient_keeps_representatives(s3_table):
    N, phi = naturalize(s3_table)
    assert len(N.cell_types) == 2
    assert set(N.cell_types) == set(phi.values())
    assert all(phi[r] == r for r in phi.values())


def test_idempotent(s3_table):
    N, _ = naturalize(s3_table)
    N2, phi2 = naturalize(N)
    assert all(k == v for k, v in phi2.items())


def test_whiskers_descend(s3_table):
    N, phi = naturalize(s3_table)
    for (g, x), w in s3_table.lwhisks.items():
        assert N.lwhisk(g, phi[x]) == phi[w]
    for (x, f), w in s3_table.rwhisks.items():
        assert N.rwhisk(phi[x], f) == phi[w]


def test_reflection_through_sign(s3_cells):
    Z2 = one_object(trivial(), catalog("Z2"))
    psi = {x: (SIGN[x[0]], x[1]) for x in s3_cells.all_cells()}
    assert check_reflection_property(s3_cells, Z2, psi)


def test_reflection_of_quotient_map(s3_cells):
    N, phi = naturalize(s3_cells)
    assert check_reflection_property(s3_cells, N, phi)


def test_perturbed_map_does_not_factor(s3_cells):
    Z2 = one_object(trivial(), catalog("Z2"))
    psi = {x: (SIGN[x[0]], x[1]) for x in s3_cells.all_cells()}
    psi[("r", "e")] = ("1", "e")
    assert not check_reflection_property(s3_cells, Z2, psi)


def test_non_natural_target_is_rejected(s3_cells):
    assert not check_reflection_property(s3_cells, s3_cells, identity_morphism(s3_cells))


def test_ill_typed_quotient():
    # a sum table entry of the wrong type makes the two sides of a square disagree in boundary
    T = materialize(codiscrete(fixtures.bz2()))
    back = next(c for c, (d, e) in T.cell_types.items() if (d, e) == ("s", "e"))
    forth = next(c for c, (d, e) in T.cell_types.items() if (d, e) == ("e", "s"))
    bad = T.replace(vsum={**T.vsums, (T.zeros["e"], back): forth})
    with pytest.raises(QuotientIllTyped):
        naturalize(bad)


@given(st.sampled_from(["Z3", "Z4", "S3", "D4", "Q8"]))
def test_quotient_map_is_surjective_morphism(name):
    H = fixtures.group_cells(name)
    N, phi = naturalize(H)
    assert set(phi.values()) == set(N.all_cells())
    assert check_structure_morphism(phi, H, N).ok
