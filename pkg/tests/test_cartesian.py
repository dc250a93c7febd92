import pytest

import fixtures
from sesqui.cartesian import is_cartesian, product_cell
from sesqui.cellstruct import materialize
from sesqui.chains import all_htpys, zero_map
from sesqui.constructions import chain_homotopies, codiscrete, discrete
from sesqui.errors import TypeMismatch
from sesqui.fincat import find_pullback, induced_into_pullback


@pytest.fixture(scope="module")
def lattice_z2():
    return fixtures.times_bz2(fixtures.diamond())


def test_discrete_and_codiscrete_are_cartesian(lattice_z2):
    for cat in (fixtures.diamond(), lattice_z2):
        assert is_cartesian(discrete(cat)).ok
        assert is_cartesian(codiscrete(cat)).ok


def test_deleted_cell_over_apex_is_reported(lattice_z2):
    T = materialize(codiscrete(lattice_z2))
    victim = next(x for x in T.cells("0", "0") if not x.startswith("z_"))
    rep = is_cartesian(T.without_cell(victim))
    missing = [f for f in rep.findings if f.axiom == "mediator.exists"]
    assert missing
    d, square, x, y = missing[0].witnesses
    assert d == "0" and square.apex == "0"
    assert x in T.cell_types and y in T.cell_types


def test_zero_cells_give_zero_of_induced_map(lattice_z2):
    H = codiscrete(lattice_z2)
    sq = find_pullback(lattice_z2, "a1e", "b1e")
    za, zb, z1 = H.zero("aae"), H.zero("bbe"), H.zero("11e")
    w = product_cell(H, sq, sq, za, z1, zb)
    assert w == H.zero(induced_into_pullback(lattice_z2, sq, sq.p1, sq.p2))


def test_discrete_product_cell_is_induced_map(lattice_z2):
    H = discrete(lattice_z2)
    sq = find_pullback(lattice_z2, "a1e", "b1s")
    w = product_cell(H, sq, sq, "aas", "11s", "bbs")
    assert w == induced_into_pullback(lattice_z2, sq, lattice_z2.compose("aas", sq.p1),
                                      lattice_z2.compose("bbs", sq.p2))


def test_ill_typed_product_cell(lattice_z2):
    H = discrete(lattice_z2)
    sq = find_pullback(lattice_z2, "a1e", "b1e")
    with pytest.raises(TypeMismatch):
        product_cell(H, sq, sq, "bbe", "11e", "aae")


def test_homotopy_product_against_search(id_complex):
    K = id_complex
    cat, _ = chain_homotopies([K])
    f = zero_map(K, K)
    sq = cat.pullback(f, f)
    P = sq.apex
    cat, H = chain_homotopies([K, P])
    z = H.zero(cat.identity(K))
    htpys = list(all_htpys(P, P))
    cells = H.cells(K, K)
    for x in cells:
        for y in cells:
            w = product_cell(H, sq, sq, x, z, y)
            base = induced_into_pullback(cat, sq, cat.compose(x[0], sq.p1), cat.compose(y[0], sq.p2))
            assert H.dom(w) == base
            hits = [(base, t) for t in htpys
                    if H.lwhisk(sq.p1, (base, t)) == H.rwhisk(x, sq.p1)
                    and H.lwhisk(sq.p2, (base, t)) == H.rwhisk(y, sq.p2)]
            assert hits == [w]
            assert H.cod(w) == induced_into_pullback(cat, sq, cat.compose(H.cod(x), sq.p1),
                                                     cat.compose(H.cod(y), sq.p2))
