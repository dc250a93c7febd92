import pytest
from hypothesis import given, strategies as st

from fixtures import diamond, poset, terminal
from oracle import category_ok
from sesqui.errors import ConeMismatch, NoPullback, NotComposable
from sesqui.extensional import FinSet, Fn, SetCategory
from sesqui.fincat import TableCategory, compose, find_pullback, induced_into_pullback, validate_category


def test_terminal_category_is_valid():
    assert validate_category(terminal()).ok


def test_rewired_composite_is_reported():
    cat = terminal().replace(composition={("idA", "idA"): "bogus"})
    rep = validate_category(cat)
    assert not rep.ok
    assert {"typing.reference", "identity.left", "identity.right"} <= rep.axioms()


def test_extensional_category_spot_check():
    pt = FinSet("pt", ("*",))
    z2 = FinSet("Z2", (0, 1))
    z2sq = FinSet("Z2^2", ((0, 0), (0, 1), (1, 0), (1, 1)))
    cat = SetCategory([pt, z2, z2sq])
    mors = [Fn.of(z2, pt, lambda _: "*"), Fn.of(z2sq, z2, lambda p: p[0]), Fn.of(z2, z2sq, lambda a: (a, a)),
            Fn.of(z2, z2, lambda a: 1 - a)]
    assert validate_category(cat, morphisms=mors).ok


def test_compose_identity_and_declared_entry():
    cat = poset(3)
    assert compose(cat, "11", "01") == "01"
    assert compose(cat, "12", "01") == "02"
    with pytest.raises(NotComposable):
        compose(cat, "01", "12")


def test_pullback_of_identities_is_trivial():
    cat = diamond()
    sq = find_pullback(cat, "11", "11")
    assert sq.apex == "1" and sq.p1 == sq.p2 == "11"


def test_pullback_is_meet_in_lattice():
    sq = find_pullback(diamond(), "a1", "b1")
    assert sq.apex == "0" and (sq.p1, sq.p2) == ("0a", "0b")


def test_pullback_is_deterministic():
    cat = diamond()
    assert find_pullback(cat, "a1", "b1") == find_pullback(cat, "a1", "b1")


def test_missing_pullback():
    # two parallel arrows into one object with nothing above them
    cat = TableCategory(["a", "b", "c"], {"ia": ("a", "a"), "ib": ("b", "b"), "ic": ("c", "c"),
                                          "f": ("a", "c"), "g": ("b", "c")},
                        {"a": "ia", "b": "ib", "c": "ic"},
                        {("ia", "ia"): "ia", ("ib", "ib"): "ib", ("ic", "ic"): "ic", ("f", "ia"): "f",
                         ("ic", "f"): "f", ("g", "ib"): "g", ("ic", "g"): "g"})
    assert validate_category(cat).ok
    with pytest.raises(NoPullback):
        find_pullback(cat, "f", "g")


def test_extensional_product_over_point():
    pt = FinSet("pt", ("*",))
    z2 = FinSet("Z2", (0, 1))
    cat = SetCategory([pt, z2])
    bang = Fn.of(z2, pt, lambda _: "*")
    sq = find_pullback(cat, bang, bang)
    assert len(sq.apex.elements) == 4
    one = cat.identity(z2)
    diag = induced_into_pullback(cat, sq, one, one)
    assert [diag(a) for a in z2.elements] == [(0, 0), (1, 1)]


def test_induced_at_apex_is_identity():
    cat = diamond()
    sq = find_pullback(cat, "a1", "b1")
    assert induced_into_pullback(cat, sq, sq.p1, sq.p2) == cat.identity(sq.apex)


def test_mismatched_cone():
    cat = diamond()
    sq = find_pullback(cat, "a1", "b1")
    with pytest.raises(ConeMismatch):
        induced_into_pullback(cat, sq, "aa", "0b")


def test_mediators_unique_and_natural():
    cat = diamond()
    for f in cat.morphisms():
        for g in cat.morphisms():
            if cat.target(f) != cat.target(g):
                continue
            sq = find_pullback(cat, f, g)
            for d in cat.objects:
                for x in cat.hom(d, cat.source(f)):
                    for y in cat.hom(d, cat.source(g)):
                        if compose(cat, f, x) != compose(cat, g, y):
                            continue
                        u = induced_into_pullback(cat, sq, x, y)
                        hits = [v for v in cat.hom(d, sq.apex)
                                if compose(cat, sq.p1, v) == x and compose(cat, sq.p2, v) == y]
                        assert hits == [u]
                        for d2 in cat.objects:
                            for h in cat.hom(d2, d):
                                assert compose(cat, u, h) == induced_into_pullback(
                                    cat, sq, compose(cat, x, h), compose(cat, y, h))


@given(st.integers(1, 5))
def test_poset_categories_are_valid(n):
    cat = poset(n)
    assert validate_category(cat).ok == category_ok(cat) is True


@given(st.data())
def test_validator_agrees_with_oracle_on_mutations(data):
    cat = poset(3)
    key = data.draw(st.sampled_from(sorted(cat.composition)))
    value = data.draw(st.sampled_from(sorted(cat.morphism_types)))
    bad = cat.replace(composition={**cat.composition, key: value})
    assert validate_category(bad).ok == category_ok(bad)
