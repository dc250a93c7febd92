"""End-to-end acceptance checks; each test prints one ``criterion N: PASS/FAIL`` line."""
import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

import fixtures
from oracle import abelianization_order, bracket_identities, category_ok, structure_ok, two_category_ok
from sesqui.cartesian import is_cartesian
from sesqui.cellstruct import TableStructure, materialize, validate_structure
from sesqui.chains import all_htpys
from sesqui.constructions import (arrow_cell, chain_homotopies, codiscrete, discrete, from_action, grp_conjugation,
                                  internal_transformations, is_internal_natural, one_object, xmod_derivations)
from sesqui.errors import DeltaNotCentral, ParseError
from sesqui.fincat import validate_category
from sesqui.groups import catalog, trivial
from sesqui.naturality import commutator, composable_pairs, is_two_category, natural_wrt
from sesqui.naturalize import check_reflection_property, naturalize
from sesqui.pseudocat import build_additive_pseudocategory, build_group_pseudocategory, check_pseudocategory
from sesqui.specio import loads, parse, serialize

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.sesq"))
SIGN = {"e": "0", "r": "0", "rr": "0", "s12": "1", "s13": "1", "s23": "1"}


@contextmanager
def criterion(capsys, n: int):
    passed = False
    try:
        yield
        passed = True
    finally:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if passed else 'FAIL'}")


def test_criterion_1_builders_are_sound(capsys):
    with criterion(capsys, 1):
        start = time.perf_counter()
        Z3 = catalog("Z3")
        builds = [
            discrete(fixtures.diamond()),
            codiscrete(fixtures.diamond()),
            from_action(fixtures.diamond(), lambda a, b: Z3, lambda x, f: f),
            grp_conjugation([catalog("Z2"), catalog("Z4"), catalog("S3")])[1],
            xmod_derivations([fixtures.xmod_zero(), fixtures.xmod_inversion()])[1],
            chain_homotopies([fixtures.id_complex()])[1],
            chain_homotopies([fixtures.z4_complex()])[1],
            internal_transformations([fixtures.internal_z2(), fixtures.internal_arrow()])[1],
            one_object(trivial(), catalog("Z2")),
            one_object(trivial(), catalog("S3")),
            fixtures.z2_cells(),
        ]
        bad = [H for H in builds if not validate_structure(H).ok]
        elapsed = time.perf_counter() - start
        assert not bad
        assert elapsed < 10.0, f"{elapsed:.1f}s"


def _mutated_tables(T: TableStructure, rng: random.Random):
    for _ in range(50):
        table = rng.choice(["composition", "vsums", "lwhisks", "rwhisks"])
        if table == "composition":
            comp = T.base.composition
            key = rng.choice(sorted(comp))
            base = T.base.replace(composition={**comp, key: rng.choice(sorted(T.base.morphism_types))})
            yield T.replace(base=base)
        else:
            entries = getattr(T, table)
            key = rng.choice(sorted(entries))
            arg = "vsum" if table == "vsums" else table[:-1]
            yield T.replace(**{arg: {**entries, key: rng.choice(sorted(T.cell_types))}})


def test_criterion_2_mutations_are_detected(capsys):
    with criterion(capsys, 2):
        rng = random.Random(2)
        broken = caught = 0
        structures = [fixtures.z2_cells(), fixtures.s3_table(), materialize(codiscrete(fixtures.bz2())),
                      materialize(discrete(fixtures.diamond()))]
        for T in structures:
            for bad in _mutated_tables(T, rng):
                if structure_ok(bad) and category_ok(bad.base):
                    continue
                broken += 1
                rep = validate_category(bad.base)
                if rep.ok:
                    rep = validate_structure(bad)
                caught += not rep.ok
        for cat in (fixtures.terminal(), fixtures.poset(3), fixtures.diamond(), fixtures.bz2()):
            for _ in range(50):
                key = rng.choice(sorted(cat.composition))
                bad = cat.replace(composition={**cat.composition, key: rng.choice(sorted(cat.morphism_types))})
                if category_ok(bad):
                    continue
                broken += 1
                caught += not validate_category(bad).ok
        assert broken > 0
        assert caught == broken, f"{caught}/{broken}"


def test_criterion_3_two_category_iff_naturality(capsys):
    with criterion(capsys, 3):
        enumerated = [fixtures.z2_cells(), fixtures.s3_cells(), fixtures.group_cells("Q8"),
                      discrete(fixtures.diamond()), codiscrete(fixtures.diamond()),
                      materialize(codiscrete(fixtures.bz2())),
                      chain_homotopies([fixtures.id_complex()])[1],
                      grp_conjugation([catalog("Z2")])[1],
                      internal_transformations([fixtures.internal_z2()])[1]]
        for H in enumerated:
            exhaustive = all(natural_wrt(H, x, z) for x, z in composable_pairs(H))
            assert is_two_category(H) == exhaustive
            if isinstance(H, TableStructure):
                assert exhaustive == two_category_ok(H)


def test_criterion_4_internal_naturality(capsys):
    with criterion(capsys, 4):
        tiny = [fixtures.internal_z2(), fixtures.internal_arrow()]
        cat, H = internal_transformations(tiny)
        probes = list(H.all_cells())
        for A in tiny:
            ac = arrow_cell(H, A)
            for b in cat.objects:
                for t in H.cells(A, b):
                    nat = is_internal_natural(t)
                    assert nat == natural_wrt(H, t, ac)
                    if nat:
                        assert all(natural_wrt(H, t, z) for z in probes if H.pair(z)[1] == A)


def test_criterion_5_commutator_closed_form(capsys):
    with criterion(capsys, 5):
        K = fixtures.id_complex()
        cat, H = chain_homotopies([K])
        nonzero = 0
        pairs = list(composable_pairs(H))
        assert len(pairs) == len(cat.hom(K, K)) ** 2 * len(list(all_htpys(K, K))) ** 2
        for x, y in pairs:
            t, s = x[1], y[1]
            c = commutator(H, x, y)[1]
            assert c.t2 == -(t.t2 @ s.t1 @ K.d1)
            assert c.t1 == K.d2 @ t.t2 @ s.t1
            nonzero += not c.is_zero()
        assert nonzero > 0


def test_criterion_6_naturalization(capsys):
    with criterion(capsys, 6):
        for name in ("Z2", "S3", "D4", "Q8"):
            N, _ = naturalize(fixtures.group_cells(name))
            assert len(list(N.all_cells())) == abelianization_order(catalog(name))
        H = fixtures.s3_cells()
        Z2 = one_object(trivial(), catalog("Z2"))
        assert check_reflection_property(H, Z2, {x: (SIGN[x[0]], x[1]) for x in H.all_cells()})


def test_criterion_7_cartesian(capsys):
    with criterion(capsys, 7):
        cat = fixtures.times_bz2(fixtures.diamond())
        assert is_cartesian(discrete(cat)).ok
        assert is_cartesian(codiscrete(cat)).ok
        T = materialize(codiscrete(cat))
        victim = next(x for x in T.cells("0", "0") if not x.startswith("z_"))
        rep = is_cartesian(T.without_cell(victim))
        assert not rep.ok
        assert any(f.axiom == "mediator.exists" and f.witnesses for f in rep.findings)


def test_criterion_8_degenerate_pseudocategories(capsys):
    with criterion(capsys, 8):
        H, data = fixtures.with_zero_cells(*fixtures.z2_groupoid())
        for mode in ("natural", "non_natural"):
            assert check_pseudocategory(H, data, mode).ok
        for build in (fixtures.z2_groupoid, fixtures.unital_magma):
            H, data = fixtures.with_unique_cells(*build())
            for mode in ("natural", "non_natural"):
                assert check_pseudocategory(H, data, mode).ok
        H, data = fixtures.with_zero_cells(*fixtures.unital_magma())
        pent = check_pseudocategory(H, data, "non_natural").by_kind("pentagon")
        assert pent and pent[0].witnesses


def test_criterion_9_group_pseudocategory(capsys):
    with criterion(capsys, 9):
        cat, H, data = build_group_pseudocategory(fixtures.xmod_inversion(), "1")
        assert check_pseudocategory(H, data, "non_natural").ok
        with pytest.raises(DeltaNotCentral):
            build_group_pseudocategory(fixtures.xmod_s3_over_trivial(), "s12")


def test_criterion_10_additive_pentagon(capsys):
    with criterion(capsys, 10):
        for seed in range(20):
            rng = random.Random(10_000 + seed)
            A, B, h, lam, rho, eta = fixtures.random_additive((2, 3)[seed % 2], rng)
            cat, H, data = build_additive_pseudocategory(A, B, h, lam, rho, eta)
            rep = check_pseudocategory(H, data, "non_natural")
            assert (not rep.by_kind("pentagon")) == all(bracket_identities(A, B, h, lam, rho, eta))
            if not rep.by_kind("eq_a5"):
                assert rep.ok


def test_criterion_11_dsl(capsys):
    with criterion(capsys, 11):
        assert CORPUS
        for path in CORPUS:
            text = path.read_text()
            assert serialize(parse(text)) == text
        rng = random.Random(11)
        alphabet = b"{}:.=+>-;# \n\tabcdefxyz019_" + bytes(range(256))
        for i in range(10_000):
            n = rng.randint(0, 120)
            data = bytes(rng.choice(alphabet) for _ in range(n))
            try:
                loads(data)
            except ParseError as exc:
                assert exc.diagnostics
