import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import fixtures
from oracle import noncommuting_pairs
from sesqui.cli import main, run
from sesqui.groups import catalog
from sesqui.naturalize import naturalize
from sesqui.specio import loads, parse, serialize

CORPUS = Path(__file__).parent / "corpus"


def sesq(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_check_ok():
    res = sesq("check", CORPUS / "z2_cells.sesq")
    assert res.exit_code == 0, res.output


def test_run_returns_status():
    assert run(["check", str(CORPUS / "z2_cells.sesq")]) == 0
    assert run(["check", str(CORPUS / "missing.sesq")]) == 2


def test_two_category_counts_failing_pairs():
    res = sesq("two-category", CORPUS / "s3_one_object.sesq")
    assert res.exit_code == 1
    assert f"failing pairs: {noncommuting_pairs(catalog('S3'))}" in res.output
    assert "failing pairs: 18" in res.output


def test_two_category_ok_for_z2():
    res = sesq("two-category", CORPUS / "z2_cells.sesq")
    assert res.exit_code == 0 and "failing pairs: 0" in res.output


def test_commutators_listed():
    res = sesq("commutators", CORPUS / "s3_one_object.sesq")
    assert res.exit_code == 1
    assert "18 nonzero commutators" in res.output


def test_natural_single_cell():
    assert sesq("natural", CORPUS / "z2_cells.sesq", "--cell", "u").exit_code == 0
    assert sesq("natural", CORPUS / "s3_one_object.sesq", "--cell", "r").exit_code != 0


def test_pseudocat_modes():
    res = sesq("pseudocat", CORPUS / "grp_z3.sesq", "--mode", "non-natural")
    assert res.exit_code == 0, res.output
    res = sesq("pseudocat", CORPUS / "grp_z3.sesq", "--mode", "non-natural", "--association", "right")
    assert res.exit_code == 0
    assert sesq("pseudocat", CORPUS / "z2_cells.sesq").exit_code == 2


def test_cartesian_ok():
    assert sesq("cartesian", CORPUS / "codiscrete_lattice.sesq").exit_code == 0


def test_json_lines_is_deterministic():
    args = ("--format", "json-lines", "two-category", CORPUS / "s3_one_object.sesq")
    first, second = sesq(*args), sesq(*args)
    assert first.exit_code == 1
    assert first.output == second.output
    lines = first.output.splitlines()
    assert len(lines) == 18
    assert all(json.loads(line)["kind"] == "naturality" for line in lines)


def test_max_findings_truncates():
    res = sesq("--format", "json-lines", "--max-findings", "3", "two-category", CORPUS / "s3_one_object.sesq")
    assert len(res.output.splitlines()) == 3


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.sesq"
    bad.write_text("category {\n object A\n morphism f : A -> B\n}\n")
    res = sesq("check", bad)
    assert res.exit_code == 2
    assert "3:" in res.output


def test_naturalize_writes_canonical_quotient(tmp_path):
    src = tmp_path / "s3.sesq"
    src.write_text(serialize(fixtures.s3_table()))
    dst = tmp_path / "q.sesq"
    res = sesq("naturalize", src, "-o", dst)
    assert res.exit_code == 0
    text = dst.read_text()
    assert text == serialize(naturalize(loads(src.read_text()).structure)[0])
    assert sum(line.startswith("  cell ") for line in text.splitlines()) == 2
    assert sesq("two-category", dst).exit_code == 0


def test_plot_option_writes_png(tmp_path):
    png = tmp_path / "heat.png"
    res = sesq("two-category", CORPUS / "s3_one_object.sesq", "--plot", png)
    assert res.exit_code == 1
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


@pytest.mark.parametrize("args", [
    ("conjugation", "Z2", "S3"),
    ("derivations", "zero:Z2:Z2", "inv:Z3:Z2"),
    ("homotopies", "K:2:1,1,1:1:0"),
    ("internal", "group:Z2", "poset:2"),
    ("group-pseudocat", "inv:Z3:Z2", "0"),
    ("additive-pseudocat", "--mod", "3", "--seed", "4"),
])
def test_build_output_loads(args, tmp_path):
    out = tmp_path / "b.sesq"
    res = sesq("build", *args, "-o", out)
    assert res.exit_code == 0, res.output
    text = out.read_text()
    assert serialize(parse(text)) == text
    loads(text)
    assert sesq("check", out).exit_code == 0


def test_build_rejects_bad_arguments():
    assert sesq("build", "conjugation").exit_code == 2
    assert sesq("build", "conjugation", "Nope").exit_code == 2
    assert sesq("build", "group-pseudocat", "id:Z2", "1").exit_code == 2
