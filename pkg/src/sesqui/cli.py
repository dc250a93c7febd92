"""``sesq``: command-line checks and builders for 2-cell structures.

Exit status is 0 when a check finds nothing, 1 when it reports violations
and 2 on parse or usage errors. ``SESQ_COLOR=never`` disables colour.
"""
from __future__ import annotations

import os
import random
import sys

import click

from .cartesian import is_cartesian
from .cellstruct import CellStructure, TableStructure, materialize, validate_structure
from .chains import ChainComplex, ChainMap, Htpy, htpy_shapes, is_chain_map, lwhisk_htpy
from .errors import NotInvertible, ParseError, SesquiError
from .fincat import validate_category
from .groups import CrossedModulePresentation, catalog
from .internal import InternalCategory
from .modmat import Mat, kernel
from .naturality import commutator, composable_pairs, natural_wrt
from .naturalize import naturalize
from .pseudocat import EQUATIONS, check_pseudocategory
from .report import ValidationReport
from .specio import (SpecDocument, complex_block, derive_block, htpy_block, intcat_block, map_block, read,
                     serialize, xmod_block)


class Output:
    def __init__(self, fmt: str, limit: int):
        self.fmt = fmt
        self.limit = limit
        setting = os.environ.get("SESQ_COLOR", "auto").lower()
        self.color = False if setting == "never" else None

    def line(self, text: str = "", err: bool = False) -> None:
        if self.fmt == "text" or err:
            click.echo(text, err=err, color=self.color)

    def verdict(self, ok: bool, text: str) -> None:
        word = click.style("ok" if ok else "FAIL", fg="green" if ok else "red", bold=True)
        self.line(f"{word} {text}")

    def report(self, rep: ValidationReport) -> None:
        shown = rep.findings[: self.limit]
        if self.fmt == "json-lines":
            if shown:
                click.echo(rep.json_lines(self.limit))
            return
        for f in shown:
            self.line(f"  {f}")
        if len(rep) > len(shown):
            self.line(f"  ... {len(rep) - len(shown)} more (raise --max-findings to see them)")


def _load(path: str):
    try:
        return read(path)
    except ParseError as exc:
        for d in exc.diagnostics:
            click.echo(f"{path}:{d}", err=True)
        sys.exit(2)
    except OSError as exc:
        click.echo(f"{path}: {exc.strerror}", err=True)
        sys.exit(2)


def _structure(ws, path: str) -> CellStructure:
    if ws.structure is None:
        click.echo(f"{path}: no 2-cell structure (add a cells block or a derive directive)", err=True)
        sys.exit(2)
    return ws.structure


def _table(H: CellStructure) -> TableStructure:
    return H if isinstance(H, TableStructure) else materialize(H)


def _finish(out: Output, rep: ValidationReport) -> None:
    out.report(rep)
    sys.exit(0 if rep.ok else 1)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json-lines"]), default="text",
              help="Plain text or one JSON finding per line.")
@click.option("--max-findings", type=click.IntRange(min=0), default=100, show_default=True)
@click.pass_context
def main(ctx, fmt, max_findings):
    """Check and build 2-cell structures described in .sesq files."""
    ctx.obj = Output(fmt, max_findings)


@main.command()
@click.argument("path", type=click.Path())
@click.pass_obj
def check(out: Output, path):
    """Validate the category and the 2-cell structure."""
    ws = _load(path)
    rep = ValidationReport()
    if ws.category is not None:
        rep.extend(validate_category(ws.category))
    if ws.structure is not None:
        try:
            rep.extend(validate_structure(ws.structure))
        except SesquiError as exc:
            # lazy structures (pseudocategory files) cannot be enumerated; only the base is checked
            out.line(f"note: structure skipped: {exc}", err=True)
    out.verdict(rep.ok, f"{path}: {len(rep)} findings")
    _finish(out, rep)


def _plot(H, path, labels=None):
    from .plotting import naturality_heatmap
    naturality_heatmap(H, path, labels=labels)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--cell", "cell", required=True, help="Id of the cell to test.")
@click.pass_obj
def natural(out: Output, path, cell):
    """Whether one cell is natural with respect to every composable cell."""
    T = _table(_structure(_load(path), path))
    if cell not in T.cell_types:
        click.echo(f"{path}: unknown cell {cell!r}", err=True)
        sys.exit(2)
    rep = ValidationReport()
    a = T.pair(cell)[0]
    for o in T.base.objects:
        for z in T.cells(o, a):
            if not natural_wrt(T, cell, z):
                rep.add("naturality", "natural_wrt", cell, z)
    first = f"; first counterexample z = {rep.findings[0].witnesses[1]}" if rep.findings else ""
    out.verdict(rep.ok, f"{cell} is {'' if rep.ok else 'not '}natural{first}")
    _finish(out, rep)


@main.command("two-category")
@click.argument("path", type=click.Path())
@click.option("--plot", "plot", type=click.Path(), default=None, help="Write a naturality heatmap (PNG).")
@click.pass_obj
def two_category(out: Output, path, plot):
    """Whether every composable pair satisfies the naturality condition."""
    H = _structure(_load(path), path)
    rep = ValidationReport()
    for x, z in composable_pairs(H):
        if not natural_wrt(H, x, z):
            rep.add("naturality", "natural_wrt", x, z)
    out.verdict(rep.ok, "2-category" if rep.ok else "not a 2-category")
    out.line(f"failing pairs: {len(rep)}")
    if plot:
        _plot(H, plot)
        out.line(f"heatmap written to {plot}")
    _finish(out, rep)


@main.command()
@click.argument("path", type=click.Path())
@click.pass_obj
def commutators(out: Output, path):
    """List every composable pair with a nonzero commutator."""
    T = _table(_structure(_load(path), path))
    rep = ValidationReport()
    rows = []
    for x, y in composable_pairs(T):
        try:
            c = commutator(T, x, y)
        except NotInvertible as exc:
            rep.add("commutator", "undefined", x, y, message=str(exc))
            continue
        if c != T.zero(T.cod(c)):
            rows.append((x, y, c))
            rep.add("commutator", "nonzero", x, y, c)
    if rows:
        out.line(f"{'x':>10} {'y':>10}  [x,y]")
        for x, y, c in rows[: out.limit]:
            out.line(f"{x:>10} {y:>10}  {c}")
    out.verdict(rep.ok, f"{len(rows)} nonzero commutators")
    if out.fmt == "json-lines":
        out.report(rep)
    sys.exit(0 if rep.ok else 1)


@main.command("naturalize")
@click.argument("path", type=click.Path())
@click.option("-o", "output", type=click.Path(), required=True, help="Where to write the quotient.")
@click.option("--plot", "plot", type=click.Path(), default=None, help="Heatmap of the input structure.")
@click.pass_obj
def naturalize_cmd(out: Output, path, output, plot):
    """Write the naturalization of the structure in canonical form."""
    H = _structure(_load(path), path)
    Hn, phi = naturalize(H)
    text = serialize(Hn)
    with open(output, "w", newline="\n") as fh:
        fh.write(text)
    classes = len(set(phi.values()))
    out.verdict(True, f"{len(phi)} cells -> {classes} classes, written to {output}")
    if plot:
        _plot(H, plot)
    sys.exit(0)


@main.command()
@click.argument("path", type=click.Path())
@click.pass_obj
def cartesian(out: Output, path):
    """Check that every H(D, -) preserves the pullbacks of the base."""
    H = _structure(_load(path), path)
    rep = is_cartesian(H)
    out.verdict(rep.ok, "cartesian" if rep.ok else "not cartesian")
    _finish(out, rep)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--mode", type=click.Choice(["natural", "non-natural"]), default="non-natural", show_default=True)
@click.option("--association", type=click.Choice(["left", "right"]), default="left", show_default=True)
@click.pass_obj
def pseudocat(out: Output, path, mode, association):
    """Evaluate the coherence equations of the pseudocategory in the file."""
    ws = _load(path)
    if ws.pseudocat is None:
        click.echo(f"{path}: no pseudocat block or pseudocategory builder", err=True)
        sys.exit(2)
    rep = check_pseudocategory(ws.structure, ws.pseudocat, mode, association=association)
    for kind in EQUATIONS[mode.replace("-", "_")]:
        n = len(rep.by_kind(kind))
        out.line(f"{kind:>16}: {'ok' if n == 0 else f'{n} findings'}")
    out.verdict(rep.ok, f"pseudocategory ({mode})")
    _finish(out, rep)


# -- build ------------------------------------------------------------------------

def _xmod(desc: str) -> CrossedModulePresentation:
    """``zero:X:B`` (d = 0, trivial action), ``inv:X:B`` (d = 0, non-units of B
    invert the abelian X) or ``id:G`` (identity with conjugation)."""
    parts = desc.split(":")
    try:
        if parts[0] == "id" and len(parts) == 2:
            G = catalog(parts[1])
            return CrossedModulePresentation.build(f"id_{G.name}", G, G, lambda x: x, G.conj)
        if parts[0] in ("zero", "inv") and len(parts) == 3:
            X, B = catalog(parts[1]), catalog(parts[2])
            act = None
            if parts[0] == "inv":
                act = lambda b, x: x if b == B.unit else X.inv(x)  # noqa: E731
            return CrossedModulePresentation.build(f"{parts[0]}_{X.name}_{B.name}", X, B,
                                                   lambda x: B.unit, act)
    except KeyError as exc:
        raise click.BadParameter(str(exc.args[0]))
    raise click.BadParameter(f"unknown crossed module {desc!r}; use zero:X:B, inv:X:B or id:G")


def _matrix(text: str, rows: int, cols: int, mod: int) -> Mat:
    if text in ("", "-"):
        entries = []
    else:
        entries = [[int(v) for v in r.split(",")] for r in text.split("/")]
    if rows * cols == 0:
        entries = [[] for _ in range(rows)]
    return Mat.of(entries, mod, cols=cols)


def _complex(desc: str) -> ChainComplex:
    """``name:p:n2,n1,n0:D2:D1`` with rows split by '/' and entries by ','."""
    try:
        name, p, dims, d2, d1 = desc.split(":")
        mod = int(p)
        n2, n1, n0 = (int(v) for v in dims.split(","))
        cx = ChainComplex(name, mod, (n2, n1, n0), _matrix(d2, n1, n2, mod), _matrix(d1, n0, n1, mod))
    except ValueError as exc:
        raise click.BadParameter(f"{desc!r}: {exc}; expected name:p:n2,n1,n0:D2:D1")
    msgs = cx.check()
    if msgs:
        raise click.BadParameter(f"{desc!r}: {msgs[0]}")
    return cx


def _poset(n: int) -> InternalCategory:
    objs = [f"o{i}" for i in range(n)]
    arrows = {f"a{i}{j}": (f"o{i}", f"o{j}") for i in range(n) for j in range(i, n)}
    comp = {(f"a{j}{k}", f"a{i}{j}"): f"a{i}{k}" for i in range(n) for j in range(i, n) for k in range(j, n)}
    return InternalCategory.build(f"P{n}", objs, list(arrows), {a: s for a, (s, _) in arrows.items()},
                                  {a: t for a, (_, t) in arrows.items()}, {o: f"a{i}{i}" for i, o in
                                                                           enumerate(objs)}, comp)


def _intcat(desc: str) -> InternalCategory:
    """``group:G`` (one object) or ``poset:n`` (the chain 0 < 1 < ... < n-1)."""
    kind, _, arg = desc.partition(":")
    try:
        if kind == "group":
            G = catalog(arg)
            els = G.elements
            comp = {(a, b): G.mul(a, b) for a in els for b in els}
            return InternalCategory.build(f"B{G.name}", ["o"], els, {a: "o" for a in els},
                                          {a: "o" for a in els}, {"o": G.unit}, comp)
        if kind == "poset" and 1 <= int(arg) <= 4:
            return _poset(int(arg))
    except (KeyError, ValueError):
        pass
    raise click.BadParameter(f"unknown internal category {desc!r}; use group:G or poset:n (n <= 4)")


def _random_additive(mod: int, seed: int):
    """A random small instance whose homotopies satisfy h t = 0."""
    rng = random.Random(seed)

    def mat(r, c):
        return Mat(r, c, tuple(rng.randrange(mod) for _ in range(r * c)), mod)

    def cx(name):
        while True:
            dims = tuple(rng.randint(1, 2) for _ in range(3))
            d2, d1 = mat(dims[1], dims[0]), mat(dims[2], dims[1])
            if (d1 @ d2).is_zero():
                return ChainComplex(name, mod, dims, d2, d1)

    A, B = cx("A"), cx("B")
    h = ChainMap(A, B, tuple(Mat.zeros(B.dims[k], A.dims[k], mod) for k in range(3)))
    for _ in range(500):
        f = ChainMap(A, B, tuple(mat(B.dims[k], A.dims[k]) for k in range(3)))
        if is_chain_map(f):
            h = f
            break

    def htpy(src):
        comps = []
        for k, (rows, cols) in zip((0, 1), htpy_shapes(src, A)):
            K = kernel(h.comps[k])
            comps.append(K @ mat(K.cols, cols) if K.cols and cols else Mat.zeros(rows, cols, mod))
        t = Htpy(*comps)
        assert lwhisk_htpy(h, t).is_zero()
        return t

    return A, B, h, htpy(A), htpy(A), htpy(B)


@main.command()
@click.argument("kind", type=click.Choice(["conjugation", "derivations", "homotopies", "internal",
                                           "group-pseudocat", "additive-pseudocat"]))
@click.argument("args", nargs=-1)
@click.option("-o", "output", type=click.Path(), default=None, help="Output file (default: stdout).")
@click.option("--mod", "mod", type=int, default=2, show_default=True, help="Modulus for additive-pseudocat.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for additive-pseudocat.")
def build(kind, args, output, mod, seed):
    """Emit a .sesq file for one of the builders.

    \b
    conjugation G...          catalog groups (Z1..Z8, S3, D4, Q8, Klein)
    derivations XM...         zero:X:B, inv:X:B or id:G
    homotopies CX...          name:p:n2,n1,n0:D2:D1
    internal IC...            group:G or poset:n
    group-pseudocat XM DELTA  crossed module and an element of its source
    additive-pseudocat        random instance from --mod and --seed
    """
    blocks = []
    try:
        if kind == "conjugation":
            if not args:
                raise click.UsageError("conjugation needs at least one group")
            for a in args:
                catalog(a)
            blocks.append(derive_block("conjugation", *args))
        elif kind == "derivations":
            xms = [_xmod(a) for a in args]
            if not xms:
                raise click.UsageError("derivations needs at least one crossed module")
            blocks += [xmod_block(x) for x in xms]
            blocks.append(derive_block("derivations", *(x.name for x in xms)))
        elif kind == "homotopies":
            cxs = [_complex(a) for a in args]
            if not cxs:
                raise click.UsageError("homotopies needs at least one complex")
            blocks += [complex_block(c) for c in cxs]
            blocks.append(derive_block("homotopies", *(c.name for c in cxs)))
        elif kind == "internal":
            ics = [_intcat(a) for a in args]
            if not ics:
                raise click.UsageError("internal needs at least one internal category")
            blocks += [intcat_block(c) for c in ics]
            blocks.append(derive_block("internal", *(c.name for c in ics)))
        elif kind == "group-pseudocat":
            if len(args) != 2:
                raise click.UsageError("group-pseudocat takes a crossed module and an element")
            xm = _xmod(args[0])
            from .pseudocat import build_group_pseudocategory
            build_group_pseudocategory(xm, args[1])
            blocks += [xmod_block(xm), derive_block("group_pseudocat", xm.name, args[1])]
        else:
            A, B, h, lam, rho, eta = _random_additive(mod, seed)
            blocks += [complex_block(A), complex_block(B), map_block("h", h),
                       htpy_block("lam", A, A, lam), htpy_block("rho", A, A, rho), htpy_block("eta", B, A, eta),
                       derive_block("additive_pseudocat", "A", "B", "h", "lam", "rho", "eta")]
    except click.ClickException:
        raise
    except (SesquiError, ValueError, KeyError) as exc:
        click.echo(f"build {kind}: {type(exc).__name__}: {exc}", err=True)
        sys.exit(2)
    text = serialize(SpecDocument(blocks))
    if output:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def run(argv=None) -> int:
    """Run the CLI on ``argv`` and return the exit status."""
    try:
        main.main(args=argv, prog_name="sesq", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(run())
