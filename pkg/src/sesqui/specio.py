"""The ``.sesq`` text format.

A file is a sequence of blocks, one declaration per line, ``#`` comments::

    category {
      object A
      morphism f : A -> A
      id A = idA
      compose f . f = idA
    }
    cells {
      cell u : f => f
      zero f = u
      plus u + u = u
      lwhisk f . u = u
      rwhisk u . f = u
    }
    derive discrete

Named blocks (``group``, ``xmod``, ``complex``, ``map``, ``htpy``,
``intcat``) hold presentations used by ``derive`` directives, which call the
builders in :mod:`sesqui.constructions` and :mod:`sesqui.pseudocat`.

:func:`parse` checks syntax and names; :func:`load` turns a document into
live objects; :func:`serialize` writes the canonical form (blocks in a fixed
order, declarations sorted, single spaces, LF endings).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .cellstruct import CellStructure, TableStructure, materialize
from .chains import ChainComplex, ChainMap, Htpy, _is_prime, is_chain_map
from .constructions import (chain_homotopies, codiscrete, discrete, grp_conjugation, internal_transformations,
                            one_object, xmod_derivations)
from .errors import ParseError, ResolveError, SesquiError
from .extensional import Group
from .fincat import Category, PullbackSquare, TableCategory
from .groups import CrossedModulePresentation, catalog
from .internal import InternalCategory
from .modmat import Mat

CATALOG_LIMIT = 64
IDENT = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int = 1


@dataclass(frozen=True)
class Diagnostic:
    span: Span
    message: str

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.col}: {self.message}"


@dataclass
class Decl:
    kind: str
    args: tuple
    span: Span | None = None


@dataclass
class Block:
    kind: str
    name: str | None
    decls: list[Decl] = field(default_factory=list)
    span: Span | None = None
    args: tuple = ()


@dataclass
class SpecDocument:
    blocks: list[Block] = field(default_factory=list)

    def find(self, kind: str) -> list[Block]:
        return [b for b in self.blocks if b.kind == kind]


# -- grammar ---------------------------------------------------------------------
# Pattern items: "I" an identifier slot, "R" a row list (identifiers and ';'
# up to the end of the line), anything else a literal token.

_TRIPLE = ("=", "(", "I", ",", "I", ",", "I", ")")
PATTERNS: dict[str, dict[str, tuple]] = {
    "category": {
        "object": ("I",),
        "morphism": ("I", ":", "I", "->", "I"),
        "id": ("I", "=", "I"),
        "compose": ("I", ".", "I", "=", "I"),
    },
    "cells": {
        "cell": ("I", ":", "I", "=>", "I"),
        "zero": ("I", "=", "I"),
        "plus": ("I", "+", "I", "=", "I"),
        "lwhisk": ("I", ".", "I", "=", "I"),
        "rwhisk": ("I", ".", "I", "=", "I"),
    },
    "group": {
        "elem": ("I",),
        "mul": ("I", "*", "I", "=", "I"),
    },
    "xmod": {
        "source": ("I",),
        "target": ("I",),
        "diff": ("I", "->", "I"),
        "act": ("I", ".", "I", "=", "I"),
    },
    "complex": {
        "modulus": ("I",),
        "dims": ("I", "I", "I"),
        "d2": ("=", "R"),
        "d1": ("=", "R"),
    },
    "map": {
        "source": ("I",),
        "target": ("I",),
        "c2": ("=", "R"),
        "c1": ("=", "R"),
        "c0": ("=", "R"),
    },
    "htpy": {
        "source": ("I",),
        "target": ("I",),
        "t2": ("=", "R"),
        "t1": ("=", "R"),
    },
    "intcat": {
        "object": ("I",),
        "arrow": ("I", ":", "I", "->", "I"),
        "unit": ("I", "=", "I"),
        "compose": ("I", ".", "I", "=", "I"),
    },
    "pseudocat": {
        "C0": ("=", "I"), "C1": ("=", "I"),
        "d": ("=", "I"), "c": ("=", "I"), "e": ("=", "I"), "m": ("=", "I"),
        "C2": _TRIPLE, "C3": _TRIPLE, "C4": _TRIPLE, "C4r": _TRIPLE,
        "alpha": ("=", "I"), "lambda": ("=", "I"), "rho": ("=", "I"),
    },
}
NAMED = {"group", "xmod", "complex", "map", "htpy", "intcat"}
BLOCK_ORDER = ["group", "xmod", "complex", "map", "htpy", "intcat", "category", "cells", "pseudocat", "derive"]
# how many leading arguments identify a declaration; None means once per block
KEYS = {"object": 1, "morphism": 1, "id": 1, "compose": 2, "cell": 1, "zero": 1, "plus": 2,
        "lwhisk": 2, "rwhisk": 2, "elem": 1, "mul": 2, "diff": 1, "act": 2, "arrow": 1, "unit": 1}
BUILDERS = {
    "discrete": (), "codiscrete": (),
    "conjugation": ("group+",),
    "one_object": ("group", "group"),
    "derivations": ("xmod+",),
    "homotopies": ("complex+",),
    "internal": ("intcat+",),
    "group_pseudocat": ("xmod", "element"),
    "additive_pseudocat": ("complex", "complex", "map", "htpy", "htpy", "htpy"),
}


# -- tokens ----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<sym>->|=>|[{}:=.+*(),;])
  | (?P<id>[A-Za-z0-9_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


def _fail(span: Span, message: str, cls=ParseError):
    raise cls([Diagnostic(span, message)])


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            _fail(Span(line, col), f"unexpected character {text[pos]!r}")
        kind, s = mt.lastgroup, mt.group()
        if kind == "nl":
            out.append(Token("nl", s, Span(line, col)))
            line, col = line + 1, 1
        else:
            if kind in ("sym", "id"):
                out.append(Token(kind, s, Span(line, col, len(s))))
            col += len(s)
        pos = mt.end()
    out.append(Token("eof", "", Span(line, col, 0)))
    return out


# -- parser ----------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        if not self.at(kind, text):
            want = what or (repr(text) if text else "an identifier")
            got = "end of input" if self.tok.kind == "eof" else ("end of line" if self.tok.kind == "nl"
                                                                  else repr(self.tok.text))
            _fail(self.tok.span, f"expected {want}, found {got}")
        return self.advance()

    def document(self) -> SpecDocument:
        doc = SpecDocument()
        while not self.at("eof"):
            if self.at("nl"):
                self.advance()
                continue
            head = self.expect("id", what="a block keyword")
            if head.text == "derive":
                doc.blocks.append(self.derive(head))
            elif head.text in PATTERNS:
                doc.blocks.append(self.block(head))
            else:
                _fail(head.span, f"unknown block {head.text!r}; expected one of "
                                 f"{', '.join(BLOCK_ORDER)}")
        return doc

    def derive(self, head: Token) -> Block:
        name = self.expect("id", what="a builder name")
        args = []
        while self.at("id"):
            args.append(self.advance().text)
        if not (self.at("nl") or self.at("eof")):
            _fail(self.tok.span, f"unexpected {self.tok.text!r} in derive directive")
        return Block("derive", name.text, [], head.span, tuple(args))

    def block(self, head: Token) -> Block:
        kind = head.text
        name = None
        if kind in NAMED:
            name = self.expect("id", what=f"a name for the {kind} block").text
        self.expect("sym", "{")
        blk = Block(kind, name, [], head.span)
        while True:
            if self.at("nl"):
                self.advance()
                continue
            if self.at("sym", "}"):
                self.advance()
                break
            if self.at("eof"):
                _fail(self.tok.span, f"unclosed {kind} block opened at line {head.span.line}")
            blk.decls.append(self.decl(kind))
            if self.at("eof"):
                _fail(self.tok.span, f"unclosed {kind} block opened at line {head.span.line}")
            if not (self.at("nl") or self.at("sym", "}")):
                _fail(self.tok.span, f"expected end of line, found {self.tok.text!r}")
        return blk

    def decl(self, kind: str) -> Decl:
        patterns = PATTERNS[kind]
        kw = self.expect("id", what=f"a {kind} declaration")
        if kw.text not in patterns:
            _fail(kw.span, f"unknown {kind} declaration {kw.text!r}; expected one of {', '.join(patterns)}")
        args: list[str] = []
        for item in patterns[kw.text]:
            if item == "I":
                args.append(self.expect("id").text)
            elif item == "R":
                while self.at("id") or self.at("sym", ";"):
                    args.append(self.advance().text)
            else:
                self.expect("sym", item)
        return Decl(kw.text, tuple(args), kw.span)


def parse(text: str | bytes) -> SpecDocument:
    """Parse and name-check a document; raises ParseError or ResolveError."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            before = text[:exc.start]
            line = before.count(b"\n") + 1
            col = exc.start - (before.rfind(b"\n") + 1) + 1
            _fail(Span(line, col), "input is not valid UTF-8")
    doc = _Parser(tokenize(text)).document()
    _Resolver(doc).run()
    return doc


# -- name resolution ---------------------------------------------------------------

def _catalog_group(name: str) -> Group | None:
    if name.startswith("Z") and name[1:].isdigit() and int(name[1:]) > CATALOG_LIMIT:
        return None
    try:
        return catalog(name)
    except KeyError:
        return None


def _int(s: str, span, what: str) -> int:
    if not s.isdigit() or len(s) > 9:
        _fail(span, f"{what} must be a non-negative integer, found {s!r}", ResolveError)
    return int(s)


def _rows(args: tuple, rows: int, cols: int, span, what: str) -> list[list[int]]:
    """Row-major entries separated by ';'; an empty list for an empty matrix."""
    if rows * cols == 0:
        if any(a != ";" for a in args):
            _fail(span, f"{what} is {rows}x{cols} and takes no entries", ResolveError)
        return [[] for _ in range(rows)]
    groups: list[list[int]] = [[]]
    for a in args:
        if a == ";":
            groups.append([])
        else:
            groups[-1].append(_int(a, span, f"entry of {what}"))
    if len(groups) != rows or any(len(r) != cols for r in groups):
        _fail(span, f"{what} must have {rows} rows of {cols} entries", ResolveError)
    return groups


class _Resolver:
    """Checks that every name is declared, ids are unique, and entries are well-typed."""

    def __init__(self, doc: SpecDocument):
        self.doc = doc
        self.named: dict[tuple[str, str], Block] = {}
        self.singletons: dict[str, Block] = {}

    def err(self, span, message):
        _fail(span, message, ResolveError)

    def run(self) -> None:
        for b in self.doc.blocks:
            if b.kind in NAMED:
                if (b.kind, b.name) in self.named:
                    self.err(b.span, f"{b.kind} {b.name!r} is declared twice")
            elif b.kind != "derive" and b.kind in self.singletons:
                self.err(b.span, f"a document has at most one {b.kind} block")
            self._unique(b)
            getattr(self, "_" + b.kind)(b)
            if b.kind in NAMED:
                self.named[(b.kind, b.name)] = b
            else:
                self.singletons.setdefault(b.kind, b)
        drv = self.singletons.get("derive")
        if drv is not None:
            own = drv.name not in ("discrete", "codiscrete")
            for kind in (("category", "cells", "pseudocat") if own else ("cells",)):
                if kind in self.singletons:
                    self.err(self.singletons[kind].span,
                             f"{kind} block conflicts with derive {drv.name}, which supplies it")

    def _unique(self, b: Block) -> None:
        seen = set()
        for d in b.decls:
            n = KEYS.get(d.kind)
            key = (d.kind, d.args[:n]) if n else (d.kind,)
            if key in seen:
                what = " ".join(d.args[:n]) if n else d.kind
                self.err(d.span, f"duplicate {d.kind} declaration for {what!r}")
            seen.add(key)

    # category and cells

    def _category(self, b: Block) -> None:
        objs = {d.args[0] for d in b.decls if d.kind == "object"}
        mors = {}
        for d in b.decls:
            if d.kind == "morphism":
                for o in d.args[1:]:
                    if o not in objs:
                        self.err(d.span, f"unknown object {o!r}")
                mors[d.args[0]] = (d.args[1], d.args[2])
        for d in b.decls:
            if d.kind == "id":
                a, f = d.args
                if a not in objs:
                    self.err(d.span, f"unknown object {a!r}")
                if mors.get(f) != (a, a):
                    self.err(d.span, f"{f!r} is not a declared endomorphism of {a}")
            elif d.kind == "compose":
                for f in d.args:
                    if f not in mors:
                        self.err(d.span, f"unknown morphism {f!r}")
                g, f, _ = d.args
                if mors[g][0] != mors[f][1]:
                    self.err(d.span, f"typing clash: {g} starts at {mors[g][0]} but {f} ends at {mors[f][1]}")
        self.objects, self.morphisms = objs, mors

    def _cells(self, b: Block) -> None:
        if "category" not in self.singletons:
            self.err(b.span, "cells block needs a category block before it")
        mors = self.morphisms
        cells = {}
        for d in b.decls:
            if d.kind == "cell":
                x, f, g = d.args
                for m in (f, g):
                    if m not in mors:
                        self.err(d.span, f"unknown morphism {m!r}")
                if mors[f] != mors[g]:
                    self.err(d.span, f"typing clash: {f} and {g} are not parallel")
                cells[x] = (f, g)
        self.cells = cells

        def cell(d, x):
            if x not in cells:
                self.err(d.span, f"unknown cell {x!r}")
            return cells[x]

        def mor(d, f):
            if f not in mors:
                self.err(d.span, f"unknown morphism {f!r}")
            return mors[f]

        for d in b.decls:
            if d.kind == "zero":
                mor(d, d.args[0])
                cell(d, d.args[1])
            elif d.kind == "plus":
                v, u, w = (cell(d, x) for x in d.args)
                if v[0] != u[1]:
                    self.err(d.span, f"typing clash: dom({d.args[0]}) = {v[0]} but cod({d.args[1]}) = {u[1]}")
            elif d.kind == "lwhisk":
                g, y, w = d.args
                if mor(d, g)[0] != mors[cell(d, y)[0]][1]:
                    self.err(d.span, f"typing clash: {g} cannot act on the left of {y}")
                cell(d, w)
            elif d.kind == "rwhisk":
                x, f, w = d.args
                if mor(d, f)[1] != mors[cell(d, x)[0]][0]:
                    self.err(d.span, f"typing clash: {f} cannot act on the right of {x}")
                cell(d, w)

    # presentations

    def group_elements(self, name: str, span) -> tuple:
        b = self.named.get(("group", name))
        if b is not None:
            return tuple(d.args[0] for d in b.decls if d.kind == "elem")
        g = _catalog_group(name)
        if g is None:
            self.err(span, f"unknown group {name!r}")
        return g.elements

    def _group(self, b: Block) -> None:
        els = {d.args[0] for d in b.decls if d.kind == "elem"}
        for d in b.decls:
            if d.kind == "mul":
                for x in d.args:
                    if x not in els:
                        self.err(d.span, f"{x!r} is not an element of {b.name}")

    def _xmod(self, b: Block) -> None:
        src = next((d for d in b.decls if d.kind == "source"), None)
        tgt = next((d for d in b.decls if d.kind == "target"), None)
        if src is None or tgt is None:
            self.err(b.span, f"xmod {b.name} needs a source and a target")
        X = set(self.group_elements(src.args[0], src.span))
        B = set(self.group_elements(tgt.args[0], tgt.span))
        for d in b.decls:
            if d.kind == "diff":
                if d.args[0] not in X or d.args[1] not in B:
                    self.err(d.span, f"diff {d.args[0]} -> {d.args[1]} leaves {src.args[0]} -> {tgt.args[0]}")
            elif d.kind == "act":
                bb, x, y = d.args
                if bb not in B or x not in X or y not in X:
                    self.err(d.span, f"act {bb} . {x} = {y} is not typed by {tgt.args[0]} acting on {src.args[0]}")

    def _complex(self, b: Block) -> None:
        for k in ("modulus", "dims", "d2", "d1"):
            if not any(d.kind == k for d in b.decls):
                self.err(b.span, f"complex {b.name} needs a {k} line")

    def _endpoints(self, b: Block, kind: str) -> None:
        for k in ("source", "target"):
            d = next((d for d in b.decls if d.kind == k), None)
            if d is None:
                self.err(b.span, f"{b.kind} {b.name} needs a {k} line")
            if (kind, d.args[0]) not in self.named:
                self.err(d.span, f"unknown {kind} {d.args[0]!r}")

    def _map(self, b: Block) -> None:
        self._endpoints(b, "complex")

    def _htpy(self, b: Block) -> None:
        self._endpoints(b, "complex")

    def _intcat(self, b: Block) -> None:
        objs = {d.args[0] for d in b.decls if d.kind == "object"}
        arrows = {}
        for d in b.decls:
            if d.kind == "arrow":
                for o in d.args[1:]:
                    if o not in objs:
                        self.err(d.span, f"unknown object {o!r}")
                arrows[d.args[0]] = (d.args[1], d.args[2])
        for d in b.decls:
            if d.kind == "unit":
                if d.args[0] not in objs or d.args[1] not in arrows:
                    self.err(d.span, f"unit {d.args[0]} = {d.args[1]} refers to undeclared names")
            elif d.kind == "compose":
                for a in d.args:
                    if a not in arrows:
                        self.err(d.span, f"unknown arrow {a!r}")
                a, c, _ = d.args
                if arrows[a][0] != arrows[c][1]:
                    self.err(d.span, f"typing clash: {a} and {c} are not composable")

    def _pseudocat(self, b: Block) -> None:
        if "category" not in self.singletons:
            self.err(b.span, "pseudocat block needs a category block before it")
        for k in ("C0", "C1", "d", "c", "e", "m"):
            if not any(d.kind == k for d in b.decls):
                self.err(b.span, f"pseudocat needs {k}")
        for d in b.decls:
            if d.kind in ("C0", "C1"):
                names, spaces = d.args, ("object",)
            elif d.kind in ("d", "c", "e", "m"):
                names, spaces = d.args, ("morphism",)
            elif d.kind.startswith("C"):
                names, spaces = d.args, ("object", "morphism", "morphism")
            else:
                continue
            for n, space in zip(names, spaces * len(names)):
                known = n in self.objects if space == "object" else n in self.morphisms
                if not known:
                    self.err(d.span, f"unknown {space} {n!r}")

    def _derive(self, b: Block) -> None:
        if b.name not in BUILDERS:
            self.err(b.span, f"unknown builder {b.name!r}; expected one of {', '.join(BUILDERS)}")
        if any(x.kind == "derive" for x in self.singletons.values()):
            self.err(b.span, "a document has at most one derive directive")
        sig = BUILDERS[b.name]
        if b.name in ("discrete", "codiscrete") and "category" not in self.singletons:
            self.err(b.span, f"derive {b.name} needs a category block before it")
        variadic = len(sig) == 1 and sig[0].endswith("+")
        if variadic and not b.args or not variadic and len(b.args) != len(sig):
            self.err(b.span, f"derive {b.name} takes {'one or more' if variadic else len(sig)} "
                             f"argument{'s' if variadic or len(sig) != 1 else ''}")
        kinds = [sig[0].rstrip("+")] * len(b.args) if variadic else list(sig)
        for arg, kind in zip(b.args, kinds):
            if kind == "group":
                self.group_elements(arg, b.span)
            elif kind == "element":
                xm = self.named[("xmod", b.args[0])]
                src = next(d for d in xm.decls if d.kind == "source").args[0]
                if arg not in self.group_elements(src, b.span):
                    self.err(b.span, f"{arg!r} is not an element of {src}")
            elif (kind, arg) not in self.named:
                self.err(b.span, f"unknown {kind} {arg!r}")


# -- loading ---------------------------------------------------------------------------

@dataclass
class Workspace:
    """Everything a document defines, as live objects."""
    category: Category | None = None
    structure: CellStructure | None = None
    pseudocat: Any = None
    groups: dict = field(default_factory=dict)
    xmods: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    htpys: dict = field(default_factory=dict)
    intcats: dict = field(default_factory=dict)


def _load_error(b: Block, message: str):
    _fail(b.span or Span(1, 1), message, ResolveError)


class _Loader:
    def __init__(self, doc: SpecDocument):
        self.doc = doc
        self.ws = Workspace()

    def group(self, name: str) -> Group:
        return self.ws.groups.get(name) or _catalog_group(name)

    def run(self) -> Workspace:
        for b in self.doc.blocks:
            try:
                getattr(self, "_" + b.kind)(b)
            except ResolveError:
                raise
            except (SesquiError, ValueError, KeyError) as exc:
                _load_error(b, f"{b.kind} {b.name or ''}: {exc}".replace("  ", " "))
        return self.ws

    def _category(self, b: Block) -> None:
        objs = sorted(d.args[0] for d in b.decls if d.kind == "object")
        mors = {d.args[0]: (d.args[1], d.args[2]) for d in b.decls if d.kind == "morphism"}
        ids = {d.args[0]: d.args[1] for d in b.decls if d.kind == "id"}
        comp = {(d.args[0], d.args[1]): d.args[2] for d in b.decls if d.kind == "compose"}
        self.ws.category = TableCategory(objs, mors, ids, comp)

    def _cells(self, b: Block) -> None:
        table = {k: {} for k in ("cell", "zero", "plus", "lwhisk", "rwhisk")}
        for d in b.decls:
            if d.kind in ("cell", "zero"):
                table[d.kind][d.args[0]] = d.args[1:] if d.kind == "cell" else d.args[1]
            else:
                table[d.kind][d.args[:2]] = d.args[2]
        self.ws.structure = TableStructure(self.ws.category, table["cell"], table["zero"], table["plus"],
                                           table["lwhisk"], table["rwhisk"])

    def _group(self, b: Block) -> None:
        els = tuple(d.args[0] for d in b.decls if d.kind == "elem")
        mul = {(d.args[0], d.args[1]): d.args[2] for d in b.decls if d.kind == "mul"}
        missing = [(x, y) for x in els for y in els if (x, y) not in mul]
        if missing:
            _load_error(b, f"group {b.name}: no product for {missing[0][0]} * {missing[0][1]}")
        g = Group(b.name, els, mul)
        msg = _group_defect(g)
        if msg:
            _load_error(b, f"group {b.name}: {msg}")
        self.ws.groups[b.name] = g

    def _xmod(self, b: Block) -> None:
        get = {d.kind: d.args[0] for d in b.decls if d.kind in ("source", "target")}
        X, B = self.group(get["source"]), self.group(get["target"])
        diff = {d.args[0]: d.args[1] for d in b.decls if d.kind == "diff"}
        missing = [x for x in X.elements if x not in diff]
        if missing:
            _load_error(b, f"xmod {b.name}: diff undefined at {missing[0]}")
        # unlisted pairs act trivially
        acts = {(y, x): x for y in B.elements for x in X.elements}
        acts.update({(d.args[0], d.args[1]): d.args[2] for d in b.decls if d.kind == "act"})
        xm = CrossedModulePresentation.build(b.name, X, B, diff, acts)
        msgs = xm.check()
        if msgs:
            _load_error(b, f"xmod {b.name}: {msgs[0]}")
        self.ws.xmods[b.name] = xm

    def _complex(self, b: Block) -> None:
        get = {d.kind: d for d in b.decls}
        p = _int(get["modulus"].args[0], get["modulus"].span, "modulus")
        if not _is_prime(p):
            _load_error(b, f"complex {b.name}: modulus {p} is not prime")
        dims = tuple(_int(a, get["dims"].span, "a dimension") for a in get["dims"].args)
        if max(dims) > 64:
            _load_error(b, f"complex {b.name}: dimensions above 64 are not supported")
        n2, n1, n0 = dims
        d2 = Mat.of(_rows(get["d2"].args, n1, n2, get["d2"].span, "d2"), p, cols=n2)
        d1 = Mat.of(_rows(get["d1"].args, n0, n1, get["d1"].span, "d1"), p, cols=n1)
        cx = ChainComplex(b.name, p, dims, d2, d1)
        msgs = cx.check()
        if msgs:
            _load_error(b, f"complex {b.name}: {msgs[0]}")
        self.ws.complexes[b.name] = cx

    def _ends(self, b: Block):
        get = {d.kind: d for d in b.decls}
        return self.ws.complexes[get["source"].args[0]], self.ws.complexes[get["target"].args[0]], get

    def _map(self, b: Block) -> None:
        src, tgt, get = self._ends(b)
        mats = []
        for k, key in enumerate(("c2", "c1", "c0")):
            d = get.get(key)
            if d is None:
                _load_error(b, f"map {b.name} needs a {key} line")
            mats.append(Mat.of(_rows(d.args, tgt.dims[k], src.dims[k], d.span, key), src.mod, cols=src.dims[k]))
        f = ChainMap(src, tgt, tuple(mats), b.name)
        if not is_chain_map(f):
            _load_error(b, f"map {b.name} does not commute with the differentials")
        self.ws.maps[b.name] = f

    def _htpy(self, b: Block) -> None:
        src, tgt, get = self._ends(b)
        shapes = {"t2": (tgt.dims[0], src.dims[1]), "t1": (tgt.dims[1], src.dims[2])}
        mats = []
        for key, (r, c) in shapes.items():
            d = get.get(key)
            if d is None:
                _load_error(b, f"htpy {b.name} needs a {key} line")
            mats.append(Mat.of(_rows(d.args, r, c, d.span, key), src.mod, cols=c))
        self.ws.htpys[b.name] = (src, tgt, Htpy(*mats))

    def _intcat(self, b: Block) -> None:
        objs = [d.args[0] for d in b.decls if d.kind == "object"]
        arrows = [d for d in b.decls if d.kind == "arrow"]
        unit = {d.args[0]: d.args[1] for d in b.decls if d.kind == "unit"}
        comp = {(d.args[0], d.args[1]): d.args[2] for d in b.decls if d.kind == "compose"}
        missing = [o for o in objs if o not in unit]
        if missing:
            _load_error(b, f"intcat {b.name}: no unit at {missing[0]}")
        ic = InternalCategory.build(b.name, objs, [d.args[0] for d in arrows],
                                    {d.args[0]: d.args[1] for d in arrows},
                                    {d.args[0]: d.args[2] for d in arrows}, unit, comp)
        msgs = ic.check()
        if msgs:
            _load_error(b, f"intcat {b.name}: {msgs[0]}")
        self.ws.intcats[b.name] = ic

    def _pseudocat(self, b: Block) -> None:
        self._pending_pseudocat = b

    def _derive(self, b: Block) -> None:
        from .pseudocat import build_additive_pseudocategory, build_group_pseudocategory
        ws, args = self.ws, b.args
        if b.name == "discrete":
            ws.structure = discrete(ws.category)
        elif b.name == "codiscrete":
            ws.structure = codiscrete(ws.category)
        elif b.name == "conjugation":
            ws.category, ws.structure = grp_conjugation([self.group(a) for a in args])
        elif b.name == "one_object":
            ws.structure = one_object(self.group(args[0]), self.group(args[1]))
            ws.category = ws.structure.base
        elif b.name == "derivations":
            ws.category, ws.structure = xmod_derivations([ws.xmods[a] for a in args])
        elif b.name == "homotopies":
            ws.category, ws.structure = chain_homotopies([ws.complexes[a] for a in args])
        elif b.name == "internal":
            ws.category, ws.structure = internal_transformations([ws.intcats[a] for a in args])
        elif b.name == "group_pseudocat":
            ws.category, ws.structure, ws.pseudocat = build_group_pseudocategory(ws.xmods[args[0]], args[1])
        elif b.name == "additive_pseudocat":
            A, B = ws.complexes[args[0]], ws.complexes[args[1]]
            h = ws.maps[args[2]]
            cells = [ws.htpys[a] for a in args[3:]]
            want = [(A, A), (A, A), (B, A)]
            if (h.src, h.tgt) != (A, B) or [c[:2] for c in cells] != want:
                _load_error(b, "additive_pseudocat needs h: A -> B, lambda, rho: A -> A and eta: B -> A")
            ws.category, ws.structure, ws.pseudocat = build_additive_pseudocategory(
                A, B, h, *(c[2] for c in cells))

    def finish(self) -> Workspace:
        b = getattr(self, "_pending_pseudocat", None)
        if b is not None:
            try:
                self.ws.pseudocat = _table_pseudocat(self.ws, b)
            except ResolveError:
                raise
            except SesquiError as exc:
                _load_error(b, f"pseudocat: {exc}")
        return self.ws


def _group_defect(g: Group) -> str | None:
    els = g.elements
    try:
        e = g.unit
    except ValueError:
        return "no two-sided unit"
    for a in els:
        if not any(g.mul(a, b) == e for b in els):
            return f"{a} has no inverse"
    for a in els:
        for b in els:
            for c in els:
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
                    return f"not associative at ({a}, {b}, {c})"
    return None


def _unique_cell(H: CellStructure, src, tgt):
    """The only cell ``src => tgt``; otherwise the zero cell on src."""
    a, b = H.pair(H.zero(src))
    hits = [x for x in H.cells(a, b) if H.dom(x) == src and H.cod(x) == tgt]
    return hits[0] if len(hits) == 1 else H.zero(src)


def _table_pseudocat(ws: Workspace, b: Block):
    from .pseudocat import PseudocategoryData, build_frame
    if ws.structure is None:
        _load_error(b, "pseudocat needs a cells block or a derive directive")
    cat = ws.category
    get = {d.kind: d.args for d in b.decls}
    one = {k: get[k][-1] for k in ("C0", "C1", "d", "c", "e", "m")}
    d, c = one["d"], one["c"]
    C2 = C3 = C4 = C4r = None
    if "C2" in get:
        C2 = PullbackSquare(*get["C2"], d, c)
    if "C3" in get:
        if C2 is None:
            _load_error(b, "C3 needs C2")
        C3 = PullbackSquare(*get["C3"], C2.p2, C2.p1)
    if ("C4" in get or "C4r" in get) and C3 is None:
        _load_error(b, "C4 needs C3")
    if "C4" in get:
        C4 = PullbackSquare(*get["C4"], cat.chain(d, C2.p2, C3.p2), c)
    if "C4r" in get:
        C4r = PullbackSquare(*get["C4r"], d, cat.chain(c, C2.p1, C3.p1))
    data = PseudocategoryData(one["C0"], one["C1"], d, c, one["e"], one["m"], None, None, None,
                              C2, C3, C4, C4r)
    fr = build_frame(cat, data)
    H, m = ws.structure, one["m"]
    ident = cat.identity(one["C1"])
    cells = {"alpha": (cat.chain(m, fr.m1), cat.chain(m, fr.m2)),
             "lambda": (cat.chain(m, fr.e2), ident),
             "rho": (cat.chain(m, fr.e1), ident)}
    for key, (src, tgt) in cells.items():
        if key in get:
            x = get[key][0]
            known = set(H.all_cells()) if H.enumerable else set()
            if x not in known:
                _load_error(b, f"unknown cell {x!r} for {key}")
            cells[key] = x
        else:
            cells[key] = _unique_cell(H, src, tgt)
    data.alpha, data.lam, data.rho = cells["alpha"], cells["lambda"], cells["rho"]
    return data


def load(doc: SpecDocument) -> Workspace:
    loader = _Loader(doc)
    loader.run()
    return loader.finish()


def loads(text: str | bytes) -> Workspace:
    return load(parse(text))


def read(path) -> Workspace:
    with open(path, "rb") as fh:
        return loads(fh.read())


# -- serialization ---------------------------------------------------------------------

def _format_decl(kind: str, d: Decl) -> str:
    out = [d.kind]
    args = iter(d.args)
    for item in PATTERNS[kind][d.kind]:
        if item == "I":
            out.append(next(args))
        elif item == "R":
            out.extend(args)
        else:
            out.append(item)
    text = " ".join(out)
    return text.replace("( ", "(").replace(" )", ")").replace(" ,", ",")


def _block_key(b: Block):
    return BLOCK_ORDER.index(b.kind), b.name or "", b.args


def _decl_key(kind: str, d: Decl):
    return list(PATTERNS[kind]).index(d.kind), d.args


def serialize(obj) -> str:
    """Canonical text for a document, a table structure or a table category.

    Other enumerable structures are materialized first.
    """
    doc = obj if isinstance(obj, SpecDocument) else document_of(obj)
    chunks = []
    for b in sorted(doc.blocks, key=_block_key):
        if b.kind == "derive":
            chunks.append(" ".join(("derive", b.name) + tuple(b.args)) + "\n")
            continue
        head = b.kind + (f" {b.name}" if b.name else "") + " {"
        lines = [_format_decl(b.kind, d) for d in sorted(b.decls, key=lambda d: _decl_key(b.kind, d))]
        if not lines:
            chunks.append(head + " }\n")
        else:
            chunks.append(head + "\n" + "".join(f"  {ln}\n" for ln in lines) + "}\n")
    return "".join(chunks)


def _ident(x) -> str:
    s = str(x)
    if not IDENT.match(s):
        raise ValueError(f"{s!r} cannot be written as an identifier")
    return s


def category_block(cat: TableCategory) -> Block:
    decls = [Decl("object", (_ident(o),)) for o in cat.objects]
    for f, (a, b) in cat.morphism_types.items():
        decls.append(Decl("morphism", (_ident(f), a, b)))
    decls += [Decl("id", (a, f)) for a, f in cat.identities.items()]
    decls += [Decl("compose", (g, f, h)) for (g, f), h in cat.composition.items()]
    return Block("category", None, decls)


def cells_block(H: TableStructure) -> Block:
    decls = [Decl("cell", (_ident(x), f, g)) for x, (f, g) in H.cell_types.items()]
    decls += [Decl("zero", (f, z)) for f, z in H.zeros.items()]
    decls += [Decl("plus", (v, u, w)) for (v, u), w in H.vsums.items()]
    decls += [Decl("lwhisk", (g, y, w)) for (g, y), w in H.lwhisks.items()]
    decls += [Decl("rwhisk", (x, f, w)) for (x, f), w in H.rwhisks.items()]
    return Block("cells", None, decls)


def group_block(g: Group) -> Block:
    decls = [Decl("elem", (_ident(x),)) for x in g.elements]
    decls += [Decl("mul", (a, b, g.mul(a, b))) for a in g.elements for b in g.elements]
    return Block("group", _ident(g.name), decls)


def xmod_block(xm: CrossedModulePresentation) -> Block:
    decls = [Decl("source", (_ident(xm.X.name),)), Decl("target", (_ident(xm.B.name),))]
    decls += [Decl("diff", (x, xm.d(x))) for x in xm.X.elements]
    decls += [Decl("act", (b, x, y)) for (b, x), y in xm.action.items() if x != y]
    return Block("xmod", _ident(xm.name), decls)


def _row_args(m: Mat) -> tuple:
    out: list[str] = []
    for i, row in enumerate(m.tolist()):
        if i:
            out.append(";")
        out.extend(str(v) for v in row)
    return tuple(out) if m.rows * m.cols else ()


def complex_block(cx: ChainComplex) -> Block:
    return Block("complex", _ident(cx.name), [
        Decl("modulus", (str(cx.mod),)),
        Decl("dims", tuple(str(n) for n in cx.dims)),
        Decl("d2", _row_args(cx.d2)),
        Decl("d1", _row_args(cx.d1)),
    ])


def map_block(name: str, f: ChainMap) -> Block:
    decls = [Decl("source", (f.src.name,)), Decl("target", (f.tgt.name,))]
    decls += [Decl(k, _row_args(m)) for k, m in zip(("c2", "c1", "c0"), f.comps)]
    return Block("map", _ident(name), decls)


def htpy_block(name: str, src: ChainComplex, tgt: ChainComplex, t: Htpy) -> Block:
    return Block("htpy", _ident(name), [
        Decl("source", (src.name,)), Decl("target", (tgt.name,)),
        Decl("t2", _row_args(t.t2)), Decl("t1", _row_args(t.t1)),
    ])


def intcat_block(ic: InternalCategory) -> Block:
    decls = [Decl("object", (_ident(o),)) for o in ic.C0.elements]
    decls += [Decl("arrow", (_ident(a), ic.d(a), ic.c(a))) for a in ic.C1.elements]
    decls += [Decl("unit", (o, ic.e(o))) for o in ic.C0.elements]
    decls += [Decl("compose", (a, b, ab)) for (a, b), ab in ic.m.items()]
    return Block("intcat", _ident(ic.name), decls)


def derive_block(builder: str, *args) -> Block:
    return Block("derive", builder, [], None, tuple(_ident(a) for a in args))


def document_of(obj) -> SpecDocument:
    """A document describing a table category or an enumerable structure."""
    if isinstance(obj, TableCategory):
        return SpecDocument([category_block(obj)])
    if isinstance(obj, CellStructure):
        H = obj if isinstance(obj, TableStructure) else materialize(obj)
        return SpecDocument([category_block(H.base), cells_block(H)])
    raise TypeError(f"cannot serialize {type(obj).__name__}")
