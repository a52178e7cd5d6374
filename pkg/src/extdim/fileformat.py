"""Line-oriented text format for algebras and module literals.

Example::

    # A2 over the rationals
    field Q
    vertices 2
    arrow a : 1 -> 2
    module M { dim = [1,1]; map a = [[1]]; }

``format_document`` is the canonical printer: parsing its output and printing
again reproduces the same bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from extdim import linalg
from extdim.algebra import (
    DEFAULT_COUNT_CAP,
    DEFAULT_LENGTH_CAP,
    AlgebraError,
    Arrow,
    BoundQuiverAlgebra,
    Quiver,
    Relation,
)
from extdim.field import FieldError, FieldSpec
from extdim.module import Representation

_TOKEN = re.compile(r"(?P<space>[ \t]+)|(?P<arrow>->)|(?P<word>[A-Za-z0-9_']+)|(?P<punct>[:,.*+\-/=\[\]{};])")


class AlgebraSyntaxError(AlgebraError):
    """A parse error located at a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass
class AlgebraDocument:
    """A parsed file: the algebra and its named module literals in file order."""

    algebra: BoundQuiverAlgebra
    modules: dict[str, Representation] = field(default_factory=dict)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None:
                raise AlgebraSyntaxError(f"Unexpected character '{line[pos]}'", lineno, pos + 1)
            if m.lastgroup != "space":
                tokens.append(_Token(m.lastgroup, m.group(), lineno, pos + 1))
            pos = m.end()
        tokens.append(_Token("newline", "", lineno, len(line) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    # token helpers

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("newline", "", 1, 1)
            raise AlgebraSyntaxError("Unexpected end of input", last.line, last.column)
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None) -> AlgebraSyntaxError:
        tok = tok or self.peek() or (self.tokens[-1] if self.tokens else _Token("newline", "", 1, 1))
        return AlgebraSyntaxError(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text or tok.kind == "newline":
            raise self.error(f"Expected '{text}', found {_describe(tok)}", tok)
        return tok

    def word(self, what: str) -> _Token:
        tok = self.next()
        if tok.kind != "word":
            raise self.error(f"Expected {what}, found {_describe(tok)}", tok)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind != "newline" and tok.text == text

    def end_of_line(self) -> None:
        tok = self.next()
        if tok.kind != "newline":
            raise self.error(f"Trailing input {_describe(tok)}", tok)

    def skip_newlines(self) -> None:
        while (tok := self.peek()) is not None and tok.kind == "newline":
            self.pos += 1

    # grammar

    def number(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        tok = self.word("a number")
        if not tok.text.isdigit():
            raise self.error(f"Expected a number, found '{tok.text}'", tok)
        value = Fraction(int(tok.text))
        if self.at("/"):
            self.next()
            den = self.word("a denominator")
            if not den.text.isdigit() or int(den.text) == 0:
                raise self.error(f"Invalid denominator '{den.text}'", den)
            value /= int(den.text)
        return sign * value

    def path(self) -> tuple[str, ...]:
        parts = [self.word("an arrow id").text]
        while self.at("."):
            self.next()
            parts.append(self.word("an arrow id").text)
        return tuple(parts)

    def relation(self) -> Relation:
        terms = []
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        elif self.at("+"):
            self.next()
        while True:
            coeff = Fraction(1)
            tok = self.peek()
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            starts_coefficient = tok is not None and tok.kind == "word" and tok.text.isdigit()
            if starts_coefficient and nxt is not None and nxt.text in ("*", "/"):
                coeff = self.number()
                self.expect("*")
            terms.append((sign * coeff, self.path()))
            if self.at("+"):
                self.next()
                sign = 1
            elif self.at("-"):
                self.next()
                sign = -1
            else:
                break
        return Relation(tuple(terms))

    def int_list(self) -> list[int]:
        self.expect("[")
        values: list[int] = []
        if not self.at("]"):
            while True:
                tok = self.word("an integer")
                if not tok.text.isdigit():
                    raise self.error(f"Expected an integer, found '{tok.text}'", tok)
                values.append(int(tok.text))
                if not self.at(","):
                    break
                self.next()
        self.expect("]")
        return values

    def matrix_rows(self) -> list[list[Fraction]]:
        self.skip_newlines()
        self.expect("[")
        rows: list[list[Fraction]] = []
        self.skip_newlines()
        while self.at("["):
            self.next()
            row: list[Fraction] = []
            if not self.at("]"):
                while True:
                    row.append(self.number())
                    if not self.at(","):
                        break
                    self.next()
            self.expect("]")
            rows.append(row)
            self.skip_newlines()
            if self.at(","):
                self.next()
                self.skip_newlines()
        self.expect("]")
        return rows


def _describe(tok: _Token) -> str:
    return "end of line" if tok.kind == "newline" else f"'{tok.text}'"


def parse_document(
    text: str,
    name: str = "algebra",
    length_cap: int = DEFAULT_LENGTH_CAP,
    count_cap: int = DEFAULT_COUNT_CAP,
    field_override: FieldSpec | None = None,
) -> AlgebraDocument:
    """Parse an algebra file with optional module blocks.

    ``field_override`` replaces the field named in the file.
    """
    p = _Parser(text)
    field_spec: FieldSpec | None = None
    vertices: list[str] | None = None
    arrows: list[Arrow] = []
    relations: list[Relation] = []
    module_blocks: list[tuple[_Token, str, list[int], dict[str, tuple[_Token, list[list[Fraction]]]]]] = []

    while True:
        p.skip_newlines()
        tok = p.peek()
        if tok is None:
            break
        keyword = p.word("a directive")
        kw = keyword.text
        if kw == "field":
            f = p.word("'Q' or 'F'")
            try:
                if f.text == "Q":
                    field_spec = FieldSpec.rationals()
                elif f.text == "F":
                    prime = p.word("a prime")
                    if not prime.text.isdigit():
                        raise p.error(f"Expected a prime, found '{prime.text}'", prime)
                    field_spec = FieldSpec.prime(int(prime.text))
                else:
                    raise p.error(f"Unknown field '{f.text}'", f)
            except FieldError as e:
                raise AlgebraSyntaxError(str(e), f.line, f.column) from e
            p.end_of_line()
        elif kw == "vertices":
            first = p.word("a vertex count or names")
            if first.text.isdigit() and not p.at(","):
                vertices = [str(i) for i in range(1, int(first.text) + 1)]
            else:
                vertices = [first.text]
                while p.at(","):
                    p.next()
                    vertices.append(p.word("a vertex name").text)
            p.end_of_line()
        elif kw == "arrow":
            ident = p.word("an arrow id")
            p.expect(":")
            src = p.word("a source vertex")
            p.expect("->")
            tgt = p.word("a target vertex")
            p.end_of_line()
            if vertices is None:
                raise p.error("'arrow' before 'vertices'", keyword)
            for end in (src, tgt):
                if end.text not in vertices:
                    raise p.error(f"Unknown vertex '{end.text}'", end)
            if any(a.id == ident.text for a in arrows):
                raise p.error(f"Duplicate arrow id '{ident.text}'", ident)
            arrows.append(Arrow(ident.text, src.text, tgt.text))
        elif kw == "relation":
            relations.append(p.relation())
            p.end_of_line()
        elif kw == "module":
            mname = p.word("a module name").text
            p.skip_newlines()
            p.expect("{")
            dims: list[int] | None = None
            maps: dict[str, tuple[_Token, list[list[Fraction]]]] = {}
            while True:
                p.skip_newlines()
                if p.at("}"):
                    p.next()
                    break
                item = p.word("'dim' or 'map'")
                if item.text == "dim":
                    p.expect("=")
                    dims = p.int_list()
                elif item.text == "map":
                    aid = p.word("an arrow id")
                    p.expect("=")
                    maps[aid.text] = (aid, p.matrix_rows())
                else:
                    raise p.error(f"Unknown module item '{item.text}'", item)
                p.skip_newlines()
                if p.at(";"):
                    p.next()
                elif not p.at("}"):
                    raise p.error("Expected ';' or '}'")
            p.end_of_line()
            if dims is None:
                raise p.error(f"Module '{mname}' has no 'dim'", keyword)
            module_blocks.append((keyword, mname, dims, maps))
        else:
            raise p.error(f"Unknown directive '{kw}'", keyword)

    if vertices is None:
        raise AlgebraSyntaxError("Missing 'vertices' directive", 1, 1)
    field_spec = field_override or field_spec or FieldSpec.rationals()
    quiver = Quiver(tuple(vertices), tuple(arrows))
    algebra = BoundQuiverAlgebra(field_spec, quiver, relations, name, length_cap, count_cap)

    modules: dict[str, Representation] = {}
    for keyword, mname, dims, maps in module_blocks:
        if len(dims) != len(vertices):
            raise AlgebraSyntaxError(
                f"Module '{mname}' needs {len(vertices)} dimensions, got {len(dims)}", keyword.line, keyword.column
            )
        matrices = {}
        for aid, (tok, rows) in maps.items():
            if not quiver.has_arrow(aid):
                raise AlgebraSyntaxError(f"Unknown arrow '{aid}'", tok.line, tok.column)
            arrow = quiver.arrow(aid)
            shape = (dims[quiver.vertex_index(arrow.target)], dims[quiver.vertex_index(arrow.source)])
            if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
                raise AlgebraSyntaxError(f"Map '{aid}' must be {shape[0]}x{shape[1]}", tok.line, tok.column)
            converted = [[field_spec.convert(v) for v in r] for r in rows]
            matrices[aid] = linalg.matrix(converted, field_spec.domain, shape[1])
        try:
            modules[mname] = Representation.build(algebra, dims, matrices, name=mname)
        except ValueError as e:
            raise AlgebraSyntaxError(str(e), keyword.line, keyword.column) from e
    return AlgebraDocument(algebra, modules)


def parse_algebra(
    text: str,
    name: str = "algebra",
    length_cap: int = DEFAULT_LENGTH_CAP,
    count_cap: int = DEFAULT_COUNT_CAP,
) -> BoundQuiverAlgebra:
    """Parse the algebra part of a file (module blocks are checked but dropped)."""
    return parse_document(text, name, length_cap, count_cap).algebra


def load_document(
    path: Path,
    length_cap: int = DEFAULT_LENGTH_CAP,
    count_cap: int = DEFAULT_COUNT_CAP,
    field_override: FieldSpec | None = None,
) -> AlgebraDocument:
    """Read a file; the algebra is named after the file stem."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Algebra file not found: {path}")
    return parse_document(path.read_text(encoding="utf-8"), path.stem, length_cap, count_cap, field_override)


# ----------------------------------------------------------------------------
# canonical printer
# ----------------------------------------------------------------------------


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_relation(relation: Relation) -> str:
    parts = []
    for k, (coeff, path) in enumerate(relation.terms):
        magnitude = abs(coeff)
        body = ".".join(path) if magnitude == 1 else f"{_format_fraction(magnitude)}*{'.'.join(path)}"
        if k == 0:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts)


def format_module(module: Representation, name: str | None = None) -> str:
    """One-line module literal; all-zero maps are omitted."""
    F = module.algebra.field
    items = ["dim = [" + ",".join(str(d) for d in module.dims) + "]"]
    for arrow in module.algebra.arrows:
        M = module.maps[arrow.id]
        if linalg.is_zero(M):
            continue
        rows = ["[" + ",".join(F.format(v) for v in row) + "]" for row in linalg.to_lists(M)]
        items.append(f"map {arrow.id} = [" + ",".join(rows) + "]")
    label = name or module.name or "M"
    return f"module {label} {{ " + "; ".join(items) + "; }"


def format_algebra(algebra: BoundQuiverAlgebra) -> str:
    lines = [f"field {algebra.field}"]
    vertices = algebra.vertices
    if vertices == tuple(str(i) for i in range(1, len(vertices) + 1)):
        lines.append(f"vertices {len(vertices)}")
    else:
        lines.append("vertices " + ",".join(vertices))
    for a in algebra.arrows:
        lines.append(f"arrow {a.id} : {a.source} -> {a.target}")
    for r in algebra.relations:
        lines.append("relation " + format_relation(r))
    return "\n".join(lines) + "\n"


def format_document(algebra: BoundQuiverAlgebra, modules: dict[str, Representation] | None = None) -> str:
    text = format_algebra(algebra)
    for name, module in (modules or {}).items():
        text += format_module(module, name) + "\n"
    return text
