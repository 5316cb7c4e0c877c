"""Text formats for presentations, labelled oriented graphs, and Artin
presentation graphs.

Presentation grammar (whitespace separated, ``#`` starts a comment):

    gens: <name> <name> ...
    rel: <letter> <letter> ...

where letter is ``name``, ``name^-1`` or ``name^<k>`` for nonzero k
(expanding to |k| letters).  LOG files use ``vertices:`` and
``edge: <initial> <label> <terminal>`` lines; Artin graph files use
``vertices:`` and ``edge: <u> <v> <m>`` lines with m >= 2.
"""

from __future__ import annotations

import re

from .logs import Log, PresentationGraph
from .words import GENERATOR_NAME, Presentation, Word

_LETTER = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: str):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"line {line}, column {col}: expected {expected}")


class UnknownVertex(ParseError):
    def __init__(self, line: int, col: int, name: str):
        self.name = name
        ParseError.__init__(self, line, col, f"a declared vertex, got {name!r}")


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _tokens_with_columns(body: str):
    for match in re.finditer(r"\S+", body):
        yield match.start() + 1, match.group()


def parse_presentation(text: str) -> Presentation:
    generators: list[str] | None = None
    relators: list[Word] = []
    for lineno, body in _logical_lines(text):
        tokens = list(_tokens_with_columns(body))
        col0, head = tokens[0]
        if head == "gens:":
            if generators is not None:
                raise ParseError(lineno, col0, "a single gens: line")
            generators = []
            for col, tok in tokens[1:]:
                if not GENERATOR_NAME.match(tok):
                    raise ParseError(lineno, col, "generator name")
                if tok in generators:
                    raise ParseError(lineno, col, f"fresh name, {tok!r} repeats")
                generators.append(tok)
            if not generators:
                raise ParseError(lineno, col0, "at least one generator")
        elif head == "rel:":
            if generators is None:
                raise ParseError(lineno, col0, "gens: line before relators")
            word: list[int] = []
            for col, tok in tokens[1:]:
                m = _LETTER.match(tok)
                if not m:
                    raise ParseError(lineno, col, "letter name[^k]")
                name, exp = m.group(1), m.group(2)
                if name not in generators:
                    raise ParseError(lineno, col, f"known generator, got {name!r}")
                k = int(exp) if exp is not None else 1
                if k == 0:
                    raise ParseError(lineno, col, "nonzero exponent")
                base = generators.index(name) + 1
                word.extend([base if k > 0 else -base] * abs(k))
            relators.append(tuple(word))
        else:
            raise ParseError(lineno, col0, "gens: or rel:")
    if generators is None:
        raise ParseError(1, 1, "gens: line")
    return Presentation(tuple(generators), tuple(relators))


def format_presentation(pres: Presentation) -> str:
    lines = ["gens: " + " ".join(pres.generators)]
    for rel in pres.relators:
        parts = []
        i = 0
        while i < len(rel):
            j = i
            while j < len(rel) and rel[j] == rel[i]:
                j += 1
            name = pres.generators[abs(rel[i]) - 1]
            count = (j - i) * (1 if rel[i] > 0 else -1)
            parts.append(name if count == 1 else f"{name}^{count}")
            i = j
        lines.append("rel: " + " ".join(parts))
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> Log:
    vertices: list[str] | None = None
    edges: list[tuple[int, int, int]] = []
    for lineno, body in _logical_lines(text):
        tokens = list(_tokens_with_columns(body))
        col0, head = tokens[0]
        if head == "vertices:":
            if vertices is not None:
                raise ParseError(lineno, col0, "a single vertices: line")
            vertices = []
            for col, tok in tokens[1:]:
                if not GENERATOR_NAME.match(tok):
                    raise ParseError(lineno, col, "vertex name")
                if tok in vertices:
                    raise ParseError(lineno, col, f"fresh name, {tok!r} repeats")
                vertices.append(tok)
            if not vertices:
                raise ParseError(lineno, col0, "at least one vertex")
        elif head == "edge:":
            if vertices is None:
                raise ParseError(lineno, col0, "vertices: line before edges")
            if len(tokens) != 4:
                raise ParseError(lineno, col0, "edge: <initial> <label> <terminal>")
            triple = []
            for col, tok in tokens[1:]:
                if tok not in vertices:
                    raise UnknownVertex(lineno, col, tok)
                triple.append(vertices.index(tok))
            edges.append(tuple(triple))
        else:
            raise ParseError(lineno, col0, "vertices: or edge:")
    if vertices is None:
        raise ParseError(1, 1, "vertices: line")
    return Log(tuple(vertices), tuple(edges))


def format_log(log: Log) -> str:
    lines = ["vertices: " + " ".join(log.vertices)]
    for i, lam, t in log.edges:
        lines.append(f"edge: {log.vertices[i]} {log.vertices[lam]} {log.vertices[t]}")
    return "\n".join(lines) + "\n"


def parse_artin_graph(text: str) -> PresentationGraph:
    vertices: list[str] | None = None
    edges: list[tuple[int, int, int]] = []
    for lineno, body in _logical_lines(text):
        tokens = list(_tokens_with_columns(body))
        col0, head = tokens[0]
        if head == "vertices:":
            if vertices is not None:
                raise ParseError(lineno, col0, "a single vertices: line")
            vertices = [tok for _, tok in tokens[1:]]
            for col, tok in tokens[1:]:
                if not GENERATOR_NAME.match(tok):
                    raise ParseError(lineno, col, "vertex name")
        elif head == "edge:":
            if vertices is None:
                raise ParseError(lineno, col0, "vertices: line before edges")
            if len(tokens) != 4:
                raise ParseError(lineno, col0, "edge: <u> <v> <m>")
            (cu, u), (cv, v), (cm, m) = tokens[1], tokens[2], tokens[3]
            if u not in vertices:
                raise UnknownVertex(lineno, cu, u)
            if v not in vertices:
                raise UnknownVertex(lineno, cv, v)
            if not m.isdigit() or int(m) < 2:
                raise ParseError(lineno, cm, "integer label >= 2")
            edges.append((vertices.index(u), vertices.index(v), int(m)))
        else:
            raise ParseError(lineno, col0, "vertices: or edge:")
    if vertices is None:
        raise ParseError(1, 1, "vertices: line")
    return PresentationGraph(tuple(vertices), tuple(edges))


def sniff_kind(text: str) -> str:
    """``presentation`` for gens:/rel: files, ``log`` for vertices:/edge: files."""
    for _, body in _logical_lines(text):
        head = body.split()[0]
        if head == "gens:":
            return "presentation"
        if head == "vertices:":
            return "log"
        break
    return "presentation"
