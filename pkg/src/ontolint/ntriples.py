"""Line-based N-Triples parser and the canonical serializer.

Canonical output is the interchange format for golden files and determinism
checks: one triple per line, N-Triples escaping, lines sorted
lexicographically.
"""

from __future__ import annotations

import re
from typing import Iterable

from .graph import Graph
from .terms import (
    RDF_LANGSTRING,
    XSD_STRING,
    Blank,
    Iri,
    Literal,
    Term,
    Triple,
    serialize_triple,
    triple_sort_key,
)


class RdfSyntaxError(ValueError):
    """Syntax error with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


_UNESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.DOTALL)
_CHAR_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def unescape(s: str, line: int, col: int) -> str:
    def repl(m: re.Match) -> str:
        e = m.group(1)
        if e[0] in "uU":
            return chr(int(e[1:], 16))
        if e in _CHAR_ESCAPES:
            return _CHAR_ESCAPES[e]
        raise RdfSyntaxError(f"invalid escape sequence '\\{e}'", line, col + m.start())

    return _UNESCAPE_RE.sub(repl, s)


# Lenient IRIREF: no whitespace or angle brackets inside. Invalid-but-parseable
# IRIs must survive so the profiler can flag them.
_TOKEN = re.compile(
    r"""\s*(?:
        (?P<iri><[^<>\s]*>)
      | (?P<blank>_:[A-Za-z0-9](?:[A-Za-z0-9.\-_]*[A-Za-z0-9\-_])?)
      | (?P<lit>"(?:[^"\\]|\\.)*")
        (?:\^\^(?P<dt><[^<>\s]*>)|@(?P<lang>[A-Za-z]+(?:-[A-Za-z0-9]+)*))?
      | (?P<dot>\.)
    )""",
    re.VERBOSE,
)


def _parse_line(line: str, lineno: int) -> Triple | None:
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    terms: list[Term] = []
    pos = 0
    saw_dot = False
    while pos < len(line):
        rest = line[pos:]
        if not rest.strip() or rest.lstrip().startswith("#"):
            break
        if saw_dot:
            raise RdfSyntaxError("content after terminating '.'", lineno, pos + 1)
        m = _TOKEN.match(line, pos)
        if not m:
            raise RdfSyntaxError("unrecognized token", lineno, pos + 1)
        col = m.start() + 1
        if m.group("dot"):
            saw_dot = True
        elif m.group("iri"):
            value = unescape(m.group("iri")[1:-1], lineno, col)
            if ":" not in value:
                raise RdfSyntaxError(f"relative IRI with no base: <{value}>", lineno, col)
            terms.append(Iri(value))
        elif m.group("blank"):
            terms.append(Blank(m.group("blank")[2:]))
        else:
            lexical = unescape(m.group("lit")[1:-1], lineno, col)
            if m.group("lang"):
                terms.append(Literal(lexical, RDF_LANGSTRING, m.group("lang")))
            elif m.group("dt"):
                terms.append(Literal(lexical, unescape(m.group("dt")[1:-1], lineno, col)))
            else:
                terms.append(Literal(lexical, XSD_STRING))
        pos = m.end()
    if not saw_dot:
        raise RdfSyntaxError("missing terminating '.'", lineno, len(line))
    if len(terms) != 3:
        raise RdfSyntaxError(f"expected 3 terms, found {len(terms)}", lineno, 1)
    s, p, o = terms
    if isinstance(s, Literal):
        raise RdfSyntaxError("literal subject", lineno, 1)
    if not isinstance(p, Iri):
        raise RdfSyntaxError("predicate must be an IRI", lineno, 1)
    return Triple(s, p, o)


_LINE_SPLIT = re.compile(r"\r\n|\r|\n")


def parse_ntriples(data: bytes | str) -> Graph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    text = text.lstrip("﻿")
    triples = []
    # split only on real line breaks: U+0085/U+2028/U+2029 may occur raw
    # inside literals and must not terminate a statement
    for lineno, line in enumerate(_LINE_SPLIT.split(text), start=1):
        t = _parse_line(line, lineno)
        if t is not None:
            triples.append(t)
    return Graph(triples)


def serialize_canonical(triples: Iterable[Triple]) -> str:
    """Sorted, one-triple-per-line N-Triples text (with trailing newline)."""
    lines = [serialize_triple(t) for t in sorted(triples, key=triple_sort_key)]
    return "\n".join(lines) + ("\n" if lines else "")
