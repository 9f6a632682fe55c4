"""Recursive-descent Turtle parser.

Covers the Turtle constructs ontologies actually use: prefix/base directives
(both @-style and SPARQL-style), predicate and object lists, 'a', numeric and
boolean literals, language tags and datatypes, long strings, blank node
property lists, and collections (expanded to first/rest/nil).

Errors carry a 1-based line and column.
"""

from __future__ import annotations

import re

from .graph import Graph
from .ntriples import RdfSyntaxError, unescape
from .terms import (
    RDF_FIRST,
    RDF_LANGSTRING,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    Blank,
    Iri,
    Literal,
    Term,
    Triple,
)

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")

_TOK_SPECS = [
    ("comment", re.compile(r"#[^\n]*")),
    ("iri", re.compile(r"<[^<>\s]*>")),
    ("long_string", re.compile(r'"""(?:[^"\\]|\\.|"(?!""))*"""|\'\'\'(?:[^\'\\]|\\.|\'(?!\'\'))*\'\'\'', re.DOTALL)),
    ("string", re.compile(r'"(?:[^"\\\n]|\\.)*"|\'(?:[^\'\\\n]|\\.)*\'')),
    ("blank", re.compile(r"_:[A-Za-z0-9](?:[A-Za-z0-9.\-_]*[A-Za-z0-9\-_])?")),
    ("prefix_kw", re.compile(r"@prefix\b")),
    ("base_kw", re.compile(r"@base\b")),
    ("langtag", re.compile(r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*")),
    ("dcaret", re.compile(r"\^\^")),
    ("double", re.compile(r"[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+)")),
    ("decimal", re.compile(r"[+-]?\d*\.\d+")),
    ("integer", re.compile(r"[+-]?\d+")),
    # Prefixed name: optional prefix label, ':', liberal local part.
    ("pname", re.compile(r"(?:[A-Za-z_\u00C0-\uFFFF][\w.\-\u00C0-\uFFFF]*)?:(?:[\w:%\-.\u00C0-\uFFFF]|\\[\-_~.!$&'()*+,;=/?#@%])*")),
    ("punct", re.compile(r"[.;,\[\]()]")),
    ("word", re.compile(r"[A-Za-z]+")),
]


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind: str, text: str, line: int, col: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, col = 0, 1, 1
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "\n":
            pos += 1
            line += 1
            col = 1
            continue
        for kind, rx in _TOK_SPECS:
            m = rx.match(text, pos)
            if not m:
                continue
            raw = m.group(0)
            if kind == "comment":
                pass
            elif kind == "pname":
                # A trailing unescaped '.' belongs to the statement, not the name.
                stripped = raw
                while stripped.endswith(".") and not stripped.endswith("\\."):
                    stripped = stripped[:-1]
                tokens.append(_Token("pname", stripped, line, col))
                for k in range(len(stripped), len(raw)):
                    tokens.append(_Token("punct", ".", line, col + k))
            elif kind == "word":
                lowered = raw.lower()
                if raw == "a":
                    tokens.append(_Token("a", raw, line, col))
                elif raw in ("true", "false"):
                    tokens.append(_Token("boolean", raw, line, col))
                elif lowered == "prefix":
                    tokens.append(_Token("sparql_prefix", raw, line, col))
                elif lowered == "base":
                    tokens.append(_Token("sparql_base", raw, line, col))
                else:
                    raise RdfSyntaxError(f"unexpected token {raw!r}", line, col)
            else:
                tokens.append(_Token(kind, raw, line, col))
            newlines = raw.count("\n")
            if newlines:
                line += newlines
                col = len(raw) - raw.rfind("\n")
            else:
                col += len(raw)
            pos = m.end()
            break
        else:
            raise RdfSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


_LOCAL_ESC = re.compile(r"\\([\-_~.!$&'()*+,;=/?#@%])")


class TurtleParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.base: str | None = None
        self.triples: list[Triple] = []
        self._reserved_blanks = {t.text[2:] for t in self.tokens if t.kind == "blank"}
        self._genid = 0

    # token plumbing

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._next()
        if tok.kind != kind:
            raise RdfSyntaxError(f"expected {what}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def _fresh_blank(self) -> Blank:
        while True:
            self._genid += 1
            label = f"genid{self._genid}"
            if label not in self._reserved_blanks:
                return Blank(label)

    # term construction

    def _resolve_iriref(self, tok: _Token) -> Iri:
        value = unescape(tok.text[1:-1], tok.line, tok.col)
        if _SCHEME.match(value):
            return Iri(value)
        if self.base is None:
            raise RdfSyntaxError(f"relative IRI with no base: <{value}>", tok.line, tok.col)
        from urllib.parse import urljoin

        return Iri(urljoin(self.base, value))

    def _resolve_pname(self, tok: _Token) -> Iri:
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise RdfSyntaxError(f"unresolvable prefix {prefix + ':'!r}", tok.line, tok.col)
        return Iri(self.prefixes[prefix] + _LOCAL_ESC.sub(r"\1", local))

    # grammar

    def parse(self) -> Graph:
        while True:
            tok = self._peek()
            if tok.kind == "eof":
                break
            if tok.kind == "prefix_kw":
                self._next()
                self._directive_prefix()
                self._expect("punct", "'.'")
            elif tok.kind == "base_kw":
                self._next()
                self._directive_base()
                self._expect("punct", "'.'")
            elif tok.kind == "sparql_prefix":
                self._next()
                self._directive_prefix()
            elif tok.kind == "sparql_base":
                self._next()
                self._directive_base()
            else:
                self._triples_block()
        return Graph(self.triples)

    def _directive_prefix(self) -> None:
        name = self._expect("pname", "prefix name")
        prefix, _, local = name.text.partition(":")
        if local:
            raise RdfSyntaxError("prefix declaration must end with ':'", name.line, name.col)
        iri = self._expect("iri", "IRI")
        self.prefixes[prefix] = self._resolve_iriref(iri).value

    def _directive_base(self) -> None:
        iri = self._expect("iri", "IRI")
        self.base = self._resolve_iriref(iri).value

    def _triples_block(self) -> None:
        tok = self._peek()
        if tok.kind == "punct" and tok.text == "[":
            subject = self._bnode_property_list()
            nxt = self._peek()
            if nxt.kind == "punct" and nxt.text == ".":
                self._next()
                return
            self._predicate_object_list(subject)
        else:
            subject = self._subject()
            self._predicate_object_list(subject)
        end = self._next()
        if not (end.kind == "punct" and end.text == "."):
            raise RdfSyntaxError(f"expected '.', found {end.text!r}", end.line, end.col)

    def _subject(self) -> Term:
        tok = self._next()
        if tok.kind == "iri":
            return self._resolve_iriref(tok)
        if tok.kind == "pname":
            return self._resolve_pname(tok)
        if tok.kind == "blank":
            return Blank(tok.text[2:])
        if tok.kind == "punct" and tok.text == "(":
            return self._collection()
        raise RdfSyntaxError(f"expected subject, found {tok.text!r}", tok.line, tok.col)

    def _verb(self) -> Iri:
        tok = self._next()
        if tok.kind == "a":
            return Iri(RDF_TYPE)
        if tok.kind == "iri":
            return self._resolve_iriref(tok)
        if tok.kind == "pname":
            return self._resolve_pname(tok)
        raise RdfSyntaxError(f"expected predicate, found {tok.text!r}", tok.line, tok.col)

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                self.triples.append(Triple(subject, predicate, obj))
                nxt = self._peek()
                if nxt.kind == "punct" and nxt.text == ",":
                    self._next()
                    continue
                break
            nxt = self._peek()
            if nxt.kind == "punct" and nxt.text == ";":
                while nxt.kind == "punct" and nxt.text == ";":
                    self._next()
                    nxt = self._peek()
                if nxt.kind in ("iri", "pname", "a"):
                    continue
            break

    def _object(self) -> Term:
        tok = self._next()
        if tok.kind == "iri":
            return self._resolve_iriref(tok)
        if tok.kind == "pname":
            return self._resolve_pname(tok)
        if tok.kind == "blank":
            return Blank(tok.text[2:])
        if tok.kind in ("string", "long_string"):
            quote = 3 if tok.kind == "long_string" else 1
            lexical = unescape(tok.text[quote:-quote], tok.line, tok.col)
            nxt = self._peek()
            if nxt.kind == "langtag":
                self._next()
                return Literal(lexical, RDF_LANGSTRING, nxt.text[1:])
            if nxt.kind == "dcaret":
                self._next()
                dt_tok = self._next()
                if dt_tok.kind == "iri":
                    dt = self._resolve_iriref(dt_tok).value
                elif dt_tok.kind == "pname":
                    dt = self._resolve_pname(dt_tok).value
                else:
                    raise RdfSyntaxError("expected datatype IRI", dt_tok.line, dt_tok.col)
                return Literal(lexical, dt)
            return Literal(lexical, XSD_STRING)
        if tok.kind == "integer":
            return Literal(tok.text, XSD_INTEGER)
        if tok.kind == "decimal":
            return Literal(tok.text, XSD_DECIMAL)
        if tok.kind == "double":
            return Literal(tok.text, XSD_DOUBLE)
        if tok.kind == "boolean":
            return Literal(tok.text, XSD_BOOLEAN)
        if tok.kind == "punct" and tok.text == "[":
            self.pos -= 1
            return self._bnode_property_list()
        if tok.kind == "punct" and tok.text == "(":
            return self._collection()
        raise RdfSyntaxError(f"expected object, found {tok.text!r}", tok.line, tok.col)

    def _bnode_property_list(self) -> Term:
        self._expect("punct", "'['")
        node = self._fresh_blank()
        nxt = self._peek()
        if nxt.kind == "punct" and nxt.text == "]":
            self._next()
            return node
        self._predicate_object_list(node)
        end = self._next()
        if not (end.kind == "punct" and end.text == "]"):
            raise RdfSyntaxError(f"expected ']', found {end.text!r}", end.line, end.col)
        return node

    def _collection(self) -> Term:
        # '(' already consumed by caller
        items: list[Term] = []
        while True:
            nxt = self._peek()
            if nxt.kind == "punct" and nxt.text == ")":
                self._next()
                break
            if nxt.kind == "eof":
                raise RdfSyntaxError("unterminated collection", nxt.line, nxt.col)
            items.append(self._object())
        if not items:
            return Iri(RDF_NIL)
        first = Iri(RDF_FIRST)
        rest = Iri(RDF_REST)
        nodes = [self._fresh_blank() for _ in items]
        for i, (node, item) in enumerate(zip(nodes, items)):
            self.triples.append(Triple(node, first, item))
            tail: Term = nodes[i + 1] if i + 1 < len(nodes) else Iri(RDF_NIL)
            self.triples.append(Triple(node, rest, tail))
        return nodes[0]


def parse_turtle(data: bytes | str) -> Graph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return TurtleParser(text.lstrip("\ufeff")).parse()
