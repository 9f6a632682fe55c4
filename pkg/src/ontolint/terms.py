"""RDF terms and triples.

Terms are immutable value objects. IRIs are stored verbatim, exactly as they
appeared in the source document, so that findings can cite the on-disk form;
well-formedness is a separate check (`iri_well_formed`), not a constructor
constraint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
OBO_IN_OWL = "http://www.geneontology.org/formats/oboInOwl#"

XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
RDF_LANGSTRING = RDF + "langString"
RDF_TYPE = RDF + "type"
RDF_FIRST = RDF + "first"
RDF_REST = RDF + "rest"
RDF_NIL = RDF + "nil"
RDFS_LABEL = RDFS + "label"
RDFS_RANGE = RDFS + "range"
RDFS_DOMAIN = RDFS + "domain"
RDFS_COMMENT = RDFS + "comment"
OWL_SAMEAS = OWL + "sameAs"
SKOS_ALT_LABEL = SKOS + "altLabel"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")

# Characters the IRI grammar excludes from <...> references.  The parsers are
# deliberately more lenient (a finding should cite the broken IRI, not choke
# on it), so this set backs the well-formedness check instead.
_IRI_BAD_CHARS = set('<>"{}|\\^`') | {chr(c) for c in range(0x21)}


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not self.value or ":" not in self.value:
            raise ValueError(f"IRI must be non-empty and contain ':': {self.value!r}")


@dataclass(frozen=True, slots=True)
class Blank:
    label: str


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    language: str | None = field(default=None)

    def __post_init__(self) -> None:
        if self.language is not None and self.datatype != RDF_LANGSTRING:
            raise ValueError("language tag requires the language-string datatype")
        if self.datatype == RDF_LANGSTRING and self.language is None:
            raise ValueError("language-string literal requires a language tag")


Term = Union[Iri, Blank, Literal]


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")
        if isinstance(self.subject, Literal):
            raise ValueError("triple subject must be an IRI or blank node")


def iri_well_formed(value: str) -> bool:
    """Basic IRI sanity: a scheme is present and no forbidden characters occur."""
    if not _SCHEME_RE.match(value):
        return False
    return not any(c in _IRI_BAD_CHARS for c in value)


def is_absolute_iri_text(text: str) -> bool:
    """Whether a bare string reads as an absolute IRI rather than a CURIE.

    A conservative test: CURIEs like ``MESH:C536189`` technically match the
    scheme production, so only hierarchical forms (``scheme://...``) and a few
    well-known non-hierarchical schemes count.
    """
    if "://" in text and _SCHEME_RE.match(text) and not any(c.isspace() for c in text):
        return True
    lowered = text.lower()
    return lowered.startswith(("urn:", "mailto:", "doi:")) and len(text) > 5


_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def _escape_literal(s: str) -> str:
    out = []
    for ch in s:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def serialize_term(term: Term) -> str:
    """N-Triples form of a term (the canonical text used for sorting and output)."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, Blank):
        return f"_:{term.label}"
    if term.language is not None:
        return f'"{_escape_literal(term.lexical)}"@{term.language}'
    if term.datatype == XSD_STRING:
        return f'"{_escape_literal(term.lexical)}"'
    return f'"{_escape_literal(term.lexical)}"^^<{term.datatype}>'


def serialize_triple(t: Triple) -> str:
    return f"{serialize_term(t.subject)} {serialize_term(t.predicate)} {serialize_term(t.object)} ."


def triple_sort_key(t: Triple) -> tuple[str, str, str]:
    return (serialize_term(t.subject), serialize_term(t.predicate), serialize_term(t.object))
