"""Content-based RDF format detection.

Ontology files rarely advertise their real serialization: `.owl` can hide
RDF/XML, OWL/XML, or functional syntax. Detection looks only at the leading
non-whitespace content and never raises; anything unrecognizable comes back
as `Unknown`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class RdfFormat(Enum):
    NTRIPLES = "NTriples"
    TURTLE = "Turtle"
    RDF_XML = "RdfXml"
    OWL_FUNCTIONAL = "OwlFunctional"
    OWL_XML = "OwlXml"
    UNKNOWN = "Unknown"


SUPPORTED_FORMATS = frozenset({RdfFormat.NTRIPLES, RdfFormat.TURTLE})


@dataclass(frozen=True)
class FormatReport:
    detected: RdfFormat
    supported: bool
    evidence: str


_NT_LINE = re.compile(
    r"^\s*(<[^<>\s]*>|_:\S+)\s+<[^<>\s]*>\s+"
    r"(<[^<>\s]*>|_:\S+|\"(?:[^\"\\]|\\.)*\"(?:\^\^<[^<>\s]*>|@[A-Za-z][A-Za-z0-9\-]*)?)"
    r"\s*\.\s*(#.*)?$"
)

_TURTLE_MARKERS = ("@prefix", "@base")
_XML_DECL = re.compile(r"^<\?xml\b")
_XML_ROOT = re.compile(r"<\s*([A-Za-z_][\w.\-]*:)?([A-Za-z_][\w.\-]*)")


def _first_element(text: str) -> str:
    """Local name of the first XML element after declarations/comments."""
    pos = 0
    while True:
        lt = text.find("<", pos)
        if lt < 0:
            return ""
        if text.startswith("<?", lt):
            end = text.find("?>", lt)
            pos = end + 2 if end >= 0 else len(text)
            continue
        if text.startswith("<!--", lt):
            end = text.find("-->", lt)
            pos = end + 3 if end >= 0 else len(text)
            continue
        if text.startswith("<!", lt):
            end = text.find(">", lt)
            pos = end + 1 if end >= 0 else len(text)
            continue
        m = _XML_ROOT.match(text, lt)
        return m.group(2) if m else ""


def sniff_format(data: bytes) -> FormatReport:
    """Detect the serialization of `data`; `Unknown` is a value, not an error."""
    text = data.decode("utf-8", errors="replace").lstrip("﻿")
    stripped = text.lstrip()
    evidence = stripped[:64]

    def report(fmt: RdfFormat) -> FormatReport:
        return FormatReport(fmt, fmt in SUPPORTED_FORMATS, evidence)

    if not stripped:
        return report(RdfFormat.UNKNOWN)

    if _XML_DECL.match(stripped) or stripped.startswith(("<rdf:RDF", "<RDF", "<Ontology")):
        root = _first_element(stripped)
        if root == "RDF":
            return report(RdfFormat.RDF_XML)
        if root == "Ontology":
            return report(RdfFormat.OWL_XML)
        return report(RdfFormat.UNKNOWN)

    head = stripped[:4096]
    first_token = head.split(None, 1)[0]
    if first_token.startswith(("Prefix(", "Ontology(")) or first_token in ("Prefix", "Ontology"):
        if "Prefix(" in head or "Ontology(" in head:
            return report(RdfFormat.OWL_FUNCTIONAL)

    lowered = first_token.lower()
    if lowered in _TURTLE_MARKERS or lowered == "prefix" or lowered == "base":
        return report(RdfFormat.TURTLE)

    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if _NT_LINE.match(line):
            return report(RdfFormat.NTRIPLES)
        break
    return report(RdfFormat.UNKNOWN)
