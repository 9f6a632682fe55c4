"""Cross-ontology reference extraction and classification.

Xref values are supposed to be `Namespace:Identifier` strings, but in the
wild they are also full URIs, blank nodes, underscore-separated identifiers,
and prefixes nobody registered. Classification resolves what it can through
a prefix registry (with synonym support, e.g. the several SNOMED CT prefixes)
and sorts everything into a fixed taxonomy:

    URI      - valid known target / external (by domain)
    Textual  - known OBO prefix / other registry prefix / unknown
    Blank    - empty blank node target
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence
from urllib.parse import urlsplit

from .findings import Category, Finding, Severity
from .graph import Dataset
from .terms import (
    OBO_IN_OWL,
    SKOS,
    Blank,
    Iri,
    Literal,
    Term,
    Triple,
    is_absolute_iri_text,
    serialize_term,
    triple_sort_key,
)

HAS_DB_XREF = OBO_IN_OWL + "hasDbXref"
HAS_ALTERNATIVE_ID = OBO_IN_OWL + "hasAlternativeId"
SKOS_MATCH_PROPERTIES = frozenset(
    SKOS + name
    for name in ("exactMatch", "closeMatch", "broadMatch", "narrowMatch", "relatedMatch")
)
DEFAULT_XREF_PROPERTIES = frozenset({HAS_DB_XREF, HAS_ALTERNATIVE_ID}) | SKOS_MATCH_PROPERTIES


class NotACurieError(ValueError):
    pass


class Separator(str, Enum):
    COLON = "Colon"
    UNDERSCORE = "Underscore"


@dataclass(frozen=True)
class CurieParse:
    prefix: str
    local_id: str
    separator: Separator
    raw: str


def parse_curie(text: str) -> CurieParse:
    """Split a textual identifier into prefix and local id.

    Splits on the first ':' when present, otherwise on the last '_' (the
    nonstandard OBO habit, so "GO_0008150" keeps its numeric local id).
    Absolute IRIs and unsplittable strings raise NotACurieError.
    """
    if is_absolute_iri_text(text):
        raise NotACurieError(f"absolute IRI, not a CURIE: {text!r}")
    if ":" in text:
        prefix, _, local = text.partition(":")
        if prefix and local:
            return CurieParse(prefix, local, Separator.COLON, text)
        raise NotACurieError(f"empty prefix or local id: {text!r}")
    if "_" in text:
        prefix, _, local = text.rpartition("_")
        if prefix and local:
            return CurieParse(prefix, local, Separator.UNDERSCORE, text)
    raise NotACurieError(f"no usable separator: {text!r}")


@dataclass(frozen=True)
class RegistryEntry:
    canonical: str
    iri_template: str  # contains "{id}"
    obo_member: bool
    synonyms: tuple[str, ...] = ()

    def resolve(self, local_id: str) -> str:
        return self.iri_template.replace("{id}", local_id)


class PrefixRegistry:
    """Case-insensitive prefix lookup with a synonym closure.

    File format, one record per line, tab-separated:
        canonical_prefix  iri_template  obo_member(0/1)  synonym,synonym,...
    """

    def __init__(self, entries: Iterable[RegistryEntry]):
        self._by_prefix: dict[str, RegistryEntry] = {}
        for entry in entries:
            for name in (entry.canonical, *entry.synonyms):
                key = name.casefold()
                existing = self._by_prefix.get(key)
                if existing is not None and existing.canonical != entry.canonical:
                    raise ValueError(
                        f"prefix {name!r} maps to both {existing.canonical!r} and {entry.canonical!r}"
                    )
                self._by_prefix[key] = entry

    def lookup(self, prefix: str) -> Optional[RegistryEntry]:
        return self._by_prefix.get(prefix.casefold())

    def __len__(self) -> int:
        return len({e.canonical for e in self._by_prefix.values()})

    @classmethod
    def from_file(cls, path: str | Path) -> "PrefixRegistry":
        entries = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise ValueError(f"{path}:{lineno}: expected at least 3 tab-separated fields")
            canonical, template, obo = parts[0], parts[1], parts[2]
            synonyms = tuple(s for s in parts[3].split(",") if s) if len(parts) > 3 else ()
            if "{id}" not in template:
                raise ValueError(f"{path}:{lineno}: template missing {{id}} placeholder")
            entries.append(RegistryEntry(canonical, template, obo == "1", synonyms))
        return cls(entries)


class XrefKind(str, Enum):
    URI_VALID_TARGET = "UriValidTarget"
    URI_EXTERNAL = "UriExternal"
    TEXT_OBO_PREFIX = "TextOboPrefix"
    TEXT_REGISTRY_PREFIX = "TextRegistryPrefix"
    TEXT_UNKNOWN = "TextUnknown"
    BLANK_NODE_TARGET = "BlankNodeTarget"


@dataclass(frozen=True)
class XrefClass:
    kind: XrefKind
    resolved_iri: Optional[str] = None
    domain: Optional[str] = None  # only for URI_EXTERNAL
    nonstandard_separator: bool = False


@dataclass(frozen=True)
class XrefOccurrence:
    subject: str
    property: str
    value: Term
    ontology: str

    def triple(self) -> Triple:
        return Triple(Iri(self.subject), Iri(self.property), self.value)


def extract_xrefs(dataset: Dataset, properties: frozenset[str] | set[str]) -> list[XrefOccurrence]:
    """One occurrence per triple whose predicate is a configured xref property."""
    if not properties:
        raise ValueError("xref property set must be non-empty")
    out = []
    for oid, graph in dataset.items():
        rows = []
        for prop in sorted(properties):
            for t in graph.match(p=Iri(prop)):
                if not isinstance(t.subject, Iri):
                    continue
                rows.append((triple_sort_key(t), XrefOccurrence(t.subject.value, prop, t.object, oid)))
        rows.sort(key=lambda r: r[0])
        out.extend(occ for _, occ in rows)
    return out


def _iri_domain(iri: str) -> str:
    host = urlsplit(iri).hostname
    return host.lower() if host else ""


def classify_xref(
    occ: XrefOccurrence, registry: PrefixRegistry, known_targets: frozenset[str] | set[str]
) -> XrefClass:
    """Place one occurrence in the taxonomy; TextUnknown is the sink class."""
    value = occ.value
    if isinstance(value, Blank):
        return XrefClass(XrefKind.BLANK_NODE_TARGET)

    iri_value: Optional[str] = None
    if isinstance(value, Iri):
        iri_value = value.value
    elif isinstance(value, Literal) and is_absolute_iri_text(value.lexical):
        iri_value = value.lexical
    if iri_value is not None:
        if iri_value in known_targets:
            return XrefClass(XrefKind.URI_VALID_TARGET, resolved_iri=iri_value)
        return XrefClass(XrefKind.URI_EXTERNAL, domain=_iri_domain(iri_value))

    assert isinstance(value, Literal)
    try:
        curie = parse_curie(value.lexical)
    except NotACurieError:
        return XrefClass(XrefKind.TEXT_UNKNOWN)
    nonstandard = curie.separator is Separator.UNDERSCORE
    entry = registry.lookup(curie.prefix)
    if entry is None:
        return XrefClass(XrefKind.TEXT_UNKNOWN, nonstandard_separator=nonstandard)
    kind = XrefKind.TEXT_OBO_PREFIX if entry.obo_member else XrefKind.TEXT_REGISTRY_PREFIX
    return XrefClass(kind, resolved_iri=entry.resolve(curie.local_id), nonstandard_separator=nonstandard)


@dataclass
class XrefSummary:
    total: int = 0
    uri_total: int = 0
    uri_valid: int = 0
    uri_domains: Counter = field(default_factory=Counter)
    text_total: int = 0
    text_obo: int = 0
    text_registry: int = 0
    text_unknown: int = 0
    blank: int = 0
    nonstandard_by_kind: Counter = field(default_factory=Counter)

    def top_domains(self, n: int = 3) -> list[tuple[str, int]]:
        return sorted(self.uri_domains.items(), key=lambda kv: (-kv[1], kv[0]))[:n]


def summarize_xrefs(classified: Sequence[tuple[XrefOccurrence, XrefClass]]) -> XrefSummary:
    s = XrefSummary()
    for _, cls in classified:
        s.total += 1
        if cls.nonstandard_separator:
            s.nonstandard_by_kind[cls.kind.value] += 1
        if cls.kind is XrefKind.URI_VALID_TARGET:
            s.uri_total += 1
            s.uri_valid += 1
        elif cls.kind is XrefKind.URI_EXTERNAL:
            s.uri_total += 1
            s.uri_domains[cls.domain or "(no host)"] += 1
        elif cls.kind is XrefKind.TEXT_OBO_PREFIX:
            s.text_total += 1
            s.text_obo += 1
        elif cls.kind is XrefKind.TEXT_REGISTRY_PREFIX:
            s.text_total += 1
            s.text_registry += 1
        elif cls.kind is XrefKind.TEXT_UNKNOWN:
            s.text_total += 1
            s.text_unknown += 1
        else:
            s.blank += 1
    return s


def render_xref_summary_markdown(s: XrefSummary, top_n: int = 3) -> str:
    from .reporting import percent_text

    def pct(n: int) -> str:
        return percent_text(n, s.total)

    lines = [
        "| Type | | # references | % total |",
        "| --- | --- | --- | --- |",
        f"| **URI** | | {s.uri_total} | {pct(s.uri_total)} |",
        f"| | valid known target | {s.uri_valid} | {pct(s.uri_valid)} |",
    ]
    top = s.top_domains(top_n)
    for domain, count in top:
        lines.append(f"| | {domain} | {count} | {pct(count)} |")
    other = s.uri_total - s.uri_valid - sum(c for _, c in top)
    lines.append(f"| | other | {other} | {pct(other)} |")
    lines += [
        f"| **Textual** | | {s.text_total} | {pct(s.text_total)} |",
        f"| | recognized OBO identifier | {s.text_obo} | {pct(s.text_obo)} |",
        f"| | recognized other registry prefix | {s.text_registry} | {pct(s.text_registry)} |",
        f"| | unknown | {s.text_unknown} | {pct(s.text_unknown)} |",
        f"| **Empty blank node** | | {s.blank} | {pct(s.blank)} |",
        f"| **Total** | | {s.total} | {'100.00%' if s.total else '0.00%'} |",
    ]
    if s.nonstandard_by_kind:
        lines.append("")
        lines.append("Nonstandard '_' separators: " + ", ".join(
            f"{kind}={count}" for kind, count in sorted(s.nonstandard_by_kind.items())
        ))
    return "\n".join(lines) + "\n"


def render_xref_summary_json(s: XrefSummary, top_n: int = 3) -> str:
    from .reporting import percent_text

    doc = {
        "total": s.total,
        "uri": {
            "total": s.uri_total,
            "percent": percent_text(s.uri_total, s.total),
            "valid_target": s.uri_valid,
            "top_domains": [
                {"domain": d, "count": c, "percent": percent_text(c, s.total)}
                for d, c in s.top_domains(top_n)
            ],
        },
        "textual": {
            "total": s.text_total,
            "percent": percent_text(s.text_total, s.total),
            "obo_prefix": s.text_obo,
            "registry_prefix": s.text_registry,
            "unknown": s.text_unknown,
        },
        "blank": s.blank,
        "nonstandard_separators": dict(sorted(s.nonstandard_by_kind.items())),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def xref_findings(classified: Sequence[tuple[XrefOccurrence, XrefClass]]) -> list[Finding]:
    """Per-occurrence findings from classifications.

    URI-valued xrefs are flagged (the value slot expects identifiers), blank
    node targets are modeling errors, unknown prefixes are unresolvable, and
    literal-valued skos match properties get a NonUriMatchValue flag.
    """
    findings = []
    for occ, cls in classified:
        evidence = (occ.triple(),)
        if cls.kind in (XrefKind.URI_VALID_TARGET, XrefKind.URI_EXTERNAL):
            detail = "valid known target" if cls.kind is XrefKind.URI_VALID_TARGET else f"external domain {cls.domain}"
            findings.append(
                Finding(
                    category=Category.XREF_URI_TARGET,
                    severity=Severity.WARNING,
                    ontology=occ.ontology,
                    subject=Iri(occ.subject),
                    evidence=evidence,
                    detail=f"URI used where an identifier is expected ({detail})",
                )
            )
        elif cls.kind is XrefKind.BLANK_NODE_TARGET:
            findings.append(
                Finding(
                    category=Category.XREF_BLANK_TARGET,
                    severity=Severity.ERROR,
                    ontology=occ.ontology,
                    subject=Iri(occ.subject),
                    evidence=evidence,
                    detail="cross-reference points to a blank node",
                )
            )
        elif cls.kind is XrefKind.TEXT_UNKNOWN:
            findings.append(
                Finding(
                    category=Category.XREF_UNKNOWN_PREFIX,
                    severity=Severity.WARNING,
                    ontology=occ.ontology,
                    subject=Iri(occ.subject),
                    evidence=evidence,
                    detail=f"unresolvable identifier {serialize_term(occ.value)}",
                )
            )
        if occ.property in SKOS_MATCH_PROPERTIES and isinstance(occ.value, Literal):
            findings.append(
                Finding(
                    category=Category.NON_URI_MATCH_VALUE,
                    severity=Severity.WARNING,
                    ontology=occ.ontology,
                    subject=Iri(occ.subject),
                    evidence=evidence,
                    detail="skos match property with a literal value",
                )
            )
    return findings
