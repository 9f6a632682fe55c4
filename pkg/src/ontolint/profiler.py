"""Predicate usage profiling: rarely-used/undefined properties and
object-kind conflicts.

Rare, undefined, or misspelled properties are a strong error signal in
OBO-style ontologies, where curation conventions expect every annotation
property to be declared and reused widely. Object-kind conflicts (a property
whose values are sometimes IRIs and sometimes literals) are caught either
against an explicit range rule or, in the absence of one, by a
majority-convention heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .findings import Category, Finding, Severity
from .graph import Dataset
from .terms import (
    RDF_LANGSTRING,
    RDF_TYPE,
    RDFS,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    XSD,
    Blank,
    Iri,
    Literal,
    Triple,
    iri_well_formed,
    is_absolute_iri_text,
)


class RangeKind(str, Enum):
    IRI_ONLY = "IriOnly"
    LITERAL_ONLY = "LiteralOnly"
    MIXED = "Mixed"
    UNKNOWN = "Unknown"


class RuleSource(str, Enum):
    DECLARED_RANGE = "DeclaredRange"
    USER_CONFIG = "UserConfig"


@dataclass(frozen=True)
class RangeRule:
    predicate: str
    expected: RangeKind  # IRI_ONLY or LITERAL_ONLY
    source: RuleSource


@dataclass
class PropertyProfile:
    predicate: str
    uses_total: int
    uses_by_ontology: dict[str, int]
    object_kinds: dict[str, int]  # keys: iri, blank, literal
    distinct_subjects: int
    defined: bool
    declared_range: RangeKind = RangeKind.UNKNOWN

    def attribution(self) -> str:
        """Ontology id for findings: the single user, or "combined"."""
        if len(self.uses_by_ontology) == 1:
            return next(iter(self.uses_by_ontology))
        return Dataset.COMBINED


_LITERAL_RANGE_MARKERS = (RDFS + "Literal", RDF_LANGSTRING, RDFS + "PlainLiteral")


def _range_side(range_iri: str) -> RangeKind:
    if range_iri.startswith(XSD) or range_iri in _LITERAL_RANGE_MARKERS:
        return RangeKind.LITERAL_ONLY
    return RangeKind.IRI_ONLY


def profile_properties(dataset: Dataset) -> list[PropertyProfile]:
    """One profile per distinct predicate, sorted by uses desc then IRI.

    A predicate counts as defined when its IRI appears anywhere in the
    dataset as the subject of an rdf:type *Property declaration or of an
    rdfs:domain/range/label triple.
    """
    uses: dict[str, dict[str, int]] = {}
    kinds: dict[str, dict[str, int]] = {}
    subjects: dict[str, set] = {}
    declared: set[str] = set()
    ranges: dict[str, set[RangeKind]] = {}

    for oid, graph in dataset.items():
        for t in graph:
            p = t.predicate.value
            uses.setdefault(p, {}).setdefault(oid, 0)
            uses[p][oid] += 1
            kind = "iri" if isinstance(t.object, Iri) else "blank" if isinstance(t.object, Blank) else "literal"
            kinds.setdefault(p, {"iri": 0, "blank": 0, "literal": 0})[kind] += 1
            subjects.setdefault(p, set()).add(t.subject)

            if isinstance(t.subject, Iri):
                s = t.subject.value
                pred = t.predicate.value
                if pred == RDF_TYPE and isinstance(t.object, Iri) and t.object.value.endswith("Property"):
                    declared.add(s)
                elif pred in (RDFS_DOMAIN, RDFS_RANGE, RDFS_LABEL):
                    declared.add(s)
                if pred == RDFS_RANGE and isinstance(t.object, Iri):
                    ranges.setdefault(s, set()).add(_range_side(t.object.value))

    profiles = []
    for p, by_ont in uses.items():
        sides = ranges.get(p, set())
        if not sides:
            declared_range = RangeKind.UNKNOWN
        elif len(sides) == 1:
            declared_range = next(iter(sides))
        else:
            declared_range = RangeKind.MIXED
        profiles.append(
            PropertyProfile(
                predicate=p,
                uses_total=sum(by_ont.values()),
                uses_by_ontology=dict(sorted(by_ont.items())),
                object_kinds=kinds[p],
                distinct_subjects=len(subjects[p]),
                defined=p in declared,
                declared_range=declared_range,
            )
        )
    profiles.sort(key=lambda pr: (-pr.uses_total, pr.predicate))
    return profiles


def find_rare_properties(profiles: Sequence[PropertyProfile], threshold: int = 10) -> list[Finding]:
    """Flag predicates with at most `threshold` uses.

    Warning by default; Error when the predicate is undefined anywhere in the
    dataset or its IRI is malformed.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    findings = []
    for pr in profiles:
        if pr.uses_total > threshold:
            continue
        malformed = not iri_well_formed(pr.predicate)
        severity = Severity.ERROR if (not pr.defined or malformed) else Severity.WARNING
        reasons = []
        if not pr.defined:
            reasons.append("undefined")
        if malformed:
            reasons.append("malformed IRI")
        findings.append(
            Finding(
                category=Category.RARE_PROPERTY_USE,
                severity=severity,
                ontology=pr.attribution(),
                subject=Iri(pr.predicate),
                detail=f"{pr.uses_total} uses" + (f" ({', '.join(reasons)})" if reasons else ""),
            )
        )
    return findings


def load_range_rules(path: str | Path) -> list[RangeRule]:
    """User rule file: one `predicate-iri IriOnly|LiteralOnly` per line."""
    rules = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected '<predicate> <IriOnly|LiteralOnly>'")
        iri = parts[0].strip("<>")
        try:
            expected = RangeKind(parts[1])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: unknown range kind {parts[1]!r}") from None
        if expected not in (RangeKind.IRI_ONLY, RangeKind.LITERAL_ONLY):
            raise ValueError(f"{path}:{lineno}: rules must be IriOnly or LiteralOnly")
        rules.append(RangeRule(iri, expected, RuleSource.USER_CONFIG))
    return rules


def effective_rules(
    profiles: Sequence[PropertyProfile], user_rules: Iterable[RangeRule] = ()
) -> dict[str, RangeRule]:
    """Merge declared-range rules with user config; user config wins."""
    merged: dict[str, RangeRule] = {}
    for pr in profiles:
        if pr.declared_range in (RangeKind.IRI_ONLY, RangeKind.LITERAL_ONLY):
            merged[pr.predicate] = RangeRule(pr.predicate, pr.declared_range, RuleSource.DECLARED_RANGE)
    for rule in user_rules:
        merged[rule.predicate] = rule
    return merged


def _kind_of(term) -> str:
    if isinstance(term, Iri):
        return "iri"
    if isinstance(term, Blank):
        return "blank"
    return "literal"


def find_object_kind_conflicts(
    profiles: Sequence[PropertyProfile],
    rules: dict[str, RangeRule] | Sequence[RangeRule],
    dataset: Dataset,
    minority_frac: float = 0.10,
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[Finding]:
    """Object-kind findings, rule-based and heuristic.

    With a rule every violating triple is an ObjectKindMismatch; a literal
    that spells an absolute IRI under an IriOnly rule gets a suggested fix.
    Without a rule, minority-kind triples below `minority_frac` of a mixed
    predicate's uses are flagged ObjectKindSuspect. Predicates in `exclude`
    (typically the xref properties, which get their own analysis) are
    skipped entirely.
    """
    if not isinstance(rules, dict):
        rules = {r.predicate: r for r in rules}
    findings = []
    by_predicate = {pr.predicate: pr for pr in profiles}

    for predicate, pr in by_predicate.items():
        if predicate in exclude:
            continue
        rule = rules.get(predicate)
        p_term = Iri(predicate)
        if rule is not None:
            wanted = "iri" if rule.expected is RangeKind.IRI_ONLY else "literal"
            for oid, graph in dataset.items():
                for t in graph.match(p=p_term):
                    kind = _kind_of(t.object)
                    if kind == wanted:
                        continue
                    fixable = False
                    fix = None
                    if (
                        rule.expected is RangeKind.IRI_ONLY
                        and isinstance(t.object, Literal)
                        and is_absolute_iri_text(t.object.lexical)
                    ):
                        fixable = True
                        fix = Triple(t.subject, t.predicate, Iri(t.object.lexical))
                    findings.append(
                        Finding(
                            category=Category.OBJECT_KIND_MISMATCH,
                            severity=Severity.ERROR,
                            ontology=oid,
                            subject=t.subject,
                            evidence=(t,),
                            fixable=fixable,
                            suggested_fix=fix,
                            detail=f"expected {rule.expected.value} ({rule.source.value}), found {kind}",
                        )
                    )
        else:
            total = pr.uses_total
            nonzero = {k: v for k, v in pr.object_kinds.items() if v > 0}
            if len(nonzero) < 2:
                continue
            majority = max(nonzero.values())
            minority_kinds = {
                k for k, v in nonzero.items() if v < majority and v / total < minority_frac
            }
            if not minority_kinds:
                continue
            for oid, graph in dataset.items():
                for t in graph.match(p=p_term):
                    kind = _kind_of(t.object)
                    if kind in minority_kinds:
                        findings.append(
                            Finding(
                                category=Category.OBJECT_KIND_SUSPECT,
                                severity=Severity.WARNING,
                                ontology=oid,
                                subject=t.subject,
                                evidence=(t,),
                                detail=f"minority object kind {kind} "
                                f"({pr.object_kinds[kind]}/{total} uses)",
                            )
                        )
    findings.sort(key=lambda f: (f.category.value, f.ontology, str(f.subject_text())))
    return findings
