"""Finding records: one detected issue, attributable to a source ontology."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .terms import Term, Triple, serialize_term, serialize_triple


class Category(str, Enum):
    FORMAT_UNSUPPORTED = "FormatUnsupported"
    RARE_PROPERTY_USE = "RarePropertyUse"
    OBJECT_KIND_MISMATCH = "ObjectKindMismatch"
    OBJECT_KIND_SUSPECT = "ObjectKindSuspect"
    XREF_BLANK_TARGET = "XrefBlankTarget"
    XREF_URI_TARGET = "XrefUriTarget"
    XREF_UNKNOWN_PREFIX = "XrefUnknownPrefix"
    NON_URI_MATCH_VALUE = "NonUriMatchValue"
    CONFLICTING_PREFERRED = "ConflictingPreferred"
    SAMEAS_VIOLATION = "SameAsViolation"
    MISSING_PAIRED_REFERENCE = "MissingPairedReference"
    CLUSTER_REF_CONFLICT = "ClusterRefConflict"
    CLUSTER_REF_MISSING = "ClusterRefMissing"
    ALIGNMENT_SUSPECT = "AlignmentSuspect"
    CONFLATION_SUSPECT = "ConflationSuspect"


class Severity(str, Enum):
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"

    @property
    def rank(self) -> int:
        return {"info": 0, "warning": 1, "error": 2}[self.value]


Subject = Union[Term, tuple[Term, Term], str]


@dataclass
class Finding:
    category: Category
    severity: Severity
    ontology: str
    subject: Subject
    evidence: tuple[Triple, ...] = ()
    fixable: bool = False
    suggested_fix: Optional[Triple] = None
    detail: str = ""

    def subject_text(self) -> Union[str, list[str]]:
        if isinstance(self.subject, str):
            return self.subject
        if isinstance(self.subject, tuple):
            return [serialize_term(t) for t in self.subject]
        return serialize_term(self.subject)

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "severity": self.severity.value,
            "ontology": self.ontology,
            "subject": self.subject_text(),
            "evidence": [serialize_triple(t) for t in self.evidence],
            "fixable": self.fixable,
            "suggested_fix": serialize_triple(self.suggested_fix) if self.suggested_fix else None,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


def max_severity(findings) -> Optional[Severity]:
    worst: Optional[Severity] = None
    for f in findings:
        if worst is None or f.severity.rank > worst.rank:
            worst = f.severity
    return worst
