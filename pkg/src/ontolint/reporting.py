"""Finding aggregation and report rendering.

Summary rows are per-ontology category counts. Because ontologies can import
slices of each other, the same underlying issue may surface in several rows;
with `dedup=True` the totals count it once (keyed by category + evidence,
ignoring attribution), so totals may be lower than the column sums.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable

from .findings import Finding
from .terms import serialize_triple


def percent_text(count: int, total: int) -> str:
    """Render count/total as a percentage, round-half-even to 2 decimals.

    Positive shares below one basis point render as "<0.01%" rather than a
    misleading "0.00%"/"0.01%".
    """
    if total <= 0 or count <= 0:
        return "0.00%"
    share = Decimal(count) / Decimal(total)
    if share < Decimal("0.0001"):
        return "<0.01%"
    pct = (share * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN)
    return f"{pct}%"


@dataclass
class SummaryTable:
    rows: dict[str, Counter] = field(default_factory=dict)
    totals: Counter = field(default_factory=Counter)
    deduped: bool = False

    def categories(self) -> list[str]:
        cats: set[str] = set(self.totals)
        for c in self.rows.values():
            cats.update(c)
        return sorted(cats)

    def grand_total(self) -> int:
        return sum(self.totals.values())


def _dedup_key(f: Finding) -> tuple:
    return (f.category.value, tuple(sorted(serialize_triple(t) for t in f.evidence)), str(f.subject_text()))


def aggregate(findings: Iterable[Finding], dedup: bool = False) -> SummaryTable:
    table = SummaryTable(deduped=dedup)
    seen: set[tuple] = set()
    for f in findings:
        row = table.rows.setdefault(f.ontology, Counter())
        row[f.category.value] += 1
        if dedup:
            key = _dedup_key(f)
            if key in seen:
                continue
            seen.add(key)
        table.totals[f.category.value] += 1
    table.rows = dict(sorted(table.rows.items()))
    return table


def render(table: SummaryTable, format: str = "markdown", findings: Iterable[Finding] | None = None) -> str:
    if format == "markdown":
        return _render_markdown(table)
    if format == "json":
        return _render_json(table)
    if format == "jsonl-findings":
        if findings is None:
            raise ValueError("jsonl-findings format requires the findings stream")
        return render_findings_jsonl(findings)
    raise ValueError(f"unknown report format: {format}")


def _render_markdown(table: SummaryTable) -> str:
    cats = table.categories()
    if not cats:
        return "| Ontology | Total |\n| --- | --- |\n| **All** | **0** |\n"
    header = "| Ontology | " + " | ".join(cats) + " | Total |"
    sep = "| --- |" + " --- |" * (len(cats) + 1)
    lines = [header, sep]
    for oid, row in table.rows.items():
        counts = [row.get(c, 0) for c in cats]
        lines.append(f"| {oid} | " + " | ".join(str(n) for n in counts) + f" | {sum(counts)} |")
    totals = [table.totals.get(c, 0) for c in cats]
    lines.append(
        "| **All** | " + " | ".join(f"**{n}**" for n in totals) + f" | **{sum(totals)}** |"
    )
    return "\n".join(lines) + "\n"


def _render_json(table: SummaryTable) -> str:
    doc = {
        "rows": {oid: dict(sorted(row.items())) for oid, row in table.rows.items()},
        "totals": dict(sorted(table.totals.items())),
        "grand_total": table.grand_total(),
        "deduped": table.deduped,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_findings_jsonl(findings: Iterable[Finding]) -> str:
    return "".join(f.to_json() + "\n" for f in findings)


def aggregate_dicts(records: Iterable[dict], dedup: bool = False) -> SummaryTable:
    """Aggregate already-serialized finding records (JSON-lines rows)."""
    table = SummaryTable(deduped=dedup)
    seen: set[tuple] = set()
    for rec in records:
        ontology = rec.get("ontology", "combined")
        category = rec.get("category", "Unknown")
        row = table.rows.setdefault(ontology, Counter())
        row[category] += 1
        if dedup:
            key = (category, tuple(sorted(rec.get("evidence", ()))), str(rec.get("subject")))
            if key in seen:
                continue
            seen.add(key)
        table.totals[category] += 1
    table.rows = dict(sorted(table.rows.items()))
    return table
