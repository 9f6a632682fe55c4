"""Review items and the verdict journal.

Verdicts are persisted append-only as JSON lines; the current-verdict view is
a pure fold over the journal (last write per item+reviewer wins, history
retained). That makes writes crash-safe and the file diff-friendly, and a
process restart reconstructs exactly the same state.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

VALID_SCORES = (-2, -1, 0, 1, 2)
SCORE_LABELS = {
    -2: "definitely wrong",
    -1: "probably wrong",
    0: "not sure",
    1: "probably good",
    2: "definitely good",
}
VALID_CATEGORIES = ("valid", "invalid", "other_issues")


class UnknownItemError(KeyError):
    pass


class InvalidScoreError(ValueError):
    pass


class InvalidCategoryError(ValueError):
    pass


@dataclass(frozen=True)
class ReviewItem:
    id: str
    kind: str  # AlignmentSuspect | ConflationSuspect
    payload: dict
    status: str = "open"

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "payload": self.payload, "status": self.status}


@dataclass(frozen=True)
class Verdict:
    item: str
    reviewer: str
    score: int
    category: Optional[str] = None
    timestamp: float = 0.0

    def to_dict(self) -> dict:
        return {
            "item": self.item,
            "reviewer": self.reviewer,
            "score": self.score,
            "category": self.category,
            "timestamp": self.timestamp,
        }


def load_queue(path: str | Path) -> list[ReviewItem]:
    items = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            items.append(
                ReviewItem(rec["id"], rec["kind"], rec["payload"], rec.get("status", "open"))
            )
        except (ValueError, KeyError) as exc:
            raise ValueError(f"{path}:{lineno}: corrupt queue record: {exc}") from None
    return items


class ReviewStore:
    """Items plus an append-only verdict journal."""

    def __init__(self, items: list[ReviewItem], journal_path: str | Path):
        self.items: dict[str, ReviewItem] = {it.id: it for it in items}
        self.journal_path = Path(journal_path)
        self.history: list[Verdict] = []
        self.current: dict[tuple[str, str], Verdict] = {}
        if self.journal_path.exists():
            for line in self.journal_path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                v = Verdict(
                    rec["item"], rec["reviewer"], rec["score"], rec.get("category"), rec.get("timestamp", 0.0)
                )
                self.history.append(v)
                self.current[(v.item, v.reviewer)] = v

    @classmethod
    def open(cls, queue_path: str | Path, journal_path: str | Path) -> "ReviewStore":
        return cls(load_queue(queue_path), journal_path)

    def record_verdict(self, verdict: Verdict) -> Verdict:
        if verdict.item not in self.items:
            raise UnknownItemError(verdict.item)
        if verdict.score not in VALID_SCORES:
            raise InvalidScoreError(f"score must be one of {VALID_SCORES}, got {verdict.score}")
        if verdict.category is not None and verdict.category not in VALID_CATEGORIES:
            raise InvalidCategoryError(
                f"category must be one of {VALID_CATEGORIES}, got {verdict.category!r}"
            )
        if verdict.timestamp == 0.0:
            verdict = Verdict(
                verdict.item, verdict.reviewer, verdict.score, verdict.category, time.time()
            )
        self.journal_path.parent.mkdir(parents=True, exist_ok=True)
        with self.journal_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(verdict.to_dict(), ensure_ascii=False) + "\n")
            fh.flush()
        self.history.append(verdict)
        self.current[(verdict.item, verdict.reviewer)] = verdict
        return verdict

    def current_verdict(self, item: str, reviewer: str) -> Optional[Verdict]:
        return self.current.get((item, reviewer))

    def reviewers(self) -> list[str]:
        return sorted({v.reviewer for v in self.history})

    def verdicts_by_item(self) -> dict[str, dict[str, Verdict]]:
        out: dict[str, dict[str, Verdict]] = {}
        for (item, reviewer), v in self.current.items():
            out.setdefault(item, {})[reviewer] = v
        return out
