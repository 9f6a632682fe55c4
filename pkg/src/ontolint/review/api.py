"""HTTP API for the review workflow.

Endpoints (all JSON, UTF-8):

    GET  /api/items?reviewer=R   items in R's seeded shuffle order, with any
                                 existing verdict by R
    POST /api/verdicts           record one verdict
    GET  /api/stats              agreement report over the journal

The static review UI (when built) is mounted at the root. Each reviewer sees
the queue in their own reproducible random order so judgments stay
independent.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .stats import compute_agreement
from .store import (
    InvalidCategoryError,
    InvalidScoreError,
    ReviewStore,
    UnknownItemError,
    Verdict,
)


class ItemView(BaseModel):
    id: str
    kind: str
    payload: dict
    status: str
    existing_verdict: Optional[int] = None
    existing_category: Optional[str] = None


class VerdictIn(BaseModel):
    item: str
    reviewer: str = Field(min_length=1)
    score: int = Field(ge=-2, le=2)
    category: Optional[str] = None


class VerdictAck(BaseModel):
    ok: bool


class ReviewerStatsOut(BaseModel):
    mean: float
    std: float
    count: int


class StatsOut(BaseModel):
    per_reviewer: dict[str, ReviewerStatsOut]
    fleiss_kappa: Optional[float]
    krippendorff_alpha: Optional[float]
    alpha_metric: str
    majority: dict[str, str]
    items_rated_by_all: int
    notes: list[str]


def reviewer_order(item_ids: list[str], reviewer: str, seed: int) -> list[str]:
    """Per-reviewer shuffle, reproducible from (seed, reviewer)."""
    rng = random.Random(f"{seed}|{reviewer}")
    out = sorted(item_ids)
    rng.shuffle(out)
    return out


def create_app(
    store: ReviewStore,
    seed: int = 0,
    metric: str = "ordinal",
    ui_dir: Optional[str | Path] = None,
) -> FastAPI:
    app = FastAPI(title="ontolint review", version="0.1.0")

    @app.get("/api/items", response_model=list[ItemView])
    def list_items(reviewer: Optional[str] = Query(default=None)):
        ids = sorted(store.items)
        if reviewer:
            ids = reviewer_order(ids, reviewer, seed)
        views = []
        for item_id in ids:
            item = store.items[item_id]
            verdict = store.current_verdict(item_id, reviewer) if reviewer else None
            views.append(
                ItemView(
                    id=item.id,
                    kind=item.kind,
                    payload=item.payload,
                    status=item.status,
                    existing_verdict=verdict.score if verdict else None,
                    existing_category=verdict.category if verdict else None,
                )
            )
        return views

    @app.post("/api/verdicts", response_model=VerdictAck)
    def post_verdict(body: VerdictIn):
        try:
            store.record_verdict(Verdict(body.item, body.reviewer, body.score, body.category))
        except UnknownItemError:
            raise HTTPException(status_code=404, detail=f"unknown item {body.item!r}")
        except (InvalidScoreError, InvalidCategoryError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return VerdictAck(ok=True)

    @app.get("/api/stats", response_model=StatsOut)
    def get_stats():
        report = compute_agreement(store, metric=metric)
        return StatsOut(**report.to_dict())

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def root():
            return {
                "service": "ontolint review",
                "endpoints": ["/api/items", "/api/verdicts", "/api/stats"],
                "ui": "not built; see frontend/README",
            }

    return app
