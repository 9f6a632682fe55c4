"""Inter-rater agreement statistics.

Fleiss' kappa wants every item rated by the same number of raters, so the
report computes it over the items all reviewers covered. Krippendorff's
alpha tolerates missing cells and, on the -2..2 verdict scale, defaults to
the ordinal difference metric.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .store import ReviewStore, VALID_SCORES


class DegenerateCategoriesError(ValueError):
    """Expected agreement is 1 (all ratings in one category): kappa undefined."""


class NoVariationError(ValueError):
    """Expected disagreement is 0 (all ratings identical): alpha undefined."""


def majority_verdict(scores: Sequence[int]) -> str:
    """Categorical majority over wrong/good/unsure buckets; ties are unsure."""
    if not scores:
        raise ValueError("need at least one verdict")
    buckets = Counter("wrong" if s < 0 else "good" if s > 0 else "unsure" for s in scores)
    best = max(buckets.values())
    winners = [label for label, count in buckets.items() if count == best]
    return winners[0] if len(winners) == 1 else "unsure"


def fleiss_kappa(matrix: Sequence[Sequence[int]]) -> float:
    """Fleiss' kappa from an item x category count matrix.

    kappa = (P_bar - Pe_bar) / (1 - Pe_bar); perfect observed agreement
    returns exactly 1.0.
    """
    m = np.asarray(matrix, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] < 1:
        raise ValueError("expected a 2-D item x category count matrix")
    row_sums = m.sum(axis=1)
    n = int(row_sums[0])
    if n < 2 or not np.all(row_sums == n):
        raise ValueError("every item must be rated by the same number of raters (>= 2)")
    p_i = (np.square(m).sum(axis=1) - n) / (n * (n - 1))
    p_bar = float(p_i.mean())
    p_j = m.sum(axis=0) / m.sum()
    p_e = float(np.square(p_j).sum())
    if p_e >= 1.0:
        raise DegenerateCategoriesError("all ratings fall in a single category")
    return (p_bar - p_e) / (1.0 - p_e)


def krippendorff_alpha(
    units: Sequence[Sequence[float]], metric: str = "ordinal", scale: Optional[Sequence[float]] = None
) -> float:
    """Krippendorff's alpha over rating units with missing data.

    `units` holds one list of ratings per item; absent ratings are simply
    absent. Units with fewer than two ratings cannot be paired and are
    ignored. alpha = 1 - Do/De via the coincidence matrix.
    """
    if metric not in ("nominal", "ordinal"):
        raise ValueError(f"unknown metric {metric!r}")
    pairable = [list(u) for u in units if len(u) >= 2]
    values = [v for u in pairable for v in u]
    if not values:
        raise ValueError("need at least 2 paired ratings")

    order = list(scale) if scale is not None else sorted(set(values))
    index = {v: i for i, v in enumerate(order)}
    k = len(order)

    coincidence = np.zeros((k, k), dtype=np.float64)
    for unit in pairable:
        m = len(unit)
        for i, a in enumerate(unit):
            for j, b in enumerate(unit):
                if i != j:
                    coincidence[index[a], index[b]] += 1.0 / (m - 1)
    marginals = coincidence.sum(axis=1)
    n = marginals.sum()

    delta = np.zeros((k, k), dtype=np.float64)
    for c in range(k):
        for d in range(k):
            if c == d:
                continue
            if metric == "nominal":
                delta[c, d] = 1.0
            else:
                lo, hi = min(c, d), max(c, d)
                span = marginals[lo : hi + 1].sum()
                delta[c, d] = (span - (marginals[c] + marginals[d]) / 2.0) ** 2

    d_o = float((coincidence * delta).sum() / n)
    d_e = float((np.outer(marginals, marginals) * delta).sum() / (n * (n - 1)))
    if d_e == 0.0:
        raise NoVariationError("all ratings identical; alpha undefined")
    return 1.0 - d_o / d_e


@dataclass
class ReviewerStats:
    mean: float
    std: float
    count: int


@dataclass
class AgreementReport:
    per_reviewer: dict[str, ReviewerStats]
    fleiss_kappa: Optional[float]
    krippendorff_alpha: Optional[float]
    alpha_metric: str
    majority: dict[str, str]
    items_rated_by_all: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "per_reviewer": {
                r: {"mean": s.mean, "std": s.std, "count": s.count}
                for r, s in sorted(self.per_reviewer.items())
            },
            "fleiss_kappa": self.fleiss_kappa,
            "krippendorff_alpha": self.krippendorff_alpha,
            "alpha_metric": self.alpha_metric,
            "majority": dict(sorted(self.majority.items())),
            "items_rated_by_all": self.items_rated_by_all,
            "notes": self.notes,
        }


def compute_agreement(store: ReviewStore, metric: str = "ordinal") -> AgreementReport:
    """Agreement over the current-verdict view of the journal."""
    by_item = store.verdicts_by_item()
    reviewers = store.reviewers()
    notes: list[str] = []

    per_reviewer: dict[str, ReviewerStats] = {}
    for reviewer in reviewers:
        scores = [v.score for (item, r), v in store.current.items() if r == reviewer]
        arr = np.asarray(scores, dtype=np.float64)
        per_reviewer[reviewer] = ReviewerStats(float(arr.mean()), float(arr.std()), len(scores))

    majority = {item: majority_verdict([v.score for v in rv.values()]) for item, rv in sorted(by_item.items())}

    kappa: Optional[float] = None
    complete = [item for item, rv in by_item.items() if len(rv) == len(reviewers)]
    if len(reviewers) >= 2 and complete:
        matrix = []
        for item in sorted(complete):
            counts = Counter(by_item[item][r].score for r in reviewers)
            matrix.append([counts.get(s, 0) for s in VALID_SCORES])
        try:
            kappa = fleiss_kappa(matrix)
        except (DegenerateCategoriesError, ValueError) as exc:
            notes.append(f"fleiss_kappa undefined: {exc}")

    alpha: Optional[float] = None
    units = [[v.score for v in rv.values()] for _, rv in sorted(by_item.items())]
    if any(len(u) >= 2 for u in units):
        try:
            alpha = krippendorff_alpha(units, metric=metric, scale=VALID_SCORES)
        except (NoVariationError, ValueError) as exc:
            notes.append(f"krippendorff_alpha undefined: {exc}")

    return AgreementReport(
        per_reviewer=per_reviewer,
        fleiss_kappa=kappa,
        krippendorff_alpha=alpha,
        alpha_metric=metric,
        majority=majority,
        items_rated_by_all=len(complete),
        notes=notes,
    )
