"""Term-conflation scoring for synonym clusters.

Labels within one cluster should all name the same concept; a cluster whose
labels are systematically dissimilar most likely groups unrelated terms.
Labels are embedded, an all-pairs cosine matrix computed per cluster, and
clusters with uniformly low similarity are queued for human review.

Embeddings come from a provider: either vectors precomputed by an external
sentence-embedding model (FileProvider), or a dependency-free deterministic
character-trigram hash (HashNgramProvider) that keeps the pipeline and tests
hermetic.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np


class ZeroVectorError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class EmbeddingProvider(Protocol):
    dim: int

    def embed(self, label: str) -> np.ndarray: ...


class HashNgramProvider:
    """Character 3-gram counts hashed into `dim` buckets, L2-normalized.

    Stable across runs and platforms: bucketing uses blake2b, and the
    accumulation order is fixed by the label itself.
    """

    def __init__(self, dim: int = 256):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim

    def embed(self, label: str) -> np.ndarray:
        grams = [label[i : i + 3] for i in range(len(label) - 2)] or [label]
        vec = np.zeros(self.dim, dtype=np.float64)
        for gram in grams:
            digest = hashlib.blake2b(gram.encode("utf-8"), digest_size=8).digest()
            vec[int.from_bytes(digest, "big") % self.dim] += 1.0
        norm = float(np.sqrt(np.dot(vec, vec)))
        return vec / norm


class FileProvider:
    """Vectors loaded from a file keyed by exact label.

    Format: header line `dim d`, then one record per line:
    label TAB space-separated floats. Missing labels fail loudly.
    """

    def __init__(self, path: str | Path):
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("dim "):
            raise ValueError(f"{path}: expected 'dim d' header line")
        self.dim = int(lines[0].split()[1])
        self._vectors: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            label, _, rest = line.partition("\t")
            values = np.array([float(x) for x in rest.split()], dtype=np.float64)
            if values.shape != (self.dim,):
                raise ValueError(f"{path}:{lineno}: expected {self.dim} components")
            self._vectors[label] = values

    def embed(self, label: str) -> np.ndarray:
        try:
            return self._vectors[label]
        except KeyError:
            raise KeyError(f"no vector for label {label!r}") from None


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    if u.shape != v.shape:
        raise DimensionMismatchError(f"dimensions differ: {u.shape} vs {v.shape}")
    nu = float(np.sqrt(np.dot(u, u)))
    nv = float(np.sqrt(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine undefined for the all-zero vector")
    return float(np.dot(u, v) / (nu * nv))


@dataclass(frozen=True)
class LabelScore:
    label: str
    mean_sim: float
    std_sim: float


@dataclass(frozen=True)
class ClusterScore:
    cluster: str
    per_label: tuple[LabelScore, ...]
    cluster_mean: float
    cluster_std: float
    n: int


def score_cluster(labels: Sequence[str], provider: EmbeddingProvider, cluster: str = "") -> ClusterScore:
    """All-pairs cosine statistics for one cluster's labels.

    Per-label mean/std cover that label's similarities to the others
    (self-similarity excluded); cluster mean/std cover all off-diagonal
    entries. Standard deviations are population ones, so two-label clusters
    stay well-defined.
    """
    if len(labels) < 2:
        raise ValueError("a cluster score needs at least 2 labels")
    vectors = np.stack([provider.embed(l) for l in labels])
    norms = np.sqrt((vectors * vectors).sum(axis=1))
    if np.any(norms == 0.0):
        raise ZeroVectorError("cosine undefined for the all-zero vector")
    unit = vectors / norms[:, None]
    sims = np.clip(unit @ unit.T, -1.0, 1.0)
    n = len(labels)
    off_diag = ~np.eye(n, dtype=bool)

    per_label = []
    for i, label in enumerate(labels):
        row = sims[i][off_diag[i]]
        per_label.append(LabelScore(label, float(row.mean()), float(row.std())))
    alls = sims[off_diag]
    return ClusterScore(
        cluster=cluster,
        per_label=tuple(per_label),
        cluster_mean=float(alls.mean()),
        cluster_std=float(alls.std()),
        n=n,
    )


def select_suspects(
    scores: Sequence[ClusterScore],
    min_size: int = 3,
    mean_cut: float = 0.45,
    std_cut: float = 0.15,
    top_k: int | None = None,
) -> list["ReviewItemSpec"]:
    """Clusters that are systematically incoherent: big enough, uniformly low
    similarity (low mean AND low spread). `top_k` keeps only the lowest means."""
    if min_size < 2:
        raise ValueError("min_size must be >= 2")
    kept = [
        s
        for s in scores
        if s.n >= min_size and s.cluster_mean <= mean_cut and s.cluster_std <= std_cut
    ]
    kept.sort(key=lambda s: (s.cluster_mean, s.cluster))
    if top_k is not None:
        kept = kept[:top_k]
    return [review_item_from_score(s) for s in kept]


@dataclass(frozen=True)
class ReviewItemSpec:
    """Payload handed to the review queue (id derived from content)."""

    id: str
    kind: str
    payload: dict

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "payload": self.payload, "status": "open"}


def stable_item_id(kind: str, payload: dict) -> str:
    blob = json.dumps({"kind": kind, "payload": payload}, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def review_item_from_score(score: ClusterScore) -> ReviewItemSpec:
    payload = {
        "cluster": score.cluster,
        "labels": [s.label for s in score.per_label],
        "per_label": [
            {"label": s.label, "mean_sim": round(s.mean_sim, 6), "std_sim": round(s.std_sim, 6)}
            for s in score.per_label
        ],
        "cluster_mean": round(score.cluster_mean, 6),
        "cluster_std": round(score.cluster_std, 6),
        "n": score.n,
    }
    return ReviewItemSpec(stable_item_id("ConflationSuspect", payload), "ConflationSuspect", payload)


def review_item_from_outlier(node: str, tactic: str, evidence: str) -> ReviewItemSpec:
    payload = {"node": node, "tactic": tactic, "evidence": evidence}
    return ReviewItemSpec(stable_item_id("AlignmentSuspect", payload), "AlignmentSuspect", payload)
