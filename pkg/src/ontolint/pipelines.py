"""End-to-end check pipelines behind the CLI subcommands.

Each pipeline is a pure function from loaded inputs to findings/artifacts, so
the CLI stays a thin argument-parsing layer and the flows are testable
without a shell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cluster import (
    ClusterSet,
    ExternalRef,
    Patch,
    build_clusters,
    check_intra_cluster_refs,
    check_kb_pairing,
    collect_external_refs,
    merge_clusters,
    sameas_violation_findings,
    sameas_violations,
)
from .conflation import (
    ClusterScore,
    EmbeddingProvider,
    ReviewItemSpec,
    review_item_from_outlier,
    score_cluster,
    select_suspects,
)
from .findings import Finding
from .graph import Dataset, Graph
from .netqa import LinkGraph, detect_outliers
from .profiler import (
    RangeRule,
    effective_rules,
    find_object_kind_conflicts,
    find_rare_properties,
    profile_properties,
)
from .terms import OWL_SAMEAS, RDFS_LABEL, Iri, Literal
from .xref import (
    DEFAULT_XREF_PROPERTIES,
    PrefixRegistry,
    classify_xref,
    extract_xrefs,
    summarize_xrefs,
    xref_findings,
)

CSO_SCHEMA = "https://cso.kmi.open.ac.uk/schema/cso#"
CSO_RELATED_EQUIVALENT = CSO_SCHEMA + "relatedEquivalent"
CSO_PREFERENTIAL_EQUIVALENT = CSO_SCHEMA + "preferentialEquivalent"


def lint_pipeline(
    dataset: Dataset,
    rare_threshold: int = 10,
    minority_frac: float = 0.10,
    user_rules: Sequence[RangeRule] = (),
    xref_properties: frozenset[str] = DEFAULT_XREF_PROPERTIES,
) -> list[Finding]:
    """Property profiling checks: rare properties + object-kind conflicts.

    Xref properties are excluded from the object-kind heuristic; their values
    are legitimately mixed and get their own classification pass.
    """
    profiles = profile_properties(dataset)
    rules = effective_rules(profiles, user_rules)
    findings = find_rare_properties(profiles, rare_threshold)
    findings += find_object_kind_conflicts(
        profiles, rules, dataset, minority_frac=minority_frac, exclude=set(xref_properties)
    )
    return findings


def xref_pipeline(
    dataset: Dataset,
    registry: PrefixRegistry,
    properties: frozenset[str] = DEFAULT_XREF_PROPERTIES,
    extra_known_targets: frozenset[str] = frozenset(),
):
    """Extract, classify, and summarize cross-ontology references.

    Valid URI targets are subjects present in the loaded dataset plus an
    optional allow-list.
    """
    known = frozenset(dataset.all_subject_iris()) | extra_known_targets
    occurrences = extract_xrefs(dataset, properties)
    classified = [(occ, classify_xref(occ, registry, known)) for occ in occurrences]
    summary = summarize_xrefs(classified)
    findings = xref_findings(classified)
    return classified, summary, findings


@dataclass
class CsoConfig:
    equiv_props: frozenset[str] = frozenset({CSO_RELATED_EQUIVALENT})
    pref_prop: str = CSO_PREFERENTIAL_EQUIVALENT
    sameas_prop: str = OWL_SAMEAS
    internal_prefix: str = "https://cso.kmi.open.ac.uk/topics/"
    kb_map: dict[str, str] = field(
        default_factory=lambda: {
            "dbpedia.org": "dbpedia",
            "wikidata.org": "wikidata",
            "yago-knowledge.org": "yago",
        }
    )
    pair_a: str = "dbpedia"
    pair_b: str = "wikidata"
    correspondence: dict[str, str] = field(default_factory=dict)


@dataclass
class CsoCheckResult:
    clusters: ClusterSet
    refs: list[ExternalRef]
    findings: list[Finding]
    patch: Patch


def cso_check_pipeline(graph: Graph, config: CsoConfig, ontology: str = "combined") -> CsoCheckResult:
    """All cluster-consistency checks: identity logic, KB pairing, intra-cluster refs."""
    clusters = build_clusters(graph, config.equiv_props, config.pref_prop)
    refs = collect_external_refs(graph, config.kb_map, config.sameas_prop)
    findings: list[Finding] = list(clusters.conflicts)

    pairs = sameas_violations(graph, clusters, config.sameas_prop, config.internal_prefix)
    findings += sameas_violation_findings(pairs, ontology)

    findings += check_kb_pairing(
        refs,
        config.pair_a,
        config.pair_b,
        correspondence=config.correspondence,
        clusters=clusters,
        ref_prop=config.sameas_prop,
        ontology=ontology,
    )

    patch = Patch()
    for kb in sorted(set(config.kb_map.values())):
        kb_findings, kb_patch = check_intra_cluster_refs(
            clusters, refs, kb, ref_prop=config.sameas_prop, ontology=ontology
        )
        findings += kb_findings
        kb_patch.merged_into(patch)
    return CsoCheckResult(clusters, refs, findings, patch)


def cso_merge_pipeline(graph: Graph, config: CsoConfig) -> tuple[Graph, dict[str, str], ClusterSet]:
    clusters = build_clusters(graph, config.equiv_props, config.pref_prop)
    merged, mapping = merge_clusters(graph, clusters, config.pref_prop)
    return merged, mapping, clusters


def cluster_labels(graph: Graph, clusters: ClusterSet) -> dict[str, list[str]]:
    """One label per member (the least label when several), ordered by member IRI."""
    label_prop = Iri(RDFS_LABEL)
    out: dict[str, list[str]] = {}
    for canonical, cluster in clusters.clusters.items():
        labels = []
        for member in sorted(cluster.members):
            texts = sorted(
                t.object.lexical
                for t in graph.match(s=Iri(member), p=label_prop)
                if isinstance(t.object, Literal)
            )
            if texts:
                labels.append(texts[0])
        if labels:
            out[canonical] = labels
    return out


def conflation_pipeline(
    graph: Graph,
    provider: EmbeddingProvider,
    equiv_props: frozenset[str],
    pref_prop: str,
    min_size: int = 3,
    mean_cut: float = 0.45,
    std_cut: float = 0.15,
    top_k: Optional[int] = None,
) -> tuple[list[ClusterScore], list[ReviewItemSpec]]:
    """Score every >=2-label cluster and queue the systematic suspects."""
    clusters = build_clusters(graph, equiv_props, pref_prop)
    scores = []
    for canonical, labels in sorted(cluster_labels(graph, clusters).items()):
        if len(labels) < 2:
            continue
        scores.append(score_cluster(labels, provider, cluster=canonical))
    items = select_suspects(scores, min_size=min_size, mean_cut=mean_cut, std_cut=std_cut, top_k=top_k)
    return scores, items


def outlier_pipeline(
    graph: LinkGraph, max_keep_frac: float = 0.5, seed: int = 0
) -> list[ReviewItemSpec]:
    candidates = detect_outliers(graph, max_keep_frac=max_keep_frac, seed=seed)
    return [review_item_from_outlier(c.node, c.tactic, c.evidence) for c in candidates]
