"""Synonym clusters: construction, merging, and consistency checks.

Topic equivalence properties induce a partition (union-find over the edge
set). The merge transformation collapses each cluster onto its preferred
member, turning the one-entity-per-synonym structure into a conventional
single entity with alternative labels. The same partition drives three
consistency checks over references to external knowledge bases: identity
logic violations, missing paired references, and intra-cluster reference
conflicts, with machine-applicable patches where the fix is unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence
from urllib.parse import urlsplit

from .findings import Category, Finding, Severity
from .graph import Graph
from .terms import (
    OWL_SAMEAS,
    RDFS_LABEL,
    SKOS_ALT_LABEL,
    Iri,
    Term,
    Triple,
    serialize_triple,
    triple_sort_key,
)


class UnionFind:
    """Disjoint sets over hashable items, path compression + union by size."""

    def __init__(self) -> None:
        self._parent: dict = {}
        self._size: dict = {}

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x):
        self.add(x)
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]

    def groups(self) -> dict:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), set()).add(x)
        return out

    def __contains__(self, x) -> bool:
        return x in self._parent


@dataclass
class ClusterSet:
    """Partition of topic IRIs with one preferred member per cluster.

    Clusters are keyed by their canonical member: the preferred one when
    designated, otherwise the lexicographically least member (deterministic
    and auditable).
    """

    clusters: dict[str, "Cluster"]
    equivalence_properties: frozenset[str]
    conflicts: list[Finding] = field(default_factory=list)
    _member_to_canonical: dict[str, str] = field(default_factory=dict, repr=False)

    def canonical_for(self, iri: str) -> Optional[str]:
        return self._member_to_canonical.get(iri)

    def same_cluster(self, a: str, b: str) -> bool:
        ca, cb = self.canonical_for(a), self.canonical_for(b)
        return ca is not None and ca == cb

    def sizes(self) -> list[int]:
        return sorted((len(c.members) for c in self.clusters.values()), reverse=True)


@dataclass
class Cluster:
    canonical: str
    members: frozenset[str]
    preferred: Optional[str]


def build_clusters(
    graph: Graph,
    equiv_props: frozenset[str] | set[str],
    pref_prop: str,
    topics: Optional[set[str]] = None,
) -> ClusterSet:
    """Union-find over equivalence triples (treated as undirected).

    The topic universe defaults to every IRI touched by an equivalence or
    preferred-designation triple; pass `topics` to widen it (singletons form
    singleton clusters). The preferred member is read from the
    self-referential designation `(t, pref_prop, t)`; two self-designating
    members in one cluster yield a ConflictingPreferred finding and the
    IRI-least one is kept.
    """
    if not equiv_props:
        raise ValueError("equivalence property set must be non-empty")

    uf = UnionFind()
    universe: set[str] = set(topics or ())
    self_preferred: set[str] = set()

    for prop in equiv_props:
        for t in graph.match(p=Iri(prop)):
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                universe.add(t.subject.value)
                universe.add(t.object.value)
                uf.union(t.subject.value, t.object.value)
    for t in graph.match(p=Iri(pref_prop)):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            universe.add(t.subject.value)
            universe.add(t.object.value)
            if t.subject == t.object:
                self_preferred.add(t.subject.value)

    for iri in universe:
        uf.add(iri)

    clusters: dict[str, Cluster] = {}
    member_map: dict[str, str] = {}
    conflicts: list[Finding] = []
    for members in uf.groups().values():
        members = frozenset(members)
        designated = sorted(m for m in members if m in self_preferred)
        preferred: Optional[str] = None
        if designated:
            preferred = designated[0]
            if len(designated) > 1:
                conflicts.append(
                    Finding(
                        category=Category.CONFLICTING_PREFERRED,
                        severity=Severity.ERROR,
                        ontology="combined",
                        subject=Iri(preferred),
                        detail="cluster designates multiple preferred members: "
                        + ", ".join(designated),
                    )
                )
        canonical = preferred if preferred is not None else min(members)
        clusters[canonical] = Cluster(canonical, members, preferred)
        for m in members:
            member_map[m] = canonical

    conflicts.sort(key=lambda f: str(f.subject_text()))
    return ClusterSet(
        clusters=dict(sorted(clusters.items())),
        equivalence_properties=frozenset(equiv_props),
        conflicts=conflicts,
        _member_to_canonical=member_map,
    )


def merge_clusters(
    graph: Graph,
    clusters: ClusterSet,
    pref_prop: str,
    label_prop: str = RDFS_LABEL,
    alt_label_prop: str = SKOS_ALT_LABEL,
) -> tuple[Graph, dict[str, str]]:
    """Collapse every cluster onto its canonical member.

    Labels of non-canonical members become alternative labels on the
    canonical entity; equivalence and preferred-designation triples are
    dropped; all other subjects/objects are rewritten through the mapping and
    the result deduplicated. Output size is never larger than the input.
    """
    mapping = {m: clusters.canonical_for(m) or m for c in clusters.clusters.values() for m in c.members}
    dropped_props = set(clusters.equivalence_properties) | {pref_prop}

    def rewrite(term: Term) -> Term:
        if isinstance(term, Iri) and term.value in mapping:
            return Iri(mapping[term.value])
        return term

    out: list[Triple] = []
    for t in graph:
        p = t.predicate.value
        if p in dropped_props:
            continue
        if (
            p == label_prop
            and isinstance(t.subject, Iri)
            and t.subject.value in mapping
            and mapping[t.subject.value] != t.subject.value
        ):
            out.append(Triple(Iri(mapping[t.subject.value]), Iri(alt_label_prop), t.object))
            continue
        out.append(Triple(rewrite(t.subject), t.predicate, rewrite(t.object)))
    return Graph(out), mapping


@dataclass(frozen=True)
class ExternalRef:
    topic: str
    kb: str
    target: str


DEFAULT_KB_MAP = {
    "dbpedia.org": "dbpedia",
    "wikidata.org": "wikidata",
    "yago-knowledge.org": "yago",
}


def kb_tag_for(iri: str, kb_map: dict[str, str]) -> Optional[str]:
    """KB tag from the target's host: exact domain or a subdomain of it."""
    host = (urlsplit(iri).hostname or "").lower()
    for domain, tag in kb_map.items():
        if host == domain or host.endswith("." + domain):
            return tag
    return None


def load_kb_map(path: str | Path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected '<domain> <tag>'")
        out[parts[0]] = parts[1]
    return out


def collect_external_refs(
    graph: Graph, kb_map: dict[str, str], ref_prop: str = OWL_SAMEAS
) -> list[ExternalRef]:
    refs = []
    for t in graph.match(p=Iri(ref_prop)):
        if not (isinstance(t.subject, Iri) and isinstance(t.object, Iri)):
            continue
        tag = kb_tag_for(t.object.value, kb_map)
        if tag is not None:
            refs.append(ExternalRef(t.subject.value, tag, t.object.value))
    refs.sort(key=lambda r: (r.topic, r.kb, r.target))
    return refs


def sameas_violations(
    graph: Graph,
    clusters: ClusterSet,
    sameas_prop: str,
    internal_prefix: str,
) -> set[tuple[str, str]]:
    """Pairs of internal topics deducibly identical but in different clusters.

    The reflexive-symmetric-transitive closure is computed with union-find
    over the identity edge set; violating pairs are enumerated per closure
    class rather than materializing the full pair relation.
    """
    uf = UnionFind()
    for t in graph.match(p=Iri(sameas_prop)):
        a = t.subject.value if isinstance(t.subject, Iri) else None
        b = t.object.value if isinstance(t.object, Iri) else None
        if a is None or b is None:
            continue
        uf.union(a, b)

    violations: set[tuple[str, str]] = set()
    for members in uf.groups().values():
        internal = sorted(m for m in members if m.startswith(internal_prefix))
        for i in range(len(internal)):
            for j in range(i + 1, len(internal)):
                a, b = internal[i], internal[j]
                if not clusters.same_cluster(a, b):
                    violations.add((a, b))
    return violations


def sameas_violation_findings(pairs: set[tuple[str, str]], ontology: str) -> list[Finding]:
    return [
        Finding(
            category=Category.SAMEAS_VIOLATION,
            severity=Severity.ERROR,
            ontology=ontology,
            subject=(Iri(a), Iri(b)),
            detail="deducibly identical via the identity closure but in different synonym clusters",
        )
        for a, b in sorted(pairs)
    ]


def check_kb_pairing(
    refs: Sequence[ExternalRef],
    kb_a: str,
    kb_b: str,
    correspondence: Optional[dict[str, str]] = None,
    clusters: Optional[ClusterSet] = None,
    ref_prop: str = OWL_SAMEAS,
    ontology: str = "combined",
) -> list[Finding]:
    """Topics referencing one KB but not its counterpart.

    When the correspondence map (in either direction) or a sibling topic in
    the same cluster knows the missing target, the finding carries a
    suggested triple.
    """
    fwd = dict(correspondence or {})
    rev = {v: k for k, v in fwd.items()}
    by_topic: dict[str, dict[str, list[str]]] = {}
    for r in refs:
        by_topic.setdefault(r.topic, {}).setdefault(r.kb, []).append(r.target)

    def sibling_targets(topic: str, kb: str) -> list[str]:
        if clusters is None:
            return []
        canonical = clusters.canonical_for(topic)
        if canonical is None:
            return []
        out = []
        for member in clusters.clusters[canonical].members:
            if member != topic:
                out.extend(by_topic.get(member, {}).get(kb, []))
        return sorted(set(out))

    findings = []
    for topic in sorted(by_topic):
        kbs = by_topic[topic]
        for have, want, mapping in ((kb_a, kb_b, fwd), (kb_b, kb_a, rev)):
            if have not in kbs or want in kbs:
                continue
            counterpart: Optional[str] = None
            for target in sorted(kbs[have]):
                if target in mapping:
                    counterpart = mapping[target]
                    break
            if counterpart is None:
                siblings = sibling_targets(topic, want)
                if len(siblings) == 1:
                    counterpart = siblings[0]
            fix = Triple(Iri(topic), Iri(ref_prop), Iri(counterpart)) if counterpart else None
            findings.append(
                Finding(
                    category=Category.MISSING_PAIRED_REFERENCE,
                    severity=Severity.WARNING,
                    ontology=ontology,
                    subject=Iri(topic),
                    fixable=fix is not None,
                    suggested_fix=fix,
                    detail=f"has {have} reference but no {want} reference",
                )
            )
    return findings


@dataclass
class Patch:
    additions: set[Triple] = field(default_factory=set)
    removals: set[Triple] = field(default_factory=set)
    rationale: dict[Triple, str] = field(default_factory=dict)

    def add(self, triple: Triple, why: str) -> None:
        if triple in self.removals:
            raise ValueError("triple is already scheduled for removal")
        self.additions.add(triple)
        self.rationale[triple] = why

    def remove(self, triple: Triple, why: str) -> None:
        if triple in self.additions:
            raise ValueError("triple is already scheduled for addition")
        self.removals.add(triple)
        self.rationale[triple] = why

    def merged_into(self, other: "Patch") -> None:
        for t in sorted(self.additions, key=triple_sort_key):
            other.add(t, self.rationale[t])
        for t in sorted(self.removals, key=triple_sort_key):
            other.remove(t, self.rationale[t])


def check_intra_cluster_refs(
    clusters: ClusterSet,
    refs: Sequence[ExternalRef],
    kb: str,
    ref_prop: str = OWL_SAMEAS,
    ontology: str = "combined",
) -> tuple[list[Finding], Patch]:
    """Per-cluster reference consistency for one external KB.

    Two or more distinct targets in a cluster is a conflict (no auto-fix);
    exactly one target with members lacking it yields a missing-reference
    finding per member and a patch addition.
    """
    by_cluster: dict[str, dict[str, set[str]]] = {}
    for r in refs:
        if r.kb != kb:
            continue
        canonical = clusters.canonical_for(r.topic)
        if canonical is None:
            continue
        by_cluster.setdefault(canonical, {}).setdefault(r.topic, set()).add(r.target)

    findings: list[Finding] = []
    patch = Patch()
    for canonical in sorted(by_cluster):
        member_refs = by_cluster[canonical]
        targets = sorted({t for ts in member_refs.values() for t in ts})
        cluster = clusters.clusters[canonical]
        if len(targets) >= 2:
            findings.append(
                Finding(
                    category=Category.CLUSTER_REF_CONFLICT,
                    severity=Severity.WARNING,
                    ontology=ontology,
                    subject=Iri(canonical),
                    detail=f"cluster references {len(targets)} distinct {kb} targets: "
                    + ", ".join(targets),
                )
            )
            continue
        target = targets[0]
        for member in sorted(cluster.members):
            if member in member_refs:
                continue
            triple = Triple(Iri(member), Iri(ref_prop), Iri(target))
            findings.append(
                Finding(
                    category=Category.CLUSTER_REF_MISSING,
                    severity=Severity.WARNING,
                    ontology=ontology,
                    subject=Iri(member),
                    fixable=True,
                    suggested_fix=triple,
                    detail=f"other cluster members reference {kb} target {target}",
                )
            )
            patch.add(triple, f"{Category.CLUSTER_REF_MISSING.value}: {member} lacks the cluster's {kb} reference")
    return findings, patch


PATCH_HEADER = "# Suggested ontology patch generated by ontolint."


def emit_patch(patch: Patch) -> str:
    """Deterministic Turtle rendering of a patch.

    Additions are plain statements; removals are rendered as comments since
    Turtle has no deletion syntax. Every statement is preceded by its
    rationale.
    """
    lines = [PATCH_HEADER]
    lines.append("# Additions below; removals (if any) are listed as comments.")
    for t in sorted(patch.additions, key=triple_sort_key):
        lines.append("")
        why = patch.rationale.get(t)
        if why:
            lines.append(f"# {why}")
        lines.append(serialize_triple(t))
    removals = sorted(patch.removals, key=triple_sort_key)
    if removals:
        lines.append("")
        lines.append("# Removals (apply manually):")
        for t in removals:
            why = patch.rationale.get(t)
            if why:
                lines.append(f"# {why}")
            lines.append(f"# REMOVE: {serialize_triple(t)}")
    return "\n".join(lines) + "\n"


def apply_patch(graph: Graph, patch: Patch) -> Graph:
    triples = [t for t in graph if t not in patch.removals]
    triples.extend(sorted(patch.additions, key=triple_sort_key))
    return Graph(triples)
