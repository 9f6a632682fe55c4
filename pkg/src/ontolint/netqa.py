"""Alignment outlier detection over an external link graph.

Entities referenced from an ontology should sit inside the well-connected
core of the external knowledge base they point into; references that land on
poorly connected nodes are usually wrong. Three tactics peel candidates off
in sequence:

    T1  everything outside the largest connected component
    T2  after bridge removal, everything outside the surviving largest
        component
    T3  members of small label-propagation communities

A node is claimed by the first tactic that catches it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional


class LinkGraph:
    """Undirected graph over node ids, with a marked seed subset.

    Self-loops are dropped; adjacency is symmetric by construction. Seed
    nodes are the ones referenced from the ontology, i.e. the only ones worth
    reporting for review.
    """

    def __init__(self, seed_nodes: Optional[Iterable[str]] = None):
        self.adj: dict[str, set[str]] = {}
        self.seed_nodes: set[str] = set(seed_nodes or ())
        self.fetch_errors: dict[str, str] = {}

    def add_node(self, node: str) -> None:
        self.adj.setdefault(node, set())

    def add_edge(self, a: str, b: str) -> None:
        if a == b:
            return
        self.adj.setdefault(a, set()).add(b)
        self.adj.setdefault(b, set()).add(a)

    @property
    def nodes(self) -> set[str]:
        return set(self.adj)

    def edges(self) -> set[tuple[str, str]]:
        return {(a, b) for a in self.adj for b in self.adj[a] if a < b}

    def effective_seeds(self) -> set[str]:
        return self.seed_nodes or set(self.adj)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        seeds: Optional[Iterable[str]] = None,
        isolated: Iterable[str] = (),
    ) -> "LinkGraph":
        g = cls(seeds)
        for a, b in edges:
            g.add_edge(a, b)
        for n in isolated:
            g.add_node(n)
        for s in g.seed_nodes:
            g.add_node(s)
        return g


def load_edge_list(path: str | Path) -> list[tuple[str, str]]:
    """Tab-separated node pairs, one edge per line."""
    edges = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected two node ids")
        edges.append((parts[0], parts[1]))
    return edges


def connected_components(g: LinkGraph) -> list[set[str]]:
    """Components ordered by size descending, then least node id."""
    seen: set[str] = set()
    components: list[set[str]] = []
    for start in sorted(g.adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            node = stack.pop()
            for nb in g.adj[node]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    stack.append(nb)
        components.append(comp)
    components.sort(key=lambda c: (-len(c), min(c)))
    return components


def find_bridges(g: LinkGraph) -> set[tuple[str, str]]:
    """Edges whose removal disconnects the graph, via iterative DFS low-links."""
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    bridges: set[tuple[str, str]] = set()
    counter = 0

    for root in sorted(g.adj):
        if root in disc:
            continue
        # stack entries: (node, parent, iterator over sorted neighbors)
        stack = [(root, None, iter(sorted(g.adj[root])))]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            node, parent, it = stack[-1]
            advanced = False
            for nb in it:
                if nb not in disc:
                    disc[nb] = low[nb] = counter
                    counter += 1
                    stack.append((nb, node, iter(sorted(g.adj[nb]))))
                    advanced = True
                    break
                elif nb != parent:
                    low[node] = min(low[node], disc[nb])
            if not advanced:
                stack.pop()
                if stack:
                    parent_node = stack[-1][0]
                    low[parent_node] = min(low[parent_node], low[node])
                    if low[node] > disc[parent_node]:
                        bridges.add((min(node, parent_node), max(node, parent_node)))
    return bridges


def label_propagation(g: LinkGraph, seed: int, max_rounds: int = 100) -> list[set[str]]:
    """Asynchronous label propagation with a seeded visit order.

    Every round visits the nodes in a freshly drawn permutation; each node
    adopts the most frequent label among its neighbors, ties broken by least
    label. Stops when a round changes nothing or after `max_rounds`.
    Deterministic given (graph, seed).
    """
    rng = random.Random(seed)
    order = sorted(g.adj)
    labels = {n: n for n in order}
    for _ in range(max_rounds):
        perm = order[:]
        rng.shuffle(perm)
        changed = False
        for node in perm:
            neighbors = g.adj[node]
            if not neighbors:
                continue
            counts = Counter(labels[nb] for nb in neighbors)
            top = max(counts.values())
            best = min(l for l, c in counts.items() if c == top)
            if best != labels[node]:
                labels[node] = best
                changed = True
        if not changed:
            break
    communities: dict[str, set[str]] = {}
    for node, label in labels.items():
        communities.setdefault(label, set()).add(node)
    out = list(communities.values())
    out.sort(key=lambda c: (-len(c), min(c)))
    return out


@dataclass(frozen=True)
class OutlierCandidate:
    node: str
    tactic: str  # T1, T2, T3
    evidence: str


def detect_outliers(g: LinkGraph, max_keep_frac: float = 0.5, seed: int = 0) -> list[OutlierCandidate]:
    """Run the T1 -> T2 -> T3 pipeline and report seed-node candidates.

    T1 removes everything outside the largest component. T2 removes all
    bridges, then everything outside the surviving largest component. T3
    flags label-propagation communities no larger than `max_keep_frac` of
    the remaining nodes. Results are restricted to the graph's seed nodes;
    each node is claimed by at most one tactic.
    """
    if not (0 < max_keep_frac <= 1):
        raise ValueError("max_keep_frac must be in (0, 1]")
    candidates: list[OutlierCandidate] = []
    claimed: set[str] = set()
    work = LinkGraph(g.seed_nodes)
    for n in g.adj:
        work.add_node(n)
    for a, b in g.edges():
        work.add_edge(a, b)

    def take(nodes: Iterable[str], tactic: str, evidence: str) -> None:
        for node in sorted(nodes):
            if node not in claimed:
                claimed.add(node)
                candidates.append(OutlierCandidate(node, tactic, evidence))

    def remove_nodes(nodes: set[str]) -> None:
        for node in nodes:
            for nb in work.adj.pop(node, ()):  # also detach from neighbors
                work.adj.get(nb, set()).discard(node)

    # T1: all but the largest connected component
    comps = connected_components(work)
    if comps:
        for comp in comps[1:]:
            take(comp, "T1", f"component-size={len(comp)}")
            remove_nodes(comp)

    # T2: remove bridges, then all but the surviving largest component
    bridges = find_bridges(work)
    for a, b in bridges:
        work.adj[a].discard(b)
        work.adj[b].discard(a)
    comps = connected_components(work)
    if comps:
        for comp in comps[1:]:
            take(comp, "T2", f"component-size={len(comp)}")
            remove_nodes(comp)

    # T3: small label-propagation communities
    remaining = len(work.adj)
    if remaining:
        for community in label_propagation(work, seed):
            if len(community) <= max_keep_frac * remaining:
                take(community, "T3", f"community-size={len(community)}")

    seeds = g.effective_seeds()
    return [c for c in candidates if c.node in seeds]
