"""Indexed in-memory triple store.

A `Graph` is immutable after construction and keeps three single-position
indexes (subject, predicate, object) so pattern matching never scans more
than the smallest candidate set. A `Dataset` groups graphs by ontology id.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .terms import Term, Triple, triple_sort_key


class Graph:
    """A deduplicated set of triples with subject/predicate/object indexes."""

    __slots__ = ("_triples", "_by_s", "_by_p", "_by_o", "duplicates_dropped")

    def __init__(self, triples: Iterable[Triple] = ()):
        seen: dict[Triple, None] = {}
        dups = 0
        for t in triples:
            if t in seen:
                dups += 1
            else:
                seen[t] = None
        self._triples: tuple[Triple, ...] = tuple(seen)
        self.duplicates_dropped = dups
        self._by_s: dict[Term, list[Triple]] = {}
        self._by_p: dict[Term, list[Triple]] = {}
        self._by_o: dict[Term, list[Triple]] = {}
        for t in self._triples:
            self._by_s.setdefault(t.subject, []).append(t)
            self._by_p.setdefault(t.predicate, []).append(t)
            self._by_o.setdefault(t.object, []).append(t)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._by_s.get(t.subject, ()) if isinstance(t, Triple) else False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self._triples) == set(other._triples)

    def __hash__(self):  # graphs are compared as sets, not hashed
        raise TypeError("Graph is unhashable")

    def triples(self) -> tuple[Triple, ...]:
        return self._triples

    def match(
        self,
        s: Optional[Term] = None,
        p: Optional[Term] = None,
        o: Optional[Term] = None,
    ) -> list[Triple]:
        """All triples matching the pattern; unbound positions match anything.

        Results are sorted by term serialization so equal queries always
        return the same sequence.
        """
        candidates: Iterable[Triple]
        pools = []
        if s is not None:
            pools.append(self._by_s.get(s, []))
        if p is not None:
            pools.append(self._by_p.get(p, []))
        if o is not None:
            pools.append(self._by_o.get(o, []))
        if pools:
            candidates = min(pools, key=len)
        else:
            candidates = self._triples
        out = [
            t
            for t in candidates
            if (s is None or t.subject == s)
            and (p is None or t.predicate == p)
            and (o is None or t.object == o)
        ]
        out.sort(key=triple_sort_key)
        return out

    def subjects(self) -> set[Term]:
        return set(self._by_s)

    def predicates(self) -> set[Term]:
        return set(self._by_p)

    def objects(self) -> set[Term]:
        return set(self._by_o)


class Dataset:
    """Graphs keyed by ontology id, with file provenance."""

    COMBINED = "combined"

    def __init__(self) -> None:
        self.graphs: dict[str, Graph] = {}
        self.provenance: dict[str, str] = {}

    def add_graph(self, ontology_id: str, graph: Graph, source: str = "") -> None:
        if ontology_id in self.graphs:
            raise ValueError(f"duplicate ontology id: {ontology_id}")
        self.graphs[ontology_id] = graph
        self.provenance[ontology_id] = source

    def ontology_ids(self) -> list[str]:
        return sorted(self.graphs)

    def items(self) -> list[tuple[str, Graph]]:
        return [(oid, self.graphs[oid]) for oid in self.ontology_ids()]

    def total_triples(self) -> int:
        return sum(len(g) for g in self.graphs.values())

    def all_subject_iris(self) -> set[str]:
        """IRI values used in subject position anywhere in the dataset."""
        out: set[str] = set()
        for g in self.graphs.values():
            for term in g.subjects():
                value = getattr(term, "value", None)
                if value is not None:
                    out.add(value)
        return out
