"""SPARQL protocol client for fetching outbound wikilinks, with a disk cache.

One SELECT query per seed entity; raw response bodies are cached keyed by a
digest of (endpoint, seed), so re-runs are offline and bit-identical. Network
failures are retried with backoff, then recorded per seed without aborting
the run.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import requests

from .netqa import LinkGraph

WIKILINK_QUERY = "SELECT ?o WHERE {{ <{seed}> <http://dbpedia.org/ontology/wikiPageWikiLink> ?o }}"


def cache_key(endpoint: str, seed: str) -> str:
    return hashlib.sha256(f"{endpoint}\n{seed}".encode("utf-8")).hexdigest()


def parse_link_bindings(body: bytes | str) -> list[str]:
    """Target IRIs from a SPARQL JSON results document (?o bindings)."""
    doc = json.loads(body)
    out = []
    for binding in doc["results"]["bindings"]:
        o = binding.get("o")
        if o and o.get("type") == "uri":
            out.append(o["value"])
    return out


class SparqlFetchError(Exception):
    pass


def _fetch_one(
    session: requests.Session,
    endpoint: str,
    seed: str,
    cache_dir: Path,
    retries: int,
    backoff: float,
    timeout: float,
) -> bytes:
    cache_file = cache_dir / (cache_key(endpoint, seed) + ".json")
    if cache_file.exists():
        return cache_file.read_bytes()
    query = WIKILINK_QUERY.format(seed=seed)
    last_error: Optional[Exception] = None
    for attempt in range(retries):
        try:
            resp = session.get(
                endpoint,
                params={"query": query},
                headers={"Accept": "application/sparql-results+json"},
                timeout=timeout,
            )
            if resp.status_code != 200:
                raise SparqlFetchError(f"HTTP {resp.status_code}")
            cache_file.write_bytes(resp.content)
            return resp.content
        except (requests.RequestException, SparqlFetchError) as exc:
            last_error = exc
            if attempt + 1 < retries:
                time.sleep(backoff * (2**attempt))
    raise SparqlFetchError(f"{seed}: {last_error}")


def fetch_link_graph(
    endpoint: str,
    seeds: Sequence[str],
    cache_dir: str | Path,
    concurrency: int = 4,
    retries: int = 3,
    backoff: float = 0.5,
    timeout: float = 30.0,
) -> LinkGraph:
    """Build the one-hop link graph around `seeds`.

    Responses are merged in seed order regardless of completion order, so
    the resulting graph is deterministic. Seeds whose fetch or parse failed
    are skipped and recorded in `graph.fetch_errors`.
    """
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    session = requests.Session()

    results: dict[str, bytes | Exception] = {}

    def worker(seed: str) -> None:
        try:
            results[seed] = _fetch_one(session, endpoint, seed, cache_dir, retries, backoff, timeout)
        except Exception as exc:
            results[seed] = exc

    unique_seeds = list(dict.fromkeys(seeds))
    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        list(pool.map(worker, unique_seeds))

    graph = LinkGraph(seed_nodes=[])
    for seed in unique_seeds:
        res = results[seed]
        if isinstance(res, Exception):
            graph.fetch_errors[seed] = str(res)
            continue
        try:
            targets = parse_link_bindings(res)
        except (ValueError, KeyError, TypeError) as exc:
            graph.fetch_errors[seed] = f"malformed response: {exc}"
            continue
        graph.seed_nodes.add(seed)
        graph.add_node(seed)
        for target in targets:
            graph.add_edge(seed, target)
    return graph
