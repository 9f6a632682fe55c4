"""Independent brute-force oracles.

Each function here recomputes a result by the most direct method available
(linear scan, edge-removal recount, pairwise fixpoint, literal formula
transcription) so the production implementations can be checked against
something that shares none of their code or algorithmic shortcuts.
"""

from __future__ import annotations

from collections import Counter


def match_linear_scan(triples, s=None, p=None, o=None):
    """Pattern match by scanning every triple."""
    out = [
        t
        for t in triples
        if (s is None or t.subject == s)
        and (p is None or t.predicate == p)
        and (o is None or t.object == o)
    ]
    from ontolint.terms import triple_sort_key

    out.sort(key=triple_sort_key)
    return out


def bridges_by_removal(nodes, edges):
    """An edge is a bridge iff removing it increases the component count."""

    def component_count(edge_set):
        adj = {n: set() for n in nodes}
        for a, b in edge_set:
            adj[a].add(b)
            adj[b].add(a)
        seen = set()
        count = 0
        for n in nodes:
            if n in seen:
                continue
            count += 1
            stack = [n]
            seen.add(n)
            while stack:
                cur = stack.pop()
                for nb in adj[cur]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        return count

    base = component_count(edges)
    out = set()
    for e in edges:
        if component_count([x for x in edges if x != e]) > base:
            out.add(tuple(sorted(e)))
    return out


def sameas_closure_pairs(edges):
    """Reflexive-symmetric-transitive closure via pair propagation to fixpoint.

    Returns the set of unordered pairs of distinct terms deducible identical.
    """
    pairs = set()
    for a, b in edges:
        pairs.add((a, b))
        pairs.add((b, a))
    changed = True
    while changed:
        changed = False
        by_left = {}
        for a, b in pairs:
            by_left.setdefault(a, set()).add(b)
        for a, b in list(pairs):
            for c in by_left.get(b, ()):
                if (a, c) not in pairs:
                    pairs.add((a, c))
                    changed = True
    return {tuple(sorted((a, b))) for a, b in pairs if a != b}


def fleiss_kappa_direct(assignments):
    """Fleiss' kappa from raw per-item rater assignments.

    `assignments` is a list of items, each a list of category labels (one per
    rater, all items the same length). Agreement is counted by enumerating
    ordered rater pairs, not via the squared-count identity the production
    code uses.
    """
    n = len(assignments[0])
    agree = []
    for labels in assignments:
        assert len(labels) == n
        pairs = 0
        hits = 0
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                pairs += 1
                if labels[i] == labels[j]:
                    hits += 1
        agree.append(hits / pairs)
    p_bar = sum(agree) / len(agree)
    counts = Counter()
    for labels in assignments:
        counts.update(labels)
    total = sum(counts.values())
    p_e = sum((c / total) ** 2 for c in counts.values())
    if p_e == 1.0:
        raise ZeroDivisionError("degenerate: single category")
    return (p_bar - p_e) / (1.0 - p_e)


def krippendorff_alpha_direct(units, metric="nominal"):
    """Krippendorff's alpha computed straight from the unit structure.

    `units` is a list of rating lists (missing ratings simply absent). The
    ordinal metric uses rank frequencies over the pooled pairable values,
    matching the standard definition.
    """
    units = [u for u in units if len(u) >= 2]
    values = [v for u in units for v in u]
    n = len(values)
    if n == 0:
        raise ValueError("no pairable ratings")
    freq = Counter(values)
    scale = sorted(freq)

    def delta(a, b):
        if a == b:
            return 0.0
        if metric == "nominal":
            return 1.0
        lo, hi = (a, b) if scale.index(a) < scale.index(b) else (b, a)
        span = sum(freq[v] for v in scale[scale.index(lo) : scale.index(hi) + 1])
        return (span - (freq[a] + freq[b]) / 2.0) ** 2

    d_o = 0.0
    for u in units:
        m = len(u)
        d_u = sum(delta(a, b) for a in u for b in u)
        d_o += d_u / (m - 1)
    d_o /= n

    d_e = 0.0
    for a in values:
        for b in values:
            d_e += delta(a, b)
    d_e /= n * (n - 1)
    if d_e == 0.0:
        raise ZeroDivisionError("no variation")
    return 1.0 - d_o / d_e


def cosine_direct(u, v):
    dot = sum(a * b for a, b in zip(u, v))
    nu = sum(a * a for a in u) ** 0.5
    nv = sum(b * b for b in v) ** 0.5
    return dot / (nu * nv)


def pairwise_stats_direct(vectors):
    """All-pairs cosine statistics via plain Python loops.

    Returns (per_row_mean, per_row_std, overall_mean, overall_std) with
    population standard deviations, self-similarity excluded.
    """
    n = len(vectors)
    sims = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                sims[i][j] = cosine_direct(vectors[i], vectors[j])
    row_means, row_stds = [], []
    for i in range(n):
        row = [sims[i][j] for j in range(n) if j != i]
        mean = sum(row) / len(row)
        var = sum((x - mean) ** 2 for x in row) / len(row)
        row_means.append(mean)
        row_stds.append(var**0.5)
    allv = [sims[i][j] for i in range(n) for j in range(n) if i != j]
    mean = sum(allv) / len(allv)
    var = sum((x - mean) ** 2 for x in allv) / len(allv)
    return row_means, row_stds, mean, var**0.5
