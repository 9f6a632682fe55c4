"""File loading: gzip detection, format sniffing, dataset assembly.

Unsupported serializations are not parse errors: they become
`FormatUnsupported` findings so a batch run over a mixed directory reports
them alongside everything else instead of dying on the first `.owl` file.
"""

from __future__ import annotations

import gzip
from pathlib import Path

from .findings import Category, Finding, Severity
from .graph import Dataset, Graph
from .ntriples import parse_ntriples
from .sniff import RdfFormat, sniff_format
from .turtle import parse_turtle

_GZIP_MAGIC = b"\x1f\x8b"


def read_bytes(path: str | Path) -> bytes:
    """Raw file content, transparently gunzipped when the magic bytes match."""
    raw = Path(path).read_bytes()
    if raw[:2] == _GZIP_MAGIC:
        return gzip.decompress(raw)
    return raw


def ontology_id_for(path: str | Path) -> str:
    """Default ontology id: the file name stem (with .gz peeled off first)."""
    name = Path(path).name
    if name.endswith(".gz"):
        name = name[:-3]
    stem = name.rsplit(".", 1)[0] if "." in name else name
    return stem


def _extension_hint(path: Path) -> RdfFormat | None:
    name = path.name[:-3] if path.name.endswith(".gz") else path.name
    if name.endswith(".nt"):
        return RdfFormat.NTRIPLES
    if name.endswith(".ttl"):
        return RdfFormat.TURTLE
    return None


def load_file(path: str | Path) -> tuple[Graph | None, Finding | None]:
    """Parse one file; returns (graph, None) or (None, FormatUnsupported finding)."""
    path = Path(path)
    data = read_bytes(path)
    report = sniff_format(data)
    fmt = report.detected
    if fmt is RdfFormat.UNKNOWN:
        hint = _extension_hint(path)
        if hint is not None:
            fmt = hint
    if fmt is RdfFormat.NTRIPLES:
        return parse_ntriples(data), None
    if fmt is RdfFormat.TURTLE:
        return parse_turtle(data), None
    finding = Finding(
        category=Category.FORMAT_UNSUPPORTED,
        severity=Severity.ERROR,
        ontology=ontology_id_for(path),
        subject=str(path),
        detail=f"detected format {report.detected.value}; evidence: {report.evidence!r}",
    )
    return None, finding


def load_dataset(paths, ids: dict[str, str] | None = None) -> tuple[Dataset, list[Finding]]:
    """Load many files into a Dataset keyed by ontology id.

    `ids` may map path strings to explicit ontology ids; the default is the
    file name stem.
    """
    dataset = Dataset()
    findings: list[Finding] = []
    for p in paths:
        p = Path(p)
        oid = (ids or {}).get(str(p), ontology_id_for(p))
        graph, finding = load_file(p)
        if finding is not None:
            findings.append(finding)
            continue
        assert graph is not None
        dataset.add_graph(oid, graph, source=str(p))
    return dataset, findings
