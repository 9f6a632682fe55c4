"""ontolint command line: one subcommand per check procedure.

Exit codes follow lint-tool convention: 0 clean, 1 when error-severity
findings exist, 2 on usage or I/O failure. All randomness derives from
--seed, and a cached fetch plus fixed seed makes full runs byte-identical.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import click

from . import __version__
from .cluster import emit_patch, load_kb_map
from .conflation import FileProvider, HashNgramProvider
from .findings import Finding, Severity, max_severity
from .graph import Dataset
from .loader import load_file, ontology_id_for
from .netqa import LinkGraph, load_edge_list
from .ntriples import RdfSyntaxError, serialize_canonical
from .pipelines import (
    CsoConfig,
    conflation_pipeline,
    cso_check_pipeline,
    cso_merge_pipeline,
    lint_pipeline,
    outlier_pipeline,
    xref_pipeline,
)
from .profiler import load_range_rules
from .reporting import (
    aggregate,
    aggregate_dicts,
    render,
    render_findings_jsonl,
)
from .review.api import create_app
from .review.stats import compute_agreement
from .review.store import ReviewStore, load_queue
from .sparql import fetch_link_graph
from .xref import (
    DEFAULT_XREF_PROPERTIES,
    PrefixRegistry,
    render_xref_summary_json,
    render_xref_summary_markdown,
)


@dataclass
class RunConfig:
    seed: int = 0
    jobs: int = 1
    quiet: bool = False
    output_dir: Optional[Path] = None

    def write_or_echo(self, name: str, text: str, echo: bool = False) -> None:
        if self.output_dir is not None:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            (self.output_dir / name).write_text(text, encoding="utf-8")
        if echo and not self.quiet:
            click.echo(text, nl=False)


pass_config = click.make_pass_decorator(RunConfig)


@click.group()
@click.version_option(__version__)
@click.option("--seed", default=0, show_default=True, help="Seed for all randomized steps.")
@click.option("--jobs", default=1, show_default=True, help="Parallel workers for loading inputs.")
@click.option("--quiet", is_flag=True, help="Suppress stdout summaries.")
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.pass_context
def main(ctx, seed, jobs, quiet, output_dir):
    """Quality assurance toolkit for RDF ontologies."""
    ctx.obj = RunConfig(seed=seed, jobs=jobs, quiet=quiet, output_dir=output_dir)


def _load_dataset_parallel(paths: Sequence[Path], jobs: int) -> tuple[Dataset, list[Finding]]:
    """Load inputs (possibly concurrently) and merge deterministically by path."""
    ordered = sorted(Path(p) for p in paths)

    def one(path: Path):
        try:
            return load_file(path)
        except RdfSyntaxError as exc:
            raise click.ClickException(f"{path}: {exc}") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, ordered))
    else:
        results = [one(p) for p in ordered]

    dataset = Dataset()
    findings: list[Finding] = []
    for path, (graph, finding) in zip(ordered, results):
        if finding is not None:
            findings.append(finding)
            continue
        dataset.add_graph(ontology_id_for(path), graph, source=str(path))
    return dataset, findings


def _exit_for(findings: Sequence[Finding]) -> None:
    worst = max_severity(findings)
    if worst is Severity.ERROR:
        sys.exit(1)
    sys.exit(0)


def _load_props_file(path: Optional[str]) -> frozenset[str]:
    if path is None:
        return DEFAULT_XREF_PROPERTIES
    lines = Path(path).read_text().splitlines()
    props = frozenset(l.strip().strip("<>") for l in lines if l.strip() and not l.startswith("#"))
    if not props:
        raise click.ClickException(f"{path}: no xref properties listed")
    return props


def _bundled_registry() -> PrefixRegistry:
    with resources.as_file(resources.files("ontolint") / "data" / "registry.tsv") as p:
        return PrefixRegistry.from_file(p)


INPUTS = click.argument(
    "inputs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)


@main.command()
@click.option("--rare-threshold", default=10, show_default=True)
@click.option("--minority-frac", default=0.10, show_default=True)
@click.option("--rules", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]), default="markdown")
@INPUTS
@pass_config
def lint(config: RunConfig, rare_threshold, minority_frac, rules, fmt, inputs):
    """Profile properties and flag rare/undefined ones and object-kind conflicts."""
    dataset, findings = _load_dataset_parallel(inputs, config.jobs)
    user_rules = load_range_rules(rules) if rules else ()
    if dataset.graphs:
        findings += lint_pipeline(
            dataset,
            rare_threshold=rare_threshold,
            minority_frac=minority_frac,
            user_rules=user_rules,
        )
    config.write_or_echo("findings.jsonl", render_findings_jsonl(findings))
    table = aggregate(findings)
    config.write_or_echo(f"summary.{'md' if fmt == 'markdown' else 'json'}", render(table, fmt), echo=True)
    _exit_for(findings)


@main.command()
@click.option("--registry", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Prefix registry snapshot (default: bundled).")
@click.option("--props", type=click.Path(exists=True, dir_okay=False), default=None,
              help="File listing xref property IRIs, one per line.")
@click.option("--allow-list", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Extra IRIs accepted as valid targets.")
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]), default="markdown")
@INPUTS
@pass_config
def xref(config: RunConfig, registry, props, allow_list, fmt, inputs):
    """Extract and classify cross-ontology references (prefix-registry based)."""
    dataset, findings = _load_dataset_parallel(inputs, config.jobs)
    reg = PrefixRegistry.from_file(registry) if registry else _bundled_registry()
    extra = frozenset()
    if allow_list:
        extra = frozenset(
            l.strip().strip("<>")
            for l in Path(allow_list).read_text().splitlines()
            if l.strip() and not l.startswith("#")
        )
    classified, summary, xfindings = xref_pipeline(
        dataset, reg, properties=_load_props_file(props), extra_known_targets=extra
    )
    findings += xfindings
    config.write_or_echo("xref_findings.jsonl", render_findings_jsonl(findings))
    if fmt == "markdown":
        config.write_or_echo("xref_summary.md", render_xref_summary_markdown(summary), echo=True)
    else:
        config.write_or_echo("xref_summary.json", render_xref_summary_json(summary), echo=True)
    _exit_for(findings)


@main.group()
def cso():
    """Synonym-cluster checks and the cluster-merge transformation."""


def _cso_config(equiv_props, pref_prop, internal_prefix, kb_map, correspondence) -> CsoConfig:
    cfg = CsoConfig()
    if equiv_props:
        props = frozenset(
            l.strip().strip("<>")
            for l in Path(equiv_props).read_text().splitlines()
            if l.strip() and not l.startswith("#")
        )
        if props:
            cfg.equiv_props = props
    if pref_prop:
        cfg.pref_prop = pref_prop.strip("<>")
    if internal_prefix:
        cfg.internal_prefix = internal_prefix
    if kb_map:
        cfg.kb_map = load_kb_map(kb_map)
    if correspondence:
        pairs = {}
        for line in Path(correspondence).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b = line.split("\t") if "\t" in line else line.split()
            pairs[a.strip("<>")] = b.strip("<>")
        cfg.correspondence = pairs
    return cfg


CSO_OPTIONS = [
    click.option("--equiv-props", type=click.Path(exists=True, dir_okay=False), default=None,
                 help="File of equivalence property IRIs (default: cso:relatedEquivalent)."),
    click.option("--pref-prop", default=None, help="Preferred-member designation property IRI."),
    click.option("--internal-prefix", default=None, help="IRI prefix of internal topics."),
    click.option("--kb-map", type=click.Path(exists=True, dir_okay=False), default=None,
                 help="File mapping external domains to KB tags."),
]


def _apply(options):
    def deco(f):
        for opt in reversed(options):
            f = opt(f)
        return f

    return deco


@cso.command()
@_apply(CSO_OPTIONS)
@click.option("--correspondence", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Tab-separated counterpart map between the paired KBs.")
@click.option("--patch-out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@INPUTS
@pass_config
def check(config: RunConfig, equiv_props, pref_prop, internal_prefix, kb_map, correspondence,
          patch_out, inputs):
    """Identity-logic violations, missing paired references, cluster-ref conflicts."""
    dataset, findings = _load_dataset_parallel(inputs, config.jobs)
    cfg = _cso_config(equiv_props, pref_prop, internal_prefix, kb_map, correspondence)
    for oid, graph in dataset.items():
        result = cso_check_pipeline(graph, cfg, ontology=oid)
        findings += result.findings
        patch_text = emit_patch(result.patch)
        if patch_out is not None:
            patch_out.parent.mkdir(parents=True, exist_ok=True)
            patch_out.write_text(patch_text, encoding="utf-8", newline="\n")
        else:
            config.write_or_echo(f"{oid}_patch.ttl", patch_text)
    config.write_or_echo("cso_findings.jsonl", render_findings_jsonl(findings))
    config.write_or_echo("cso_summary.md", render(aggregate(findings), "markdown"), echo=True)
    _exit_for(findings)


@cso.command()
@_apply(CSO_OPTIONS)
@click.option("--merged-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Canonical N-Triples output (default: <output-dir>/<id>_merged.nt).")
@click.option("--mapping-out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@INPUTS
@pass_config
def merge(config: RunConfig, equiv_props, pref_prop, internal_prefix, kb_map,
          merged_out, mapping_out, inputs):
    """Collapse synonym clusters onto preferred members (alt-labels preserved)."""
    dataset, findings = _load_dataset_parallel(inputs, config.jobs)
    cfg = _cso_config(equiv_props, pref_prop, internal_prefix, kb_map, None)
    for oid, graph in dataset.items():
        merged, mapping, clusters = cso_merge_pipeline(graph, cfg)
        findings += clusters.conflicts
        text = serialize_canonical(merged.triples())
        if merged_out is not None:
            merged_out.parent.mkdir(parents=True, exist_ok=True)
            merged_out.write_text(text, encoding="utf-8", newline="\n")
        else:
            config.write_or_echo(f"{oid}_merged.nt", text)
        if mapping_out is not None:
            mapping_out.parent.mkdir(parents=True, exist_ok=True)
            mapping_out.write_text(
                json.dumps(mapping, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        if not config.quiet:
            click.echo(f"{oid}: {len(graph)} -> {len(merged)} triples, {len(clusters.clusters)} clusters")
    _exit_for(findings)


@main.group()
def graph():
    """External link-graph analyses."""


@graph.command()
@click.option("--endpoint", default=None, help="SPARQL endpoint URL.")
@click.option("--seeds", "seeds_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="File of seed IRIs, one per line.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None,
              help="Response cache directory (env ONTOLINT_CACHE overrides).")
@click.option("--edges", "edges_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Offline edge list (tab-separated pairs) instead of fetching.")
@click.option("--keep-frac", default=0.5, show_default=True,
              help="Largest community fraction exempt from T3.")
@click.option("--queue-out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@pass_config
def outliers(config: RunConfig, endpoint, seeds_file, cache_dir, edges_file, keep_frac, queue_out):
    """T1/T2/T3 alignment-outlier detection over the link graph."""
    seeds = []
    if seeds_file:
        seeds = [
            l.strip() for l in Path(seeds_file).read_text().splitlines()
            if l.strip() and not l.startswith("#")
        ]
    if edges_file:
        link_graph = LinkGraph.from_edges(load_edge_list(edges_file), seeds=seeds)
    elif endpoint:
        if not seeds:
            raise click.ClickException("--endpoint requires --seeds")
        cache = os.environ.get("ONTOLINT_CACHE") or cache_dir
        if not cache:
            raise click.ClickException("--endpoint requires --cache (or ONTOLINT_CACHE)")
        link_graph = fetch_link_graph(endpoint, seeds, cache)
        for seed_iri, error in sorted(link_graph.fetch_errors.items()):
            click.echo(f"fetch error: {seed_iri}: {error}", err=True)
    else:
        raise click.ClickException("provide --edges FILE or --endpoint URL")

    items = outlier_pipeline(link_graph, max_keep_frac=keep_frac, seed=config.seed)
    queue_text = "".join(json.dumps(i.to_dict(), ensure_ascii=False) + "\n" for i in items)
    if queue_out is not None:
        queue_out.parent.mkdir(parents=True, exist_ok=True)
        queue_out.write_text(queue_text, encoding="utf-8")
    else:
        config.write_or_echo("review_queue.jsonl", queue_text, echo=config.output_dir is None)
    if not config.quiet:
        by_tactic = {}
        for item in items:
            by_tactic[item.payload["tactic"]] = by_tactic.get(item.payload["tactic"], 0) + 1
        click.echo(
            f"outlier candidates: {len(items)} "
            f"(T1={by_tactic.get('T1', 0)} T2={by_tactic.get('T2', 0)} T3={by_tactic.get('T3', 0)})"
        )
    sys.exit(0)


@main.group()
def conflation():
    """Synonym-cluster conflation scoring."""


@conflation.command()
@click.option("--vectors", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Precomputed label vectors (header 'dim d').")
@click.option("--hash-dim", default=256, show_default=True,
              help="Hash-trigram dimension when no vector file is given.")
@click.option("--min-size", default=3, show_default=True)
@click.option("--mean-cut", default=0.45, show_default=True)
@click.option("--std-cut", default=0.15, show_default=True)
@click.option("--top-k", default=None, type=int)
@click.option("--equiv-props", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--pref-prop", default=None)
@click.option("--queue-out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@INPUTS
@pass_config
def scan(config: RunConfig, vectors, hash_dim, min_size, mean_cut, std_cut, top_k,
         equiv_props, pref_prop, queue_out, inputs):
    """Score clusters by all-pairs label similarity; queue suspects for review."""
    dataset, _ = _load_dataset_parallel(inputs, config.jobs)
    provider = FileProvider(vectors) if vectors else HashNgramProvider(hash_dim)
    cfg = _cso_config(equiv_props, pref_prop, None, None, None)
    all_items = []
    for oid, g in dataset.items():
        scores, items = conflation_pipeline(
            g, provider, cfg.equiv_props, cfg.pref_prop,
            min_size=min_size, mean_cut=mean_cut, std_cut=std_cut, top_k=top_k,
        )
        all_items += items
        if not config.quiet:
            click.echo(f"{oid}: scored {len(scores)} clusters, {len(items)} suspects")
    queue_text = "".join(json.dumps(i.to_dict(), ensure_ascii=False) + "\n" for i in all_items)
    if queue_out is not None:
        queue_out.parent.mkdir(parents=True, exist_ok=True)
        queue_out.write_text(queue_text, encoding="utf-8")
    else:
        config.write_or_echo("review_queue.jsonl", queue_text)
    sys.exit(0)


@main.group()
def review():
    """Human review service and agreement statistics."""


@review.command()
@click.option("--queue", "queue_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "journal_file", type=click.Path(dir_okay=False), required=True,
              help="Verdict journal (JSON lines, append-only).")
@click.option("--port", default=8321, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--metric", type=click.Choice(["ordinal", "nominal"]), default="ordinal")
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Static UI bundle to serve at / (default: frontend/dist if present).")
@pass_config
def serve(config: RunConfig, queue_file, journal_file, port, host, metric, ui_dir):
    """Serve the review HTTP API (and UI) over a queue file."""
    import uvicorn

    store = ReviewStore.open(queue_file, journal_file)
    if ui_dir is None:
        default_ui = Path("frontend") / "dist"
        ui_dir = str(default_ui) if default_ui.is_dir() else None
    app = create_app(store, seed=config.seed, metric=metric, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning" if config.quiet else "info")


@review.command()
@click.option("--out", "journal_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Verdict journal to analyze.")
@click.option("--queue", "queue_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--metric", type=click.Choice(["ordinal", "nominal"]), default="ordinal")
@pass_config
def stats(config: RunConfig, journal_file, queue_file, metric):
    """Agreement statistics straight from the verdict journal."""
    items = load_queue(queue_file) if queue_file else []
    store = ReviewStore(items, journal_file)
    report = compute_agreement(store, metric=metric)
    text = json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"
    config.write_or_echo("stats.json", text, echo=True)
    sys.exit(0)


@main.group()
def report():
    """Render findings streams into summary reports."""


@report.command("render")
@click.option("--in", "findings_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]), default="markdown")
@click.option("--dedup/--no-dedup", default=False,
              help="Count findings shared across ontologies once in totals.")
@pass_config
def report_render(config: RunConfig, findings_file, fmt, dedup):
    """Aggregate a findings.jsonl stream into a per-ontology summary table."""
    records = []
    with open(findings_file, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except ValueError as exc:
                raise click.ClickException(f"{findings_file}:{lineno}: bad JSON: {exc}")
    table = aggregate_dicts(records, dedup=dedup)
    config.write_or_echo(f"report.{'md' if fmt == 'markdown' else 'json'}", render(table, fmt), echo=True)
    sys.exit(0)


if __name__ == "__main__":
    main()
