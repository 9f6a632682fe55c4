import json

import pytest
from click.testing import CliRunner

from ontolint.cli import main

from conftest import fixture_path

FIX_OBO = sorted(str(p) for p in fixture_path("fix_obo").glob("*.ttl"))
FIX_CSO = str(fixture_path("fix_cso", "fix_cso.ttl"))


@pytest.fixture
def runner():
    return CliRunner()


class TestTopLevel:
    def test_help_exits_zero(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        assert "Usage" in result.output

    def test_missing_input_exits_two(self, runner):
        result = runner.invoke(main, ["lint", "missing.ttl"])
        assert result.exit_code == 2

    def test_version(self, runner):
        assert runner.invoke(main, ["--version"]).exit_code == 0


class TestLint:
    def test_fixture_has_errors_exit_one(self, runner):
        result = runner.invoke(
            main,
            ["lint", "--rules", str(fixture_path("fix_obo", "rules.tsv"))] + FIX_OBO,
        )
        assert result.exit_code == 1
        assert "RarePropertyUse" in result.output

    def test_clean_input_exits_zero(self, runner, tmp_path):
        clean = tmp_path / "clean.nt"
        lines = [f"<http://x/s{i}> <http://x/p> <http://x/o> ." for i in range(12)]
        clean.write_text("\n".join(lines) + "\n")
        result = runner.invoke(main, ["lint", str(clean)])
        assert result.exit_code == 0

    def test_output_dir_writes_findings(self, runner, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(
            main,
            ["--output-dir", str(out), "--quiet", "lint"]
            + ["--rules", str(fixture_path("fix_obo", "rules.tsv"))]
            + FIX_OBO,
        )
        assert result.exit_code == 1
        findings = [json.loads(l) for l in (out / "findings.jsonl").read_text().splitlines()]
        assert all(set(f) >= {"category", "severity", "ontology", "subject"} for f in findings)
        assert (out / "summary.md").exists()

    def test_unsupported_format_reported_not_crash(self, runner, tmp_path):
        owl = tmp_path / "legacy.owl"
        owl.write_text('<?xml version="1.0"?><rdf:RDF xmlns:rdf="http://w/">')
        result = runner.invoke(main, ["lint", str(owl)])
        assert result.exit_code == 1
        assert "FormatUnsupported" in result.output

    def test_jobs_parallel_same_result(self, runner, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        args = ["--quiet", "lint", "--rules", str(fixture_path("fix_obo", "rules.tsv"))] + FIX_OBO
        r1 = runner.invoke(main, ["--output-dir", str(out1), "--jobs", "1"] + args)
        r2 = runner.invoke(main, ["--output-dir", str(out2), "--jobs", "3"] + args)
        assert r1.exit_code == r2.exit_code == 1
        assert (out1 / "findings.jsonl").read_bytes() == (out2 / "findings.jsonl").read_bytes()


class TestXref:
    def test_summary_and_exit(self, runner):
        result = runner.invoke(
            main,
            ["xref", "--registry", str(fixture_path("fix_obo", "registry.tsv"))] + FIX_OBO,
        )
        assert result.exit_code == 1  # blank-node xref is an error
        assert "recognized OBO identifier" in result.output

    def test_bundled_registry_default(self, runner, tmp_path):
        f = tmp_path / "one.nt"
        f.write_text(
            '<http://x/s> <http://www.geneontology.org/formats/oboInOwl#hasDbXref> "GO:1" .\n'
        )
        result = runner.invoke(main, ["xref", str(f)])
        assert result.exit_code == 0

    def test_json_format(self, runner):
        result = runner.invoke(
            main,
            ["xref", "--format", "json", "--registry", str(fixture_path("fix_obo", "registry.tsv"))]
            + FIX_OBO,
        )
        doc = json.loads(result.output)
        assert doc["total"] == 24


class TestCso:
    CSO_ARGS = [
        "--internal-prefix",
        "http://cso.test/topics/",
        "--kb-map",
        str(fixture_path("fix_cso", "kb_map.tsv")),
    ]

    def test_check_patch_golden(self, runner, tmp_path):
        patch = tmp_path / "patch.ttl"
        result = runner.invoke(
            main,
            ["cso", "check"]
            + self.CSO_ARGS
            + [
                "--correspondence",
                str(fixture_path("fix_cso", "correspondence.tsv")),
                "--patch-out",
                str(patch),
                FIX_CSO,
            ],
        )
        assert result.exit_code == 1  # sameAs violation is an error
        assert patch.read_bytes() == fixture_path("fix_cso", "golden_patch.ttl").read_bytes()

    def test_merge_golden(self, runner, tmp_path):
        merged = tmp_path / "merged.nt"
        result = runner.invoke(
            main,
            ["cso", "merge"] + self.CSO_ARGS + ["--merged-out", str(merged), FIX_CSO],
        )
        assert result.exit_code == 0
        assert merged.read_bytes() == fixture_path("fix_cso", "golden_merged.nt").read_bytes()

    def test_merge_mapping_out(self, runner, tmp_path):
        merged = tmp_path / "m.nt"
        mapping = tmp_path / "mapping.json"
        runner.invoke(
            main,
            ["cso", "merge"]
            + self.CSO_ARGS
            + ["--merged-out", str(merged), "--mapping-out", str(mapping), FIX_CSO],
        )
        doc = json.loads(mapping.read_text())
        assert doc["http://cso.test/topics/t02"] == "http://cso.test/topics/t01"


class TestGraphOutliers:
    def test_offline_edges(self, runner, tmp_path):
        queue = tmp_path / "queue.jsonl"
        result = runner.invoke(
            main,
            [
                "--seed",
                "42",
                "graph",
                "outliers",
                "--edges",
                str(fixture_path("fix_graph", "edges.tsv")),
                "--seeds",
                str(fixture_path("fix_graph", "seeds.txt")),
                "--queue-out",
                str(queue),
            ],
        )
        assert result.exit_code == 0
        rows = [json.loads(l) for l in queue.read_text().splitlines()]
        tactics = {r["payload"]["node"]: r["payload"]["tactic"] for r in rows}
        assert tactics == {
            "p1": "T1",
            "p2": "T1",
            "p3": "T1",
            "b1": "T2",
            "b2": "T2",
            "b3": "T2",
            "b4": "T2",
        }

    def test_requires_source(self, runner):
        result = runner.invoke(main, ["graph", "outliers"])
        assert result.exit_code != 0


class TestConflationScan:
    def test_fixture_suspects(self, runner, tmp_path):
        queue = tmp_path / "queue.jsonl"
        result = runner.invoke(
            main,
            [
                "conflation",
                "scan",
                "--queue-out",
                str(queue),
                str(fixture_path("fix_conf", "fix_conf.ttl")),
            ],
        )
        assert result.exit_code == 0
        rows = [json.loads(l) for l in queue.read_text().splitlines()]
        manifest = json.loads(fixture_path("fix_conf", "manifest.json").read_text())
        assert [r["payload"]["cluster"] for r in rows] == manifest["selected_clusters"]

    def test_file_provider(self, runner, tmp_path):
        vectors = tmp_path / "vectors.tsv"
        labels = {
            "formal verification": "1 0 0",
            "musical composition": "0 1 0",
            "glacier retreat": "0 0 1",
        }
        vectors.write_text("dim 3\n" + "".join(f"{l}\t{v}\n" for l, v in labels.items()))
        ttl = tmp_path / "tiny.ttl"
        ttl.write_text(
            """
            @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
            @prefix cso: <https://cso.kmi.open.ac.uk/schema/cso#> .
            @prefix t: <http://cso.test/topics/> .
            t:x1 rdfs:label "formal verification" ; cso:relatedEquivalent t:x2 .
            t:x2 rdfs:label "musical composition" ; cso:relatedEquivalent t:x3 .
            t:x3 rdfs:label "glacier retreat" .
            """
        )
        queue = tmp_path / "queue.jsonl"
        result = runner.invoke(
            main,
            ["conflation", "scan", "--vectors", str(vectors), "--queue-out", str(queue), str(ttl)],
        )
        assert result.exit_code == 0
        rows = [json.loads(l) for l in queue.read_text().splitlines()]
        assert len(rows) == 1  # orthogonal vectors: mean 0, std 0


class TestReviewStats:
    def test_stats_from_journal(self, runner, tmp_path):
        journal = tmp_path / "verdicts.jsonl"
        rows = [
            {"item": "i1", "reviewer": "r1", "score": -2, "category": None, "timestamp": 1.0},
            {"item": "i1", "reviewer": "r2", "score": -1, "category": None, "timestamp": 2.0},
            {"item": "i2", "reviewer": "r1", "score": 1, "category": None, "timestamp": 3.0},
            {"item": "i2", "reviewer": "r2", "score": 2, "category": None, "timestamp": 4.0},
        ]
        journal.write_text("".join(json.dumps(r) + "\n" for r in rows))
        result = runner.invoke(main, ["review", "stats", "--out", str(journal)])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["per_reviewer"]["r1"]["count"] == 2
        assert doc["majority"] == {"i1": "wrong", "i2": "good"}

    def test_metric_flag(self, runner, tmp_path):
        journal = tmp_path / "verdicts.jsonl"
        # three distinct score values so the two metrics actually diverge
        rows = [
            {"item": "i1", "reviewer": "r1", "score": -2},
            {"item": "i1", "reviewer": "r2", "score": 2},
            {"item": "i2", "reviewer": "r1", "score": 0},
            {"item": "i2", "reviewer": "r2", "score": 0},
            {"item": "i3", "reviewer": "r1", "score": -2},
            {"item": "i3", "reviewer": "r2", "score": -2},
        ]
        journal.write_text("".join(json.dumps(r) + "\n" for r in rows))
        ordinal = json.loads(
            runner.invoke(main, ["review", "stats", "--out", str(journal)]).output
        )
        nominal = json.loads(
            runner.invoke(
                main, ["review", "stats", "--out", str(journal), "--metric", "nominal"]
            ).output
        )
        assert ordinal["alpha_metric"] == "ordinal"
        assert nominal["alpha_metric"] == "nominal"
        assert ordinal["krippendorff_alpha"] != nominal["krippendorff_alpha"]


class TestReportRender:
    def test_render_from_jsonl(self, runner, tmp_path):
        src = tmp_path / "findings.jsonl"
        rows = [
            {"category": "RarePropertyUse", "severity": "warning", "ontology": "A",
             "subject": "<http://x/p>", "evidence": [], "fixable": False, "suggested_fix": None},
            {"category": "RarePropertyUse", "severity": "warning", "ontology": "B",
             "subject": "<http://x/p>", "evidence": [], "fixable": False, "suggested_fix": None},
        ]
        src.write_text("".join(json.dumps(r) + "\n" for r in rows))
        result = runner.invoke(main, ["report", "render", "--in", str(src)])
        assert result.exit_code == 0
        assert "| A |" in result.output

    def test_dedup_flag(self, runner, tmp_path):
        src = tmp_path / "findings.jsonl"
        shared = {"category": "ObjectKindMismatch", "severity": "error",
                  "subject": "<http://x/s>", "evidence": ["<http://x/s> <http://x/p> \"v\" ."],
                  "fixable": False, "suggested_fix": None}
        rows = [dict(shared, ontology="A"), dict(shared, ontology="B")]
        src.write_text("".join(json.dumps(r) + "\n" for r in rows))
        plain = runner.invoke(main, ["report", "render", "--format", "json", "--in", str(src)])
        deduped = runner.invoke(
            main, ["report", "render", "--format", "json", "--dedup", "--in", str(src)]
        )
        assert json.loads(plain.output)["grand_total"] == 2
        assert json.loads(deduped.output)["grand_total"] == 1
