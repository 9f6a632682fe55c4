import random

import pytest

from ontolint.findings import Category, Severity
from ontolint.graph import Dataset, Graph
from ontolint.profiler import (
    RangeKind,
    RangeRule,
    RuleSource,
    effective_rules,
    find_object_kind_conflicts,
    find_rare_properties,
    load_range_rules,
    profile_properties,
)
from ontolint.terms import RDF_TYPE, RDFS_LABEL, RDFS_RANGE, XSD_STRING, Blank, Iri, Literal, Triple

P = "http://x/p"
Q = "http://x/q"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"


def _ds(**graphs) -> Dataset:
    ds = Dataset()
    for oid, triples in graphs.items():
        ds.add_graph(oid, Graph(triples))
    return ds


def _t(s, p, o):
    return Triple(Iri(s), Iri(p), o if not isinstance(o, str) else Iri(o))


class TestProfileProperties:
    def test_single_triple(self):
        ds = _ds(a=[_t("http://x/s", P, "http://x/o")])
        profiles = profile_properties(ds)
        assert len(profiles) == 1
        assert profiles[0].uses_total == 1
        assert profiles[0].object_kinds == {"iri": 1, "blank": 0, "literal": 0}

    def test_object_kind_counts(self):
        # 3 IRI objects, 1 literal object for the same predicate
        triples = [
            _t("http://x/s1", P, "http://x/o1"),
            _t("http://x/s2", P, "http://x/o2"),
            _t("http://x/s3", P, "http://x/o3"),
            Triple(Iri("http://x/s4"), Iri(P), Literal("v")),
        ]
        profiles = profile_properties(_ds(a=triples))
        assert profiles[0].object_kinds == {"iri": 3, "blank": 0, "literal": 1}

    def test_uses_by_ontology_additive(self):
        a = [_t(f"http://x/a{i}", P, "http://x/o") for i in range(2)]
        b = [_t(f"http://x/b{i}", P, "http://x/o") for i in range(5)]
        profiles = profile_properties(_ds(A=a, B=b))
        (pr,) = profiles
        assert pr.uses_by_ontology == {"A": 2, "B": 5}
        assert pr.uses_total == 7

    def test_sorted_desc_then_lexicographic(self):
        triples = [
            _t("http://x/s", "http://x/zz", "http://x/o"),
            _t("http://x/s", "http://x/aa", "http://x/o"),
            _t("http://x/s2", "http://x/aa", "http://x/o"),
        ]
        profiles = profile_properties(_ds(a=triples))
        assert [pr.predicate for pr in profiles] == ["http://x/aa", "http://x/zz"]

    def test_defined_via_type_and_label(self):
        triples = [
            _t(P, RDF_TYPE, OWL_OBJECT_PROPERTY),
            _t("http://x/s", P, "http://x/o"),
            Triple(Iri(Q), Iri(RDFS_LABEL), Literal("q prop")),
            _t("http://x/s", Q, "http://x/o"),
            _t("http://x/s", "http://x/undefined", "http://x/o"),
        ]
        profiles = {pr.predicate: pr for pr in profile_properties(_ds(a=triples))}
        assert profiles[P].defined
        assert profiles[Q].defined
        assert not profiles["http://x/undefined"].defined

    def test_declared_range_sides(self):
        triples = [
            Triple(Iri(P), Iri(RDFS_RANGE), Iri(XSD_STRING)),
            Triple(Iri(Q), Iri(RDFS_RANGE), Iri("http://x/SomeClass")),
            _t("http://x/s", P, "http://x/o"),
            _t("http://x/s", Q, "http://x/o"),
        ]
        profiles = {pr.predicate: pr for pr in profile_properties(_ds(a=triples))}
        assert profiles[P].declared_range is RangeKind.LITERAL_ONLY
        assert profiles[Q].declared_range is RangeKind.IRI_ONLY

    def test_permutation_invariant(self):
        rng = random.Random(3)
        triples = [
            _t(f"http://x/s{i}", rng.choice([P, Q]), f"http://x/o{i % 3}") for i in range(40)
        ]
        base = profile_properties(_ds(a=list(triples)))
        for _ in range(3):
            rng.shuffle(triples)
            assert profile_properties(_ds(a=list(triples))) == base

    def test_total_equals_dataset_size(self):
        rng = random.Random(9)
        a = [_t(f"http://x/s{i}", rng.choice([P, Q]), "http://x/o") for i in range(20)]
        b = [_t(f"http://x/t{i}", rng.choice([P, Q]), "http://x/o") for i in range(13)]
        ds = _ds(A=a, B=b)
        profiles = profile_properties(ds)
        assert sum(pr.uses_total for pr in profiles) == ds.total_triples()


class TestRareProperties:
    def _profiles(self, uses, defined=True):
        from ontolint.profiler import PropertyProfile

        return [
            PropertyProfile(
                predicate=P,
                uses_total=uses,
                uses_by_ontology={"A": uses},
                object_kinds={"iri": uses, "blank": 0, "literal": 0},
                distinct_subjects=uses,
                defined=defined,
            )
        ]

    def test_undefined_single_use_is_error(self):
        (f,) = find_rare_properties(self._profiles(1, defined=False))
        assert f.category is Category.RARE_PROPERTY_USE
        assert f.severity is Severity.ERROR

    def test_above_threshold_not_flagged(self):
        assert find_rare_properties(self._profiles(11), threshold=10) == []

    def test_at_threshold_defined_is_warning(self):
        (f,) = find_rare_properties(self._profiles(10), threshold=10)
        assert f.severity is Severity.WARNING

    def test_malformed_iri_is_error(self):
        from ontolint.profiler import PropertyProfile

        profiles = [
            PropertyProfile(
                predicate="http://x/bad|prop",
                uses_total=2,
                uses_by_ontology={"A": 2},
                object_kinds={"iri": 2, "blank": 0, "literal": 0},
                distinct_subjects=2,
                defined=True,
            )
        ]
        (f,) = find_rare_properties(profiles)
        assert f.severity is Severity.ERROR
        assert "malformed" in f.detail

    def test_threshold_zero_flags_nothing(self):
        assert find_rare_properties(self._profiles(1), threshold=0) == []

    def test_threshold_max_flags_everything(self):
        ds = _ds(
            a=[_t(f"http://x/s{i}", P, "http://x/o") for i in range(4)]
            + [_t("http://x/s", Q, "http://x/o")]
        )
        profiles = profile_properties(ds)
        max_uses = max(pr.uses_total for pr in profiles)
        assert len(find_rare_properties(profiles, threshold=max_uses)) == len(profiles)

    def test_multi_ontology_attribution_is_combined(self):
        from ontolint.profiler import PropertyProfile

        pr = PropertyProfile(P, 3, {"A": 2, "B": 1}, {"iri": 3, "blank": 0, "literal": 0}, 3, True)
        (f,) = find_rare_properties([pr])
        assert f.ontology == "combined"


class TestObjectKindConflicts:
    def test_iri_only_rule_literal_that_is_iri_fixable(self):
        triples = [_t(f"http://x/s{i}", P, f"http://x/o{i}") for i in range(9)]
        bad = Triple(Iri("http://x/s9"), Iri(P), Literal("http://x/target"))
        triples.append(bad)
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        rules = {P: RangeRule(P, RangeKind.IRI_ONLY, RuleSource.USER_CONFIG)}
        findings = find_object_kind_conflicts(profiles, rules, ds)
        assert len(findings) == 1
        f = findings[0]
        assert f.category is Category.OBJECT_KIND_MISMATCH
        assert f.fixable
        assert f.suggested_fix == Triple(Iri("http://x/s9"), Iri(P), Iri("http://x/target"))

    def test_fifty_fifty_no_rule_no_finding(self):
        triples = [_t(f"http://x/s{i}", P, "http://x/o") for i in range(5)] + [
            Triple(Iri(f"http://x/t{i}"), Iri(P), Literal("v")) for i in range(5)
        ]
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        assert find_object_kind_conflicts(profiles, {}, ds) == []

    def test_literal_only_rule_iri_objects(self):
        triples = [Triple(Iri(f"http://x/s{i}"), Iri(Q), Literal(f"v{i}")) for i in range(4)]
        triples += [_t("http://x/s8", Q, "http://x/o1"), _t("http://x/s9", Q, "http://x/o2")]
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        rules = {Q: RangeRule(Q, RangeKind.LITERAL_ONLY, RuleSource.USER_CONFIG)}
        findings = find_object_kind_conflicts(profiles, rules, ds)
        assert len(findings) == 2
        assert all(f.category is Category.OBJECT_KIND_MISMATCH for f in findings)
        assert all(not f.fixable for f in findings)

    def test_minority_heuristic(self):
        triples = [_t(f"http://x/s{i}", P, "http://x/o") for i in range(11)]
        triples.append(Triple(Iri("http://x/odd"), Iri(P), Literal("stray")))
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        findings = find_object_kind_conflicts(profiles, {}, ds)
        assert len(findings) == 1
        assert findings[0].category is Category.OBJECT_KIND_SUSPECT
        assert findings[0].severity is Severity.WARNING

    def test_minority_frac_configurable(self):
        triples = [_t(f"http://x/s{i}", P, "http://x/o") for i in range(3)]
        triples.append(Triple(Iri("http://x/odd"), Iri(P), Literal("stray")))
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        assert find_object_kind_conflicts(profiles, {}, ds, minority_frac=0.10) == []
        assert len(find_object_kind_conflicts(profiles, {}, ds, minority_frac=0.30)) == 1

    def test_exclusion_set(self):
        triples = [_t(f"http://x/s{i}", P, "http://x/o") for i in range(11)]
        triples.append(Triple(Iri("http://x/odd"), Iri(P), Literal("stray")))
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        assert find_object_kind_conflicts(profiles, {}, ds, exclude={P}) == []

    def test_blank_object_violates_both_rule_kinds(self):
        triples = [Triple(Iri("http://x/s"), Iri(P), Blank("b"))]
        triples += [_t(f"http://x/s{i}", P, "http://x/o") for i in range(3)]
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        rules = {P: RangeRule(P, RangeKind.IRI_ONLY, RuleSource.USER_CONFIG)}
        findings = find_object_kind_conflicts(profiles, rules, ds)
        assert len(findings) == 1
        assert not findings[0].fixable


class TestRules:
    def test_load_rules_file(self, tmp_path):
        p = tmp_path / "rules.tsv"
        p.write_text("# comment\nhttp://x/p IriOnly\n<http://x/q> LiteralOnly\n")
        rules = load_range_rules(p)
        assert rules == [
            RangeRule("http://x/p", RangeKind.IRI_ONLY, RuleSource.USER_CONFIG),
            RangeRule("http://x/q", RangeKind.LITERAL_ONLY, RuleSource.USER_CONFIG),
        ]

    def test_bad_rule_kind_rejected(self, tmp_path):
        p = tmp_path / "rules.tsv"
        p.write_text("http://x/p Sometimes\n")
        with pytest.raises(ValueError):
            load_range_rules(p)

    def test_user_config_overrides_declared_range(self):
        triples = [
            Triple(Iri(P), Iri(RDFS_RANGE), Iri(XSD_STRING)),
            _t("http://x/s", P, "http://x/o"),
        ]
        ds = _ds(A=triples)
        profiles = profile_properties(ds)
        merged = effective_rules(profiles, [RangeRule(P, RangeKind.IRI_ONLY, RuleSource.USER_CONFIG)])
        assert merged[P].expected is RangeKind.IRI_ONLY
        assert merged[P].source is RuleSource.USER_CONFIG
        merged_default = effective_rules(profiles)
        assert merged_default[P].expected is RangeKind.LITERAL_ONLY
        assert merged_default[P].source is RuleSource.DECLARED_RANGE
