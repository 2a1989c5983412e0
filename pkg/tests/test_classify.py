"""Classification verdicts and their witnesses."""

import json
import random

import jsonschema
from graphck import (
    Graph,
    admissible_pairs,
    classify,
    condition_K,
    first_return_count,
    induced_subgraph,
    is_purely_infinite,
    is_simple,
    maximal_tails,
    parse_graph,
    quotient_graph,
    report_to_json,
    report_to_text,
)

from util import DOCS_DIR, random_graph


def test_classify_e1(corpus):
    r = classify(corpus["e1"])
    assert r.aperiodic and r.residually_aperiodic and r.exact
    assert r.intersection_property and r.residual_intersection
    assert r.ideal_property_of_crossproduct == "yes"
    assert r.dual_system_topologically_free == "yes"
    assert r.simple.verdict == "yes" and r.purely_infinite.verdict == "yes"


def test_classify_e2_witness(corpus):
    r = classify(corpus["e2"])
    assert not r.aperiodic and not r.residually_aperiodic
    assert r.condition_L_witness is not None
    assert r.condition_L_witness.missing_entrance
    assert r.ideal_property_of_crossproduct == "unknown"
    assert r.dual_system_topologically_free == "no"


def test_classify_e5_all_flags(corpus):
    r = classify(corpus["e5"])
    assert r.aperiodic and r.residually_aperiodic
    assert r.simple.verdict == "yes" and r.purely_infinite.verdict == "yes"


def test_classify_omega_graph_abstains_on_dual(corpus):
    assert classify(corpus["e4"]).dual_system_topologically_free == "unknown"


def test_is_simple_examples(corpus):
    assert is_simple(corpus["e1"]).verdict == "yes"
    r2 = is_simple(corpus["e2"])
    assert (r2.verdict, r2.reason_kind) == ("no", "condition_L_fails")
    assert r2.note and "standard" in r2.note
    r4 = is_simple(corpus["e4"])
    assert (r4.verdict, r4.reason_kind) == ("no", "nontrivial_lattice")
    assert (r4.pair.h, r4.pair.b) == (frozenset("w"), frozenset())


def test_is_purely_infinite_examples(corpus):
    assert is_purely_infinite(corpus["e1"]).verdict == "yes"
    assert is_purely_infinite(corpus["e5"]).verdict == "yes"
    r4 = is_purely_infinite(corpus["e4"])
    assert (r4.verdict, r4.reason_kind) == ("no", "tail_vertex_not_fed_by_cycle")
    assert r4.tail == frozenset("vw") and r4.vertex == "w"
    r2 = is_purely_infinite(corpus["e2"])
    assert (r2.verdict, r2.reason_kind) == ("no", "fails_K")


def test_pi_witnesses_are_auditable(corpus):
    rng = random.Random(71)
    graphs = list(corpus.values()) + [random_graph(rng, max_n=6) for _ in range(60)]
    for g in graphs:
        r = is_purely_infinite(g)
        if r.verdict != "yes":
            continue
        for w in r.witnesses:
            assert w.vertex in w.tail
            assert w.cycle.is_cycle
            assert set(w.cycle.walk_vertices()) <= w.tail
            # the connecting path really runs from the cycle to the vertex
            cur = w.cycle.src
            for eid in w.connect:
                (e,) = [e for e in g.edges if e.id == eid]
                assert e.src == cur
                cur = e.rng
            assert cur == w.vertex


def test_pi_breaking_gap_clause():
    # omega loop at a single vertex: no gaps anywhere, purely infinite
    oinf = parse_graph(
        '{"vertices":["v"],"edges":[{"id":"l","src":"v","rng":"v","mult":"omega"}]}'
    )
    assert is_purely_infinite(oinf).verdict == "yes"
    assert is_simple(oinf).verdict == "yes"
    # all tails are fed, but v1 keeps a gap over H={v2}: the quotient by
    # (H, empty) has a one-dimensional corner, so the graph is not PI
    g = parse_graph(
        '{"vertices":["v0","v1","v2"],"edges":['
        '{"id":"a","src":"v2","rng":"v2","mult":"omega"},'
        '{"id":"b","src":"v2","rng":"v1","mult":"omega"},'
        '{"id":"c","src":"v0","rng":"v1","mult":1},'
        '{"id":"d","src":"v1","rng":"v0","mult":1},'
        '{"id":"e","src":"v0","rng":"v0","mult":1}]}'
    )
    r = is_purely_infinite(g)
    assert (r.verdict, r.reason_kind) == ("no", "breaking_vertex_gap")
    assert r.vertex == "v1" and r.h_set == frozenset(["v2"])
    assert "gap" in __import__("graphck").report_to_text(
        __import__("graphck").classify(g)
    )


def test_pi_implies_K_and_quotient_persistence(corpus):
    rng = random.Random(73)
    graphs = list(corpus.values()) + [random_graph(rng, max_n=5) for _ in range(40)]
    for g in graphs:
        r = is_purely_infinite(g)
        if r.verdict != "yes":
            continue
        assert condition_K(g).holds
        for p in admissible_pairs(g).pairs:
            assert is_purely_infinite(quotient_graph(g, p)).verdict == "yes"


def test_simple_with_cycle_matches_single_tail_criterion(corpus):
    rng = random.Random(79)
    graphs = list(corpus.values()) + [random_graph(rng, max_n=6) for _ in range(60)]
    for g in graphs:
        if is_simple(g).verdict != "yes":
            continue
        has_cycle = any(first_return_count(g, v) >= 1 for v in g.vertices)
        if not has_cycle:
            continue
        tails = maximal_tails(g)
        assert tails == [frozenset(g.vertices)]
        assert is_purely_infinite(g).verdict == (
            "yes"
            if all(
                any(g.geq(v, y) for y in g.vertices if first_return_count(g, y) >= 1)
                for v in g.vertices
            )
            else "no"
        )


def test_tail_facts_backing_the_pi_reduction(corpus):
    """Paths from tail vertices stay inside the tail; under (K), first-return
    counts computed inside the tail agree with the ambient ones."""
    rng = random.Random(83)
    graphs = list(corpus.values()) + [random_graph(rng, max_n=6) for _ in range(60)]
    for g in graphs:
        for M in maximal_tails(g):
            for y in M:
                assert g.reachable_from([y]) <= M
            if condition_K(g).holds:
                sub = induced_subgraph(g, M)
                for y in M:
                    assert first_return_count(sub, y) == first_return_count(g, y)


def test_limit_exceeded_marks_unknown():
    g = Graph(tuple(f"v{i}" for i in range(20)), ())
    r = classify(g, limit=16)
    assert r.limit_exceeded
    assert r.simple.verdict == "unknown"
    assert r.purely_infinite.verdict == "unknown"
    # conditions (L) and (K) are never limited
    assert r.aperiodic and r.residually_aperiodic


def test_report_json_schema(corpus):
    schema = json.loads((DOCS_DIR / "report.schema.json").read_text())
    for g in corpus.values():
        obj = json.loads(report_to_json(classify(g)))
        jsonschema.validate(obj, schema)


def test_report_text_renders(corpus):
    text = report_to_text(classify(corpus["e4"]))
    assert "purely infinite" in text and "not fed by a cycle" in text
    text2 = report_to_text(classify(corpus["e2"]))
    assert "entrance-less cycle" in text2
