import json

import pytest

from eca_emulation import (
    classify,
    compute_hierarchy,
    dual,
    dual_classes,
    emulated_rule_map,
    export,
    load_json,
    rep_of,
    rule_from_wolfram,
    transitive_reduction,
    verify_witness,
)
from eca_emulation.hierarchy import HierarchyEdge, HierarchyGraph
from eca_emulation.words import Word


@pytest.fixture(scope="module")
def graph_k2():
    return compute_hierarchy(2)


@pytest.fixture(scope="module")
def graph_k3():
    return compute_hierarchy(3, workers=2)


def test_dual_classes_count_and_membership():
    classes = dual_classes()
    assert len(classes) == 136
    by_rep = {c.representative: c for c in classes}
    assert by_rep[110].members == (110, 137)
    assert by_rep[51].members == (51,)
    assert [c.representative for c in classes] == sorted(by_rep)
    # the classes partition the full rule space
    seen = [m for c in classes for m in c.members]
    assert sorted(seen) == list(range(256))


def test_rep_of():
    assert rep_of(137) == 110
    assert rep_of(110) == 110
    assert rep_of(0) == 0
    for n in range(256):
        assert rep_of(n) == min(n, dual(rule_from_wolfram(n)).wolfram)
    with pytest.raises(ValueError):
        rep_of(300)


def test_graph_contains_traffic_edge(graph_k2):
    e = graph_k2.edge(148, 184)
    assert e is not None and e.kmin == 2
    assert e.witness().holds()


def test_every_node_has_trivial_self_edge(graph_k2):
    for n in graph_k2.nodes:
        e = graph_k2.edge(n, n)
        assert e is not None and e.kmin == 1


def test_edges_point_to_representatives(graph_k2):
    reps = {c.representative for c in dual_classes()}
    for e in graph_k2.edges:
        assert e.emulator in reps and e.emulated in reps


def test_edge_witnesses_verify(graph_k3):
    for e in graph_k3.edges:
        assert verify_witness(e.witness(), 30, 3, samples=50, seed=17), e


def test_monotone_in_k(graph_k2, graph_k3):
    g1 = compute_hierarchy(1)
    pairs = {(e.emulator, e.emulated): e.kmin for e in g1.edges}
    pairs2 = {(e.emulator, e.emulated): e.kmin for e in graph_k2.edges}
    pairs3 = {(e.emulator, e.emulated): e.kmin for e in graph_k3.edges}
    assert set(pairs) <= set(pairs2) <= set(pairs3)
    for key, kmin in pairs2.items():
        assert pairs3[key] <= kmin


def test_duality_projection(graph_k3):
    # computing per representative must agree with computing every rule
    # and projecting the results onto classes
    for g in range(256):
        for k in (1, 2, 3):
            projected = {rep_of(f) for f in emulated_rule_map(rule_from_wolfram(g), k)}
            raw = graph_k3.raw[(rep_of(g), k)]
            assert projected == {rep_of(f) for f, _, _ in raw}


def test_subset_computation():
    g = compute_hierarchy(2, reps=[148, 149])  # 149 canonicalizes to its rep
    assert g.edge(148, 184).kmin == 2
    assert all(e.emulator in {148, rep_of(149)} for e in g.edges)


def test_compute_rejects_bad_arguments():
    with pytest.raises(ValueError):
        compute_hierarchy(0)
    with pytest.raises(ValueError):
        compute_hierarchy(2, workers=0)


def test_cache_shards_roundtrip(tmp_path, graph_k2):
    cache = str(tmp_path / "cache")
    first = compute_hierarchy(2, cache_dir=cache)
    assert export(first, "json") == export(graph_k2, "json")
    shards = list((tmp_path / "cache").glob("rule*_k*.json"))
    assert len(shards) == 136 * 2
    # second run is served from the shards and must agree byte for byte
    second = compute_hierarchy(2, cache_dir=cache)
    assert export(second, "json") == export(first, "json")


def test_cache_ignores_foreign_schema(tmp_path):
    cache = tmp_path / "cache"
    cache.mkdir()
    (cache / "rule000_k01.json").write_text('{"schema": -1}')
    g = compute_hierarchy(1, reps=[0], cache_dir=str(cache))
    assert g.edge(0, 0) is not None


# --- transitive reduction ------------------------------------------------

def mkgraph(edges, nodes=None):
    es = tuple(HierarchyEdge(a, b, 1, Word(0, 1), Word(1, 1)) for a, b in edges)
    ns = tuple(sorted(nodes or {n for e in edges for n in e}))
    return HierarchyGraph(1, ns, es, (), raw=None)


def test_reduction_drops_implied_edge():
    g = mkgraph([(1, 2), (2, 3), (1, 3)])
    red = transitive_reduction(g)
    assert {(e.emulator, e.emulated) for e in red.edges} == {(1, 2), (2, 3)}


def test_reduction_keeps_self_loops():
    g = mkgraph([(1, 1), (2, 2)], nodes={1, 2})
    red = transitive_reduction(g)
    assert {(e.emulator, e.emulated) for e in red.edges} == {(1, 1), (2, 2)}


def test_reduction_reconstructs_chain_fragment(graph_k3):
    # 41 over 148 over 184: the chain edges survive, the composed shortcut
    # 41 -> 184 is dropped when the computation found it directly
    assert graph_k3.edge(41, 148) is not None
    assert graph_k3.edge(148, 184) is not None
    red = transitive_reduction(graph_k3)
    assert red.edge(41, 148) is not None
    assert red.edge(148, 184) is not None
    if graph_k3.edge(41, 184) is not None:
        assert red.edge(41, 184) is None


def test_reduction_preserves_reachability(graph_k3):
    red = transitive_reduction(graph_k3)

    def closure(graph):
        succ = {n: set() for n in graph.nodes}
        for e in graph.edges:
            if e.emulator != e.emulated:
                succ[e.emulator].add(e.emulated)
        reach = {}
        for start in graph.nodes:
            seen = set()
            stack = [start]
            while stack:
                for nxt in succ[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            reach[start] = seen
        return reach

    assert closure(red) == closure(graph_k3)
    assert len(red.edges) <= len(graph_k3.edges)


# --- classification -------------------------------------------------------

def test_classify_small(graph_k2):
    report = classify(graph_k2)
    assert report.K == 2
    # chaotic candidates at this small bound must already include the four
    # (classes of) rules that never acquire a proper subalgebra
    assert {30, 45} <= set(report.chaos_candidates)
    assert not set(report.chaos_candidates) & set(report.self_similar)
    for n in (0, 60, 90, 102, 150, 170, 204, 240):
        assert rep_of(n) not in report.chaos_candidates
    # identity-capable rules include the identity itself
    assert 204 in report.memory_capable
    assert 0 in report.zero_emulators
    assert report.emulation_counts[30] == 0
    assert report.emulation_counts[148] >= 1


def test_classify_requires_raw(graph_k2):
    imported = load_json(export(graph_k2, "json"))
    with pytest.raises(ValueError):
        classify(imported)
    with pytest.raises(ValueError):
        classify(graph_k2, K=3)


# --- serialization --------------------------------------------------------

def test_csv_export(graph_k2):
    text = export(graph_k2, "csv").decode()
    lines = text.strip().split("\n")
    assert lines[0] == "emulator,emulated,kmin"
    assert "148,184,2" in lines
    rows = [tuple(int(x) for x in line.split(",")) for line in lines[1:]]
    assert rows == sorted(rows)


def test_csv_header_only_for_empty_graph():
    g = HierarchyGraph(1, (), (), (), raw={})
    assert export(g, "csv") == b"emulator,emulated,kmin\n"


def test_json_roundtrip_byte_identical(graph_k2):
    blob = export(graph_k2, "json")
    assert export(load_json(blob), "json") == blob
    obj = json.loads(blob)
    assert set(obj) == {"K", "nodes", "self_similar", "edges"}
    assert all(set(e) == {"from", "to", "kmin", "enc0", "enc1"} for e in obj["edges"])


def test_dot_export_marks_self_similar(graph_k2):
    text = export(graph_k2, "dot").decode()
    assert text.startswith("digraph")
    assert "  r90 [peripheries=2];" in text  # self-similar at size 2
    assert 'r148 -> r184 [label="k=2"];' in text


def test_unknown_format_rejected(graph_k2):
    with pytest.raises(ValueError):
        export(graph_k2, "xml")
