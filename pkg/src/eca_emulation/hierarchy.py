"""The emulation hierarchy over duality-class representatives.

A rule and its dual emulate (and are emulated by) exactly the same rules,
so the 256 rules fall into 136 duality classes and the hierarchy is
computed per class representative (the smaller Wolfram number).  An edge
(emulator -> emulated, kmin) records the smallest supercell size in
1..K at which the emulated representative's class is reproduced inside the
emulator's supercell algebra, together with a minimal witnessing encoding.

Raw per-(rule, size) results are kept on the graph and in optional on-disk
cache shards; class-level aggregation happens only at edge/report time, so
per-member differences are never lost.  All outputs are deterministic:
independent of worker count, chunking and dict order.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .emulation import Encoding, EmulationWitness, emulated_rule_map, proper_subalgebra_search
from .rules import EcaRule, _DUAL, rule_from_wolfram
from .words import Word

# Bump when the computation changes in a way that invalidates cached shards.
CACHE_SCHEMA = 1

# Rules whose emulation counts as the capability of perfect memory: the
# identity, the two one-cell shifts, and the negation.  All four are
# self-dual, so they are their own class representatives.
MEMORY_RULES = (51, 170, 204, 240)


def rep_of(n: int) -> int:
    """The representative (smaller Wolfram number) of n's duality class."""
    if not 0 <= n <= 255:
        raise ValueError(f"Wolfram number {n} not in 0..255")
    return min(n, _DUAL[n])


REPS = tuple(sorted({rep_of(n) for n in range(256)}))


@dataclass(frozen=True)
class DualityClass:
    representative: int
    members: tuple[int, ...]


def dual_classes() -> list[DualityClass]:
    """All duality classes {n, dual(n)}, sorted by representative."""
    return [
        DualityClass(r, tuple(sorted({r, _DUAL[r]})))
        for r in REPS
    ]


@dataclass(frozen=True)
class HierarchyEdge:
    """emulated <=_kmin emulator, with a minimal witnessing encoding."""

    emulator: int
    emulated: int
    kmin: int
    enc0: Word
    enc1: Word

    def witness(self) -> EmulationWitness:
        enc = Encoding(len(self.enc0), self.enc0, self.enc1)
        return EmulationWitness(rule_from_wolfram(self.emulated),
                                rule_from_wolfram(self.emulator),
                                enc.k, enc)


@dataclass(frozen=True)
class HierarchyGraph:
    """Directed graph on duality-class representatives.

    ``raw`` maps (representative, k) to {emulated wolfram: (enc0, enc1)}
    for every computed size; it is None on graphs loaded from JSON, which
    carry only nodes and edges.
    """

    K: int
    nodes: tuple[int, ...]
    edges: tuple[HierarchyEdge, ...]
    self_similar: tuple[int, ...]
    raw: dict | None = field(default=None, compare=False, repr=False)

    def edge(self, emulator: int, emulated: int) -> HierarchyEdge | None:
        for e in self.edges:
            if e.emulator == emulator and e.emulated == emulated:
                return e
        return None

    def edges_from(self, emulator: int) -> list[HierarchyEdge]:
        return [e for e in self.edges if e.emulator == emulator]

    def edges_to(self, emulated: int) -> list[HierarchyEdge]:
        return [e for e in self.edges if e.emulated == emulated]


def _compute_cell(args: tuple[int, int]) -> tuple[int, int, list[tuple[int, int, int]]]:
    g, k = args
    m = emulated_rule_map(rule_from_wolfram(g), k)
    return g, k, sorted((f, e.enc0.bits, e.enc1.bits) for f, e in m.items())


def _shard_path(cache_dir: str, g: int, k: int) -> str:
    return os.path.join(cache_dir, f"rule{g:03d}_k{k:02d}.json")


def _load_shard(cache_dir: str, g: int, k: int) -> list[tuple[int, int, int]] | None:
    path = _shard_path(cache_dir, g, k)
    try:
        with open(path, "r", encoding="ascii") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("schema") != CACHE_SCHEMA or data.get("rule") != g or data.get("k") != k:
        return None
    return [tuple(entry) for entry in data["emulated"]]


def _store_shard(cache_dir: str, g: int, k: int, entries: list[tuple[int, int, int]]) -> None:
    payload = {"schema": CACHE_SCHEMA, "rule": g, "k": k,
               "emulated": [list(e) for e in entries]}
    path = _shard_path(cache_dir, g, k)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def compute_hierarchy(K: int, reps: list[int] | None = None, workers: int = 1,
                      cache_dir: str | None = None) -> HierarchyGraph:
    """Compute the hierarchy for supercell sizes 1..K.

    ``reps`` restricts the computed emulators (arbitrary rule numbers are
    canonicalized to their class representatives); emulated representatives
    outside the selection still appear as edge targets and nodes.  Cells
    (rule, k) are independent and are farmed to ``workers`` processes; the
    merged result is deterministic regardless of scheduling.  With
    ``cache_dir`` set, finished cells are loaded from / stored to one JSON
    shard per cell so K can be raised incrementally.
    """
    if K < 1:
        raise ValueError(f"K {K} < 1")
    if workers < 1:
        raise ValueError(f"workers {workers} < 1")
    sources = REPS if reps is None else tuple(sorted({rep_of(r) for r in reps}))

    raw: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    pending = []
    for g in sources:
        for k in range(1, K + 1):
            if cache_dir is not None:
                hit = _load_shard(cache_dir, g, k)
                if hit is not None:
                    raw[(g, k)] = hit
                    continue
            pending.append((g, k))

    if pending:
        if workers == 1:
            results = map(_compute_cell, pending)
        else:
            pool = ProcessPoolExecutor(max_workers=workers)
            try:
                results = list(pool.map(_compute_cell, pending, chunksize=4))
            finally:
                pool.shutdown()
        for g, k, entries in results:
            raw[(g, k)] = entries
            if cache_dir is not None:
                os.makedirs(cache_dir, exist_ok=True)
                _store_shard(cache_dir, g, k, entries)

    # A closed pair reports both orientations, so the raw result of every
    # cell is closed under duality and the class representative of each
    # emulated rule is itself present as a key.
    edges = []
    self_similar = []
    targets: set[int] = set()
    for g in sources:
        best: dict[int, tuple[int, int, int]] = {}
        selfsim = False
        for k in range(1, K + 1):
            for f, e0, e1 in raw[(g, k)]:
                r = rep_of(f)
                if f != r:
                    continue
                if r not in best:
                    best[r] = (k, e0, e1)
                if r == g and k >= 2:
                    selfsim = True
        for r, (k, e0, e1) in sorted(best.items()):
            edges.append(HierarchyEdge(g, r, k, Word(e0, k), Word(e1, k)))
            targets.add(r)
        if selfsim:
            self_similar.append(g)

    nodes = tuple(sorted(set(sources) | targets))
    edges.sort(key=lambda e: (e.emulator, e.emulated))
    return HierarchyGraph(K, nodes, tuple(edges), tuple(self_similar),
                          raw={key: tuple(val) for key, val in raw.items()})


def transitive_reduction(g: HierarchyGraph) -> HierarchyGraph:
    """Drop non-self edges implied by transitivity; reachability is preserved.

    Rendering aid only: kmin values of surviving edges are unchanged and
    the raw table is dropped, so reduced graphs must not be classified.
    """
    self_edges = [e for e in g.edges if e.emulator == e.emulated]
    rest = {(e.emulator, e.emulated): e for e in g.edges if e.emulator != e.emulated}
    succ: dict[int, set[int]] = {n: set() for n in g.nodes}
    for a, b in rest:
        succ[a].add(b)

    def reachable(src: int, dst: int) -> bool:
        stack = [src]
        seen = {src}
        while stack:
            cur = stack.pop()
            for nxt in succ[cur]:
                if nxt == dst:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    for a, b in sorted(rest):
        succ[a].discard(b)
        if not reachable(a, b):
            succ[a].add(b)
        else:
            del rest[(a, b)]

    kept = self_edges + list(rest.values())
    kept.sort(key=lambda e: (e.emulator, e.emulated))
    return HierarchyGraph(g.K, g.nodes, tuple(kept), g.self_similar, raw=None)


@dataclass(frozen=True)
class ClassificationReport:
    """Derived classifications of the computed hierarchy."""

    K: int
    self_similar: tuple[int, ...]
    memory_capable: tuple[int, ...]
    zero_emulators: tuple[int, ...]
    chaos_candidates: tuple[int, ...]
    emulation_counts: dict[int, int]

    def to_json_dict(self) -> dict:
        return {
            "K": self.K,
            "self_similar": list(self.self_similar),
            "memory_capable": list(self.memory_capable),
            "zero_emulators": list(self.zero_emulators),
            "chaos_candidates": list(self.chaos_candidates),
            "emulation_counts": {str(r): c for r, c in sorted(self.emulation_counts.items())},
        }


def classify(g: HierarchyGraph, K: int | None = None) -> ClassificationReport:
    """Fill the classification report from the graph plus subalgebra searches.

    memory_capable: emulates one of the memory rules (51, 170, 204, 240) at
    some size <= K.  zero_emulators: emulates rule 0 at some size in 2..K.
    chaos_candidates: no proper subalgebra with >= 2 elements at any size
    in 2..K.  emulation_counts: distinct representatives emulated at sizes
    2..K; only the trivial size-1 self emulation is not counted, so a rule
    that re-emulates itself at a larger size scores at least 1.
    """
    if K is None:
        K = g.K
    if K != g.K:
        raise ValueError(f"graph was computed with K={g.K}, not {K}")
    if g.raw is None:
        raise ValueError("classification needs raw results; imported graphs have none")

    memory_capable = []
    zero_emulators = []
    chaos_candidates = []
    counts: dict[int, int] = {}
    computed = sorted({gg for gg, _ in g.raw})
    for node in computed:
        emulated = {e.emulated for e in g.edges_from(node)}
        if emulated & set(MEMORY_RULES):
            memory_capable.append(node)
        if any(f == 0 for k in range(2, K + 1) for f, _, _ in g.raw[(node, k)]):
            zero_emulators.append(node)
        counts[node] = len({rep_of(f) for k in range(2, K + 1)
                            for f, _, _ in g.raw[(node, k)]})
        # Any emulated rule at k >= 2 is a two-element subalgebra, so the
        # expensive search only runs for rules with empty results there.
        if any(g.raw[(node, k)] for k in range(2, K + 1)):
            continue
        rule = rule_from_wolfram(node)
        if all(proper_subalgebra_search(rule, k) is None for k in range(2, K + 1)):
            chaos_candidates.append(node)

    return ClassificationReport(
        K=K,
        self_similar=g.self_similar,
        memory_capable=tuple(memory_capable),
        zero_emulators=tuple(zero_emulators),
        chaos_candidates=tuple(chaos_candidates),
        emulation_counts=counts,
    )


# ---------------------------------------------------------------------------
# Serialization.

def export(g: HierarchyGraph, format: str) -> bytes:
    """Serialize the graph as 'dot', 'csv' or 'json'; byte-stable output."""
    if format == "csv":
        return _export_csv(g)
    if format == "json":
        return _export_json(g)
    if format == "dot":
        return _export_dot(g)
    raise ValueError(f"unsupported format {format!r}")


def _export_csv(g: HierarchyGraph) -> bytes:
    lines = ["emulator,emulated,kmin"]
    for e in sorted(g.edges, key=lambda e: (e.emulator, e.emulated, e.kmin)):
        lines.append(f"{e.emulator},{e.emulated},{e.kmin}")
    return ("\n".join(lines) + "\n").encode("ascii")


def _export_json(g: HierarchyGraph) -> bytes:
    obj = {
        "K": g.K,
        "nodes": list(g.nodes),
        "self_similar": list(g.self_similar),
        "edges": [
            {"from": e.emulator, "to": e.emulated, "kmin": e.kmin,
             "enc0": e.enc0.text, "enc1": e.enc1.text}
            for e in sorted(g.edges, key=lambda e: (e.emulator, e.emulated))
        ],
    }
    return (json.dumps(obj, indent=1, sort_keys=True) + "\n").encode("ascii")


def _export_dot(g: HierarchyGraph) -> bytes:
    # Self edges are implied (every rule emulates itself at size 1); nodes
    # that re-emulate themselves at size >= 2 are drawn with a double border.
    lines = ["digraph emulation_hierarchy {", "  rankdir=BT;"]
    marked = set(g.self_similar)
    for n in g.nodes:
        attrs = ' [peripheries=2]' if n in marked else ""
        lines.append(f"  r{n}{attrs};")
    for e in sorted(g.edges, key=lambda e: (e.emulator, e.emulated)):
        if e.emulator == e.emulated:
            continue
        lines.append(f'  r{e.emulator} -> r{e.emulated} [label="k={e.kmin}"];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


def load_json(data: bytes | str) -> HierarchyGraph:
    """Rebuild a graph from its JSON export (without raw results)."""
    obj = json.loads(data)
    edges = tuple(
        HierarchyEdge(int(e["from"]), int(e["to"]), int(e["kmin"]),
                      Word.from_text(e["enc0"]), Word.from_text(e["enc1"]))
        for e in obj["edges"]
    )
    return HierarchyGraph(int(obj["K"]), tuple(obj["nodes"]), edges,
                          tuple(obj["self_similar"]), raw=None)
