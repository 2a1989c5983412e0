"""Classification verdicts for the integer-graded bundle of a graph algebra.

The dictionary is: aperiodicity of the bundle is Condition (L), the residual
version is Condition (K), and each coincides with the corresponding
intersection property.  The grading group is the integers, which are
amenable, so the bundle is always exact.  Simplicity needs (L) plus a trivial
ideal lattice; pure infiniteness needs (K) plus every maximal-tail vertex
being fed by a cycle inside its tail.  Every verdict carries a
machine-checkable witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .conditions import condition_K, condition_L, saturated_hereditary_sets
from .graphs import (
    DEFAULT_LIMIT,
    Graph,
    LimitExceededError,
    OMEGA,
    Path,
    cycle_vertices,
    induced_subgraph,
)
from .ideals import AdmissiblePair, breaking_vertices_of
from .spectrum import maximal_tails

# No(L) reasons for non-simplicity lean on standard graph-algebra theory
# (an entrance-less cycle yields a non-gauge-invariant ideal); the lattice
# reason is internal to this package.
_EXTERNAL_L_NOTE = (
    "necessity of Condition (L) for simplicity is standard graph-algebra "
    "theory, cited rather than derived here"
)


@dataclass(frozen=True)
class SimpleVerdict:
    verdict: str  # "yes" | "no" | "unknown"
    reason_kind: Optional[str] = None  # "nontrivial_lattice" | "condition_L_fails"
    pair: Optional[AdmissiblePair] = None
    cycle: Optional[Path] = None
    note: Optional[str] = None

    def to_json_obj(self) -> dict:
        obj: dict = {"verdict": self.verdict}
        if self.reason_kind == "nontrivial_lattice":
            obj["reason"] = {
                "kind": self.reason_kind,
                "pair": self.pair.to_json_obj(),
            }
        elif self.reason_kind == "condition_L_fails":
            obj["reason"] = {
                "kind": self.reason_kind,
                "cycle": list(self.cycle.walk_edge_ids()),
                "note": self.note,
            }
        else:
            obj["reason"] = None
        return obj


@dataclass(frozen=True)
class TailWitness:
    """Audit data for one tail vertex: a cycle and a path from it."""

    tail: frozenset[str]
    vertex: str
    cycle: Path
    connect: tuple[str, ...]  # edge ids in traversal order; empty if on cycle

    def to_json_obj(self) -> dict:
        g = self.cycle.graph
        return {
            "tail": list(g.sort_set(self.tail)),
            "vertex": self.vertex,
            "cycle": list(self.cycle.walk_edge_ids()),
            "path": list(self.connect),
        }


@dataclass(frozen=True)
class PurelyInfiniteVerdict:
    verdict: str  # "yes" | "no" | "unknown"
    # reason kinds: "fails_K" | "tail_vertex_not_fed_by_cycle" | "breaking_vertex_gap"
    reason_kind: Optional[str] = None
    vertex: Optional[str] = None
    tail: Optional[frozenset[str]] = None
    h_set: Optional[frozenset[str]] = None
    witnesses: tuple[TailWitness, ...] = ()

    def to_json_obj(self, g: Optional[Graph] = None) -> dict:
        def vlist(S):
            return sorted(S) if g is None else list(g.sort_set(S))

        obj: dict = {"verdict": self.verdict}
        if self.reason_kind == "fails_K":
            obj["reason"] = {"kind": self.reason_kind, "vertex": self.vertex}
        elif self.reason_kind == "tail_vertex_not_fed_by_cycle":
            obj["reason"] = {
                "kind": self.reason_kind,
                "tail": vlist(self.tail),
                "vertex": self.vertex,
            }
        elif self.reason_kind == "breaking_vertex_gap":
            obj["reason"] = {
                "kind": self.reason_kind,
                "H": vlist(self.h_set),
                "vertex": self.vertex,
            }
        else:
            obj["reason"] = None
        return obj


@dataclass(frozen=True)
class ClassificationReport:
    graph: Graph
    aperiodic: bool
    residually_aperiodic: bool
    intersection_property: bool
    residual_intersection: bool
    exact: bool
    ideal_property_of_crossproduct: str  # "yes" | "unknown"
    dual_system_topologically_free: str  # "yes" | "no" | "unknown"
    simple: SimpleVerdict
    purely_infinite: PurelyInfiniteVerdict
    limit_exceeded: bool
    condition_L_witness: Optional[object] = None  # CycleWitness on failure
    condition_K_witness: Optional[str] = None

    def to_json_obj(self) -> dict:
        witnesses: dict = {}
        if self.condition_L_witness is not None:
            witnesses["condition_L"] = {
                "cycle": list(self.condition_L_witness.cycle.walk_edge_ids()),
                "entrances": [e.id for e in self.condition_L_witness.entrance_edges],
            }
        else:
            witnesses["condition_L"] = None
        witnesses["condition_K"] = (
            {"vertex": self.condition_K_witness}
            if self.condition_K_witness is not None
            else None
        )
        witnesses["purely_infinite"] = (
            [w.to_json_obj() for w in self.purely_infinite.witnesses]
            if self.purely_infinite.verdict == "yes"
            else None
        )
        return {
            "aperiodic": self.aperiodic,
            "residually_aperiodic": self.residually_aperiodic,
            "intersection_property": self.intersection_property,
            "residual_intersection": self.residual_intersection,
            "exact": self.exact,
            "ideal_property_of_crossproduct": self.ideal_property_of_crossproduct,
            "dual_system_topologically_free": self.dual_system_topologically_free,
            "simple": self.simple.to_json_obj(),
            "purely_infinite": self.purely_infinite.to_json_obj(self.graph),
            "witnesses": witnesses,
            "limit_exceeded": self.limit_exceeded,
        }


def is_simple(g: Graph, limit: int = DEFAULT_LIMIT):
    """Simplicity verdict: Condition (L) plus a trivial ideal lattice."""
    sh = saturated_hereditary_sets(g, limit)
    nontrivial = [H for H in sh if H and H != frozenset(g.vertices)]
    if nontrivial:
        pair = AdmissiblePair(g, nontrivial[0], frozenset())
        return SimpleVerdict("no", "nontrivial_lattice", pair=pair)
    L = condition_L(g)
    if not L.holds:
        return SimpleVerdict(
            "no", "condition_L_fails", cycle=L.witness.cycle, note=_EXTERNAL_L_NOTE
        )
    return SimpleVerdict("yes")


def _find_cycle_at(g: Graph, v: str) -> Path:
    """A first-return cycle at v, by DFS in canonical edge order."""
    stack: list[tuple[str, list]] = [(v, [])]
    seen: set[str] = set()
    while stack:
        u, walk = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        for e in reversed(g.out_edges(u)):
            if e.rng == v:
                return Path.from_walk(g, walk + [e])
            if e.rng not in seen:
                stack.append((e.rng, walk + [e]))
    raise AssertionError(f"no cycle at {v!r}: caller promised one")


def _connect(g: Graph, src: str, dst: str) -> tuple[str, ...]:
    """Edge ids of a shortest path src -> dst, in traversal order."""
    if src == dst:
        return ()
    prev: dict[str, object] = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for e in g.out_edges(u):
                if e.rng not in prev:
                    prev[e.rng] = e
                    if e.rng == dst:
                        ids = []
                        cur = dst
                        while prev[cur] is not None:
                            edge = prev[cur]
                            ids.append(edge.id)
                            cur = edge.src
                        return tuple(reversed(ids))
                    nxt.append(e.rng)
        frontier = nxt
    raise AssertionError(f"no path {src!r} -> {dst!r}: caller promised one")


def is_purely_infinite(g: Graph, limit: int = DEFAULT_LIMIT) -> PurelyInfiniteVerdict:
    """Pure infiniteness: Condition (K), cycles feeding every tail vertex,
    and no infinite-receiver gaps anywhere in the ideal lattice.

    Under (K), any cycle met inside a tail automatically has an entrance
    inside the tail: paths starting in a tail stay in it, so the two
    first-return paths at a cycle vertex diverge inside the tail.

    The gap clause: if some saturated hereditary H admits a vertex v in its
    breaking range, the quotient by (H, empty B) keeps the gap projection of
    v as a fresh source vertex whose corner is one-dimensional, a finite
    projection.  Pure infiniteness passes to quotients, so such a graph is
    never purely infinite.
    """
    K = condition_K(g)
    if not K.holds:
        return PurelyInfiniteVerdict("no", "fails_K", vertex=K.witness)
    witnesses = []
    for M in maximal_tails(g, limit):
        sub = induced_subgraph(g, M)
        on_cycle = g.sort_set(cycle_vertices(sub))
        for v in g.sort_set(M):
            fed_by = [y for y in on_cycle if g.geq(v, y)]
            if not fed_by:
                return PurelyInfiniteVerdict(
                    "no", "tail_vertex_not_fed_by_cycle", vertex=v, tail=M
                )
            y = fed_by[0]
            cycle = _find_cycle_at(sub, y)
            cycle_in_g = Path(g, cycle.edge_ids)  # same ids, ambient graph
            witnesses.append(TailWitness(M, v, cycle_in_g, _connect(g, y, v)))
    for H in saturated_hereditary_sets(g, limit):
        gaps = g.sort_set(breaking_vertices_of(g, H))
        if gaps:
            return PurelyInfiniteVerdict(
                "no", "breaking_vertex_gap", vertex=gaps[0], h_set=H
            )
    return PurelyInfiniteVerdict("yes", witnesses=tuple(witnesses))


def classify(g: Graph, limit: int = DEFAULT_LIMIT) -> ClassificationReport:
    L = condition_L(g)
    K = condition_K(g)
    assert L.holds or not K.holds  # (K) implies (L)

    finite_graph = all(e.mult != OMEGA for e in g.edges)
    if finite_graph:
        dual_tf = "yes" if L.holds else "no"
    else:
        dual_tf = "unknown"  # the equivalence is only available for finite graphs

    limit_exceeded = False
    try:
        simple = is_simple(g, limit)
        pi = is_purely_infinite(g, limit)
    except LimitExceededError:
        limit_exceeded = True
        simple = SimpleVerdict("unknown")
        pi = (
            PurelyInfiniteVerdict("no", "fails_K", vertex=K.witness)
            if not K.holds
            else PurelyInfiniteVerdict("unknown")
        )
    assert pi.verdict != "yes" or K.holds

    return ClassificationReport(
        graph=g,
        aperiodic=L.holds,
        residually_aperiodic=K.holds,
        intersection_property=L.holds,
        residual_intersection=K.holds,
        exact=True,  # integer grading; amenable groups give exact bundles
        ideal_property_of_crossproduct="yes" if K.holds else "unknown",
        dual_system_topologically_free=dual_tf,
        simple=simple,
        purely_infinite=pi,
        limit_exceeded=limit_exceeded,
        condition_L_witness=L.witness,
        condition_K_witness=K.witness,
    )


def report_to_json(report: ClassificationReport) -> str:
    return json.dumps(report.to_json_obj(), indent=2) + "\n"


def report_to_text(report: ClassificationReport) -> str:
    g = report.graph

    def mark(b) -> str:
        if isinstance(b, bool):
            return "yes" if b else "no"
        return b

    lines = [
        f"graph: {len(g.vertices)} vertices, {len(g.edges)} edge records",
        f"aperiodic / Condition (L):           {mark(report.aperiodic)}",
        f"residually aperiodic / Condition (K): {mark(report.residually_aperiodic)}",
        f"intersection property:               {mark(report.intersection_property)}",
        f"residual intersection property:      {mark(report.residual_intersection)}",
        f"exact:                               {mark(report.exact)}",
        f"ideal property of crossed product:   {report.ideal_property_of_crossproduct}",
        f"dual system topologically free:      {report.dual_system_topologically_free}",
    ]
    s = report.simple
    if s.verdict == "yes":
        lines.append("simple:                              yes")
    elif s.verdict == "unknown":
        lines.append("simple:                              unknown (limit exceeded)")
    elif s.reason_kind == "nontrivial_lattice":
        lines.append(
            f"simple:                              no: nontrivial ideal I_{{{s.pair.label}}}"
        )
    else:
        ids = ",".join(s.cycle.walk_edge_ids())
        lines.append(
            f"simple:                              no: entrance-less cycle [{ids}]"
        )
    p = report.purely_infinite
    if p.verdict == "yes":
        lines.append("purely infinite:                     yes")
    elif p.verdict == "unknown":
        lines.append("purely infinite:                     unknown (limit exceeded)")
    elif p.reason_kind == "fails_K":
        lines.append(
            f"purely infinite:                     no: Condition (K) fails at {p.vertex}"
        )
    elif p.reason_kind == "breaking_vertex_gap":
        hs = ",".join(g.sort_set(p.h_set))
        lines.append(
            "purely infinite:                     "
            f"no: {p.vertex} keeps an infinite-receiver gap over H={{{hs}}} "
            f"(finite corner in the quotient)"
        )
    else:
        tail = ",".join(g.sort_set(p.tail))
        lines.append(
            "purely infinite:                     "
            f"no: vertex {p.vertex} in tail {{{tail}}} is not fed by a cycle"
        )
    if report.limit_exceeded:
        lines.append("note: enumeration limit exceeded; lattice-dependent fields unknown")
    return "\n".join(lines) + "\n"
