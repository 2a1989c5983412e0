"""Admissible pairs (H, B) and their lattice.

A pair consists of a saturated hereditary vertex set H together with a set B
of infinite receivers outside H that have finitely many (and at least one)
in-edges from outside H.  The pairs, ordered by

    (H, B) <= (H', B')   iff   H is contained in H' and B in H' | B',

form a lattice naming the gauge-invariant (equivalently graded) ideals
I_{H,B} of the graph algebra.  Meets follow the closed formula

    (H & H', (H & B') | (B & H') | (B & B'))

while joins are computed extensionally as least upper bounds, which exist
because the lattice is finite with top (all vertices, empty B).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .conditions import is_hereditary, is_saturated, saturated_hereditary_sets
from .graphs import (
    DEFAULT_LIMIT,
    Edge,
    Graph,
    OMEGA,
    is_finite,
    mult_sum,
)


def breaking_vertices_of(g: Graph, H: Iterable[str]) -> frozenset[str]:
    """Infinite receivers outside H fed finitely (but not zero) from outside H.

    This is the admissible range for the B component of a pair over H.
    """
    H = frozenset(H)
    if not (is_hereditary(g, H) and is_saturated(g, H)):
        raise ValueError(f"not a saturated hereditary set: {sorted(H)}")
    out = []
    for v in g.vertices:
        if v in H or g.in_degree(v) != OMEGA:
            continue
        outside = mult_sum(e.mult for e in g.in_edges(v) if e.src not in H)
        if is_finite(outside) and outside > 0:
            out.append(v)
    return frozenset(out)


@dataclass(frozen=True)
class AdmissiblePair:
    """A saturated hereditary set with a choice of breaking vertices.

    Stands for the ideal I_{H,B}; the pair is the ideal's name, operator
    data is never materialized.
    """

    graph: Graph
    h: frozenset[str]
    b: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "h", frozenset(self.h))
        object.__setattr__(self, "b", frozenset(self.b))
        extra = self.b - breaking_vertices_of(self.graph, self.h)
        if extra:
            raise ValueError(
                f"B contains vertices outside the admissible range for H: "
                f"{sorted(extra)}"
            )

    @property
    def label(self) -> str:
        g = self.graph
        return (
            "H={" + ",".join(g.sort_set(self.h)) + "};"
            "B={" + ",".join(g.sort_set(self.b)) + "}"
        )

    def key(self):
        g = self.graph
        return (g.set_key(self.h), g.set_key(self.b))

    def to_json_obj(self) -> dict:
        g = self.graph
        return {"H": list(g.sort_set(self.h)), "B": list(g.sort_set(self.b))}


def _same_graph(p: AdmissiblePair, q: AdmissiblePair) -> None:
    if p.graph != q.graph:
        raise ValueError("pairs belong to different graphs")


def pair_leq(p: AdmissiblePair, q: AdmissiblePair) -> bool:
    _same_graph(p, q)
    return p.h <= q.h and p.b <= (q.h | q.b)


def pair_meet(p: AdmissiblePair, q: AdmissiblePair) -> AdmissiblePair:
    _same_graph(p, q)
    h = p.h & q.h
    b = (p.h & q.b) | (p.b & q.h) | (p.b & q.b)
    return AdmissiblePair(p.graph, h, b)  # constructor re-checks admissibility


def pair_join(
    p: AdmissiblePair, q: AdmissiblePair, limit: int = DEFAULT_LIMIT
) -> AdmissiblePair:
    _same_graph(p, q)
    lattice = admissible_pairs(p.graph, limit)
    return lattice.pairs[lattice.join(lattice.index_of(p), lattice.index_of(q))]


@dataclass(frozen=True)
class IdealLattice:
    graph: Graph
    pairs: tuple[AdmissiblePair, ...]

    def __post_init__(self):
        bottom = self.pairs[0]
        top = self.pairs[-1]
        assert bottom.h == frozenset() and bottom.b == frozenset()
        assert top.h == frozenset(self.graph.vertices) and top.b == frozenset()

    def __len__(self) -> int:
        return len(self.pairs)

    @cached_property
    def _index(self) -> dict:
        return {(p.h, p.b): i for i, p in enumerate(self.pairs)}

    def index_of(self, p: AdmissiblePair) -> int:
        try:
            return self._index[(p.h, p.b)]
        except KeyError:
            raise ValueError(f"pair {p.label} is not in the lattice") from None

    @cached_property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(pair_leq(p, q) for q in self.pairs) for p in self.pairs
        )

    @cached_property
    def _up(self) -> tuple[int, ...]:
        """Bitmask per element: the set of elements above it."""
        n = len(self.pairs)
        return tuple(
            sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n)
        )

    @cached_property
    def _down(self) -> tuple[int, ...]:
        n = len(self.pairs)
        return tuple(
            sum(1 << j for j in range(n) if self.leq[j][i]) for i in range(n)
        )

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs (i, j) where j covers i: i < j with nothing strictly between."""
        n = len(self.pairs)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                between = self._up[i] & self._down[j] & ~(1 << i) & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.index_of(pair_meet(p, q)) for q in self.pairs)
            for p in self.pairs
        )

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.pairs)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                ubs = self._up[i] & self._up[j]
                least = [
                    k for k in range(n) if ubs >> k & 1 and ubs & ~self._up[k] == 0
                ]
                assert len(least) == 1, "join is not unique; lattice is broken"
                row.append(least[0])
            table.append(tuple(row))
        return tuple(table)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    @property
    def bottom(self) -> AdmissiblePair:
        return self.pairs[0]

    @property
    def top(self) -> AdmissiblePair:
        return self.pairs[-1]


def admissible_pairs(g: Graph, limit: int = DEFAULT_LIMIT) -> IdealLattice:
    """All admissible pairs of g, in canonical order, as a lattice."""
    pairs = []
    for H in saturated_hereditary_sets(g, limit):
        candidates = g.sort_set(breaking_vertices_of(g, H))
        for m in range(1 << len(candidates)):
            B = frozenset(candidates[i] for i in range(len(candidates)) if m >> i & 1)
            pairs.append(AdmissiblePair(g, H, B))
    pairs.sort(key=lambda p: p.key())
    return IdealLattice(g, tuple(pairs))


def quotient_graph(g: Graph, p: AdmissiblePair) -> Graph:
    """The graph whose algebra is the quotient by the ideal named by p.

    Vertices outside H survive; every edge with source outside H is kept
    verbatim (heredity already rules out edges entering H from outside, and
    edges leaving H die with H).  Every admissible-range vertex v left out of
    B keeps its infinite-receiver gap: a fresh source vertex v~ is added with
    a single edge v~ -> v carrying the gap.
    """
    if p.graph != g:
        raise ValueError("pair does not belong to this graph")
    keep = [v for v in g.vertices if v not in p.h]
    gap_vertices = [
        v for v in g.sort_set(breaking_vertices_of(g, p.h)) if v not in p.b
    ]
    taken = set(keep)
    bar_of: dict[str, str] = {}
    for v in gap_vertices:
        name = v + "~"
        while name in taken:
            name += "~"
        taken.add(name)
        bar_of[v] = name
    edges = [e for e in g.edges if e.src not in p.h]
    edge_ids = {e.id for e in edges}
    for v in gap_vertices:
        eid = "e~" + v
        while eid in edge_ids:
            eid += "~"
        edge_ids.add(eid)
        edges.append(Edge(id=eid, src=bar_of[v], rng=v, mult=1))
    return Graph(
        vertices=tuple(keep) + tuple(bar_of[v] for v in gap_vertices),
        edges=tuple(edges),
    )


# -- exports -------------------------------------------------------------------


def lattice_to_json_obj(lat: IdealLattice) -> dict:
    return {
        "vertices": list(lat.graph.vertices),
        "pairs": [p.to_json_obj() for p in lat.pairs],
        "labels": [p.label for p in lat.pairs],
        "leq": [[bool(x) for x in row] for row in lat.leq],
        "covers": [list(c) for c in lat.covers],
        "meet": [list(row) for row in lat.meet_table],
        "join": [list(row) for row in lat.join_table],
    }


def lattice_to_json(lat: IdealLattice) -> str:
    return json.dumps(lattice_to_json_obj(lat), indent=2) + "\n"


def lattice_to_dot(lat: IdealLattice) -> str:
    lines = ["digraph ideal_lattice {", "  rankdir=BT;"]
    for p in lat.pairs:
        lines.append(f'  "{p.label}";')
    for i, j in lat.covers:
        lines.append(f'  "{lat.pairs[i].label}" -> "{lat.pairs[j].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_text(lat: IdealLattice) -> str:
    lines = [f"admissible pairs: {len(lat.pairs)}"]
    for i, p in enumerate(lat.pairs):
        lines.append(f"  [{i}] I_{{{p.label}}}")
    lines.append("cover relations (lower -> upper):")
    if not lat.covers:
        lines.append("  none")
    for i, j in lat.covers:
        lines.append(f"  [{i}] -> [{j}]")
    return "\n".join(lines) + "\n"
