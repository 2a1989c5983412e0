"""Maximal tails, breaking vertices and the prime/primitive pair poset.

A maximal tail is a nonempty vertex set M that is upward closed, co-saturated
(every finitely-received member has an in-edge from M) and downward directed:
any two members dominate a common member.  The first two conditions say
exactly that the complement of M is saturated hereditary.

Prime points come in two kinds: one per maximal tail M, carrying the pair
(Omega(M), full admissible range), and one per breaking vertex v, carrying
(Omega(v), admissible range minus v).  With Condition (K) these points are
the primitive ideal space; without it they are only the prime gauge-invariant
pairs and the space is flagged accordingly.

Note on breaking vertices: v qualifies when it receives infinitely many edges
overall but only finitely many (and at least one) from *outside* Omega(v),
i.e. from vertices that dominate v.  The count is over sources outside
Omega(v); counting sources inside Omega(v) instead is a different (and here
rejected) reading.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .conditions import condition_K, is_hereditary, is_saturated, \
    saturated_hereditary_sets
from .graphs import DEFAULT_LIMIT, Graph, OMEGA
from .ideals import AdmissiblePair, breaking_vertices_of, pair_leq, pair_meet


def omega(g: Graph, xs: Iterable[str]) -> frozenset[str]:
    """Vertices outside xs dominating no member of xs.

    Equivalently: the complement of the set of vertices reachable from xs.
    """
    xs = frozenset(xs)
    if not xs:
        raise ValueError("omega needs a nonempty vertex set")
    reachable = g.reachable_from(xs)
    return frozenset(g.vertices) - reachable


def is_downward_directed(g: Graph, M: Iterable[str]) -> bool:
    """Any two members of M dominate a common member of M."""
    M = frozenset(M)
    return all(
        any(g.geq(v, y) and g.geq(w, y) for y in M) for v in M for w in M
    )


def is_maximal_tail(g: Graph, M: Iterable[str]) -> bool:
    M = frozenset(M)
    if not M:
        return False
    H = frozenset(g.vertices) - M
    return is_hereditary(g, H) and is_saturated(g, H) and is_downward_directed(g, M)


def maximal_tails(g: Graph, limit: int = DEFAULT_LIMIT) -> list[frozenset[str]]:
    """All maximal tails, ordered by size descending then canonical mask."""
    tails = []
    for H in saturated_hereditary_sets(g, limit):
        M = frozenset(g.vertices) - H
        if M and is_downward_directed(g, M):
            tails.append(M)
    tails.sort(key=lambda M: (-len(M), g.mask(M)))
    return tails


def breaking_vertices(g: Graph) -> list[str]:
    """Vertices with infinite in-degree that break over their own omega set."""
    out = []
    for v in g.vertices:
        if g.in_degree(v) != OMEGA:
            continue
        Ov = omega(g, [v])
        assert is_hereditary(g, Ov) and is_saturated(g, Ov)
        if v in breaking_vertices_of(g, Ov):
            out.append(v)
    return out


@dataclass(frozen=True)
class PrimPoint:
    kind: str  # "tail" | "breaking"
    tail: frozenset[str] | None
    vertex: str | None
    pair: AdmissiblePair

    @property
    def label(self) -> str:
        if self.kind == "tail":
            vs = self.pair.graph.sort_set(self.tail)
            return "Tail{" + ",".join(vs) + "}"
        return f"Breaking({self.vertex})"

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "tail": list(self.pair.graph.sort_set(self.tail)) if self.tail else None,
            "vertex": self.vertex,
            "label": self.label,
            "pair": self.pair.to_json_obj(),
        }


def prime_points(g: Graph, limit: int = DEFAULT_LIMIT) -> list[PrimPoint]:
    """One point per maximal tail, then one per breaking vertex."""
    points = []
    for M in maximal_tails(g, limit):
        H = frozenset(g.vertices) - M
        points.append(PrimPoint("tail", M, None, AdmissiblePair(g, H, breaking_vertices_of(g, H))))
    for v in breaking_vertices(g):
        H = omega(g, [v])
        B = breaking_vertices_of(g, H) - {v}
        points.append(PrimPoint("breaking", None, v, AdmissiblePair(g, H, B)))
    seen = set()
    for pt in points:
        key = (pt.pair.h, pt.pair.b)
        assert key not in seen, f"duplicate prime pair {pt.pair.label}: bug"
        seen.add(key)
    return points


@dataclass(frozen=True)
class PrimSpace:
    graph: Graph
    points: tuple[PrimPoint, ...]
    status: str  # "Primitive" | "PrimeOnly"

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        """leq[i][j]: point j lies in the closure of point i."""
        return tuple(
            tuple(pair_leq(p.pair, q.pair) for q in self.points)
            for p in self.points
        )

    def closure_of(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(len(self.points)) if self.leq[i][j])

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        n = len(self.points)
        leq = self.leq
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not leq[i][j]:
                    continue
                if any(k != i and k != j and leq[i][k] and leq[k][j] for k in range(n)):
                    continue
                out.append((i, j))
        return tuple(out)


def prim_space(g: Graph, limit: int = DEFAULT_LIMIT) -> PrimSpace:
    points = tuple(prime_points(g, limit))
    status = "Primitive" if condition_K(g).holds else "PrimeOnly"
    space = PrimSpace(g, points, status)
    # distinct pairs make specialization antisymmetric
    n = len(points)
    for i in range(n):
        for j in range(n):
            if i != j:
                assert not (space.leq[i][j] and space.leq[j][i])
    return space


def prim_space_to_t0(ps: PrimSpace):
    """The prime-point poset as a finite T0 space (labels are point labels)."""
    from .actions import FiniteT0Space

    labels = [pt.label for pt in ps.points]
    pairs = [
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(len(labels))
        if i != j and ps.leq[i][j]
    ]
    return FiniteT0Space.from_pairs(labels, pairs)


def meet_of_primes_above(g: Graph, p: AdmissiblePair, points: list[PrimPoint]) -> AdmissiblePair:
    """Fold the meet over all prime pairs above p; empty fold gives the top."""
    top = AdmissiblePair(g, frozenset(g.vertices), frozenset())
    acc = top
    for pt in points:
        if pair_leq(p, pt.pair):
            acc = pair_meet(acc, pt.pair)
    return acc


# -- exports -------------------------------------------------------------------


def prim_space_to_json_obj(ps: PrimSpace) -> dict:
    return {
        "status": ps.status,
        "points": [
            {**pt.to_json_obj(), "closure": list(ps.closure_of(i))}
            for i, pt in enumerate(ps.points)
        ],
    }


def prim_space_to_json(ps: PrimSpace) -> str:
    return json.dumps(prim_space_to_json_obj(ps), indent=2) + "\n"


def prim_space_to_dot(ps: PrimSpace) -> str:
    lines = ["digraph prim_space {", "  rankdir=BT;"]
    for pt in ps.points:
        lines.append(f'  "{pt.label}";')
    for i, j in ps.covers:
        lines.append(f'  "{ps.points[i].label}" -> "{ps.points[j].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def prim_space_to_text(ps: PrimSpace) -> str:
    lines = [f"status: {ps.status}", f"points: {len(ps.points)}"]
    for i, pt in enumerate(ps.points):
        closure = ",".join(str(j) for j in ps.closure_of(i))
        lines.append(f"  [{i}] {pt.label} pair I_{{{pt.pair.label}}} closure [{closure}]")
    return "\n".join(lines) + "\n"
