"""Directed multigraphs with countable edge multiplicities.

The vertex order is canonical: it is the declaration order of the input, and
every enumeration in this package iterates vertices in that order.  All
derived outputs are therefore deterministic.

Reachability convention (fixed here once, used verbatim everywhere else):
``v >= w`` holds when there is a path *from w to v*, edges followed in the
src -> rng direction.  The empty path gives ``v >= v``.  A hereditary vertex
set is consequently closed under predecessors: whenever v lies in H, every
vertex that can reach v lies in H as well.

An edge multiplicity is a positive integer or ``OMEGA``; the latter stands
for a countably infinite bundle of parallel edges and lets finite data model
infinite receivers.  A finite bundle may equivalently be given as one edge of
multiplicity m or as m parallel edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

DEFAULT_LIMIT = 16


class GraphFormatError(ValueError):
    """Raised when input text violates the graph format.

    The message always carries a location (line number or edge position).
    """


class LimitExceededError(RuntimeError):
    """Raised when a subset-enumerating operation refuses a large input."""

    def __init__(self, size: int, limit: int, what: str = "vertices"):
        self.size = size
        self.limit = limit
        super().__init__(
            f"input has {size} {what} but the enumeration limit is {limit}; "
            f"raise it with --limit"
        )


class Omega:
    """Infinite multiplicity: absorbing under + and above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        if isinstance(other, (int, Omega)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return isinstance(other, Omega)

    def __hash__(self):
        return hash("omega-multiplicity")

    def __gt__(self, other):
        if isinstance(other, int):
            return True
        if isinstance(other, Omega):
            return False
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Omega)):
            return True
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, Omega)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, int):
            return False
        if isinstance(other, Omega):
            return True
        return NotImplemented

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "omega"


OMEGA = Omega()

Mult = Union[int, Omega]


def mult_sum(values: Iterable[Mult]) -> Mult:
    total: Mult = 0
    for v in values:
        total = total + v
    return total


def is_finite(m: Mult) -> bool:
    return isinstance(m, int)


def mult_to_json(m: Mult):
    return "omega" if isinstance(m, Omega) else m


def _parse_mult(token, where: str) -> Mult:
    if token == "omega" or isinstance(token, Omega):
        return OMEGA
    if isinstance(token, bool) or not isinstance(token, int):
        raise GraphFormatError(
            f"{where}: multiplicity must be a positive integer or \"omega\", got {token!r}"
        )
    if token <= 0:
        raise GraphFormatError(f"{where}: multiplicity must be positive, got {token}")
    return token


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    rng: str
    mult: Mult = 1


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph.  Safe to share between threads."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphFormatError(f"vertex {v!r}: duplicate id")
            seen.add(v)
        eids = set()
        for e in self.edges:
            if e.id in eids:
                raise GraphFormatError(f"edge {e.id!r}: duplicate id")
            eids.add(e.id)
            for endpoint in (e.src, e.rng):
                if endpoint not in seen:
                    raise GraphFormatError(
                        f"edge {e.id!r}: dangling endpoint {endpoint!r}"
                    )
            _parse_mult(e.mult, f"edge {e.id!r}")

    # -- canonical order helpers -------------------------------------------

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def sort_set(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Vertices of vs in canonical order."""
        return tuple(sorted(vs, key=self.index))

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(v for i, v in enumerate(self.vertices) if m >> i & 1)

    def set_key(self, vs: Iterable[str]):
        """Canonical sort key for vertex sets: by size, then by bitmask."""
        m = self.mask(vs)
        return (bin(m).count("1"), m)

    def check_limit(self, limit: int = DEFAULT_LIMIT) -> None:
        if len(self.vertices) > limit:
            raise LimitExceededError(len(self.vertices), limit)

    # -- adjacency ----------------------------------------------------------

    @cached_property
    def out_edges_by_vertex(self) -> dict[str, tuple[Edge, ...]]:
        by: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            by[e.src].append(e)
        return {v: tuple(es) for v, es in by.items()}

    @cached_property
    def in_edges_by_vertex(self) -> dict[str, tuple[Edge, ...]]:
        by: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            by[e.rng].append(e)
        return {v: tuple(es) for v, es in by.items()}

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        self.index(v)
        return self.out_edges_by_vertex[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        self.index(v)
        return self.in_edges_by_vertex[v]

    def in_degree(self, v: str) -> Mult:
        """Total multiplicity of edges ending at v."""
        return mult_sum(e.mult for e in self.in_edges(v))

    # -- reachability ---------------------------------------------------------

    @cached_property
    def _reach(self) -> tuple[int, ...]:
        """reach[i] = bitmask of vertices reachable from vertex i (incl. i)."""
        n = len(self.vertices)
        succ = [0] * n
        for e in self.edges:
            succ[self.index(e.src)] |= 1 << self.index(e.rng)
        reach = []
        for i in range(n):
            seen = 1 << i
            stack = [i]
            while stack:
                j = stack.pop()
                new = succ[j] & ~seen
                seen |= new
                k = 0
                while new:
                    if new & 1:
                        stack.append(k)
                    new >>= 1
                    k += 1
            reach.append(seen)
        return tuple(reach)

    def geq(self, v: str, w: str) -> bool:
        """Decide v >= w: w = v, or some path runs from w to v."""
        return bool(self._reach[self.index(w)] >> self.index(v) & 1)

    def reachable_from(self, vs: Iterable[str]) -> frozenset[str]:
        """All vertices reachable from vs (vs included)."""
        m = 0
        for v in vs:
            m |= self._reach[self.index(v)]
        return self.unmask(m)

    def ancestors_of(self, vs: Iterable[str]) -> frozenset[str]:
        """All vertices from which some member of vs is reachable."""
        target = self.mask(vs)
        m = 0
        for i in range(len(self.vertices)):
            if self._reach[i] & target:
                m |= 1 << i
        return self.unmask(m)


@dataclass(frozen=True)
class Component:
    vertices: tuple[str, ...]
    nontrivial: bool


def scc_decomposition(g: Graph) -> tuple[Component, ...]:
    """Strongly connected components, ordered by smallest member vertex.

    A component is nontrivial exactly when it contains a cycle, i.e. it has
    more than one vertex or carries a self-loop.
    """
    n = len(g.vertices)
    succ: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        succ[g.index(e.src)].append(g.index(e.rng))
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index_of[root] != -1:
            continue
        # iterative Tarjan; (vertex, iterator position) work list
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if index_of[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if recurse:
                continue
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    comps.sort(key=lambda c: c[0])
    out = []
    for comp in comps:
        vs = tuple(g.vertices[i] for i in comp)
        loops = any(e.src == e.rng and e.src in vs for e in g.edges)
        out.append(Component(vs, len(comp) > 1 or loops))
    return tuple(out)


def cycle_vertices(g: Graph) -> frozenset[str]:
    """Vertices lying on at least one cycle."""
    out: set[str] = set()
    for comp in scc_decomposition(g):
        if comp.nontrivial:
            out.update(comp.vertices)
    return frozenset(out)


def first_return_count(g: Graph, v: str, cap: int = 2) -> int:
    """Number of distinct first-return paths at v, saturated at cap.

    A first-return path runs from v back to v and visits v only at its
    endpoints.  Parallel edges of multiplicity m contribute m choices per
    step; OMEGA multiplicities count as at least cap choices.  The result is
    exact below cap and equals cap when at least cap paths exist.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    g.index(v)

    def step(m: Mult) -> int:
        return cap if isinstance(m, Omega) else min(m, cap)

    # restrict to vertices on some v->...->v walk avoiding v internally
    fwd: set[str] = set()
    stack = [e.rng for e in g.out_edges(v) if e.rng != v]
    while stack:
        u = stack.pop()
        if u in fwd or u == v:
            continue
        fwd.add(u)
        stack.extend(e.rng for e in g.out_edges(u) if e.rng != v)
    bwd: set[str] = set()
    stack = [e.src for e in g.in_edges(v) if e.src != v]
    while stack:
        u = stack.pop()
        if u in bwd or u == v:
            continue
        bwd.add(u)
        stack.extend(e.src for e in g.in_edges(u) if e.src != v)
    region = fwd & bwd

    # a cycle inside the region pumps to infinitely many first returns
    if region:
        sub = induced_subgraph(g, region)
        if any(c.nontrivial for c in scc_decomposition(sub)):
            return cap

    # region is a DAG: count completions u -> ... -> v by saturated DP,
    # in a topological order obtained by iterative DFS over the region
    topo: list[str] = []
    seen: set[str] = set()
    for start in sorted(region, key=g.index):
        if start in seen:
            continue
        work = [(start, False)]
        while work:
            u, expanded = work.pop()
            if expanded:
                topo.append(u)
                continue
            if u in seen:
                continue
            seen.add(u)
            work.append((u, True))
            for e in g.out_edges(u):
                if e.rng in region and e.rng not in seen:
                    work.append((e.rng, False))

    count: dict[str, int] = {}
    for u in topo:  # topo has successors first
        total = 0
        for e in g.out_edges(u):
            if e.rng == v:
                total += step(e.mult)
            elif e.rng in region:
                c = count[e.rng]
                if c:
                    total += step(e.mult) * c
            if total >= cap:
                total = cap
                break
        count[u] = min(total, cap)

    total = 0
    for e in g.out_edges(v):
        if e.rng == v:
            total += step(e.mult)
        elif e.rng in region:
            c = count[e.rng]
            if c:
                total += step(e.mult) * c
        if total >= cap:
            return cap
    return min(total, cap)


def induced_subgraph(g: Graph, vs: Iterable[str]) -> Graph:
    """Subgraph on vs, keeping vertex order, edge order and edge ids."""
    keep = set(vs)
    for v in keep:
        g.index(v)
    return Graph(
        vertices=tuple(v for v in g.vertices if v in keep),
        edges=tuple(e for e in g.edges if e.src in keep and e.rng in keep),
    )


@dataclass(frozen=True)
class Path:
    """A composable edge sequence, listed range-first.

    Edges are stored in the order mu_1 ... mu_n with src(mu_i) = rng(mu_(i+1)),
    so the walk starts at src(mu_n) and ends at rng(mu_1).  Use from_walk to
    build a Path from edges in traversal order.
    """

    graph: Graph
    edge_ids: tuple[str, ...]

    def __post_init__(self):
        if not self.edge_ids:
            raise ValueError("a path needs at least one edge")
        by_id = {e.id: e for e in self.graph.edges}
        edges = []
        for eid in self.edge_ids:
            if eid not in by_id:
                raise ValueError(f"unknown edge {eid!r}")
            edges.append(by_id[eid])
        for a, b in zip(edges, edges[1:]):
            if a.src != b.rng:
                raise ValueError(
                    f"edges {a.id!r} and {b.id!r} do not compose: "
                    f"src({a.id})={a.src!r} != rng({b.id})={b.rng!r}"
                )

    @classmethod
    def from_walk(cls, graph: Graph, edges: Iterable[Edge]) -> "Path":
        """Build from edges in traversal order (source of the walk first)."""
        return cls(graph, tuple(e.id for e in reversed(list(edges))))

    @cached_property
    def _edges(self) -> tuple[Edge, ...]:
        by_id = {e.id: e for e in self.graph.edges}
        return tuple(by_id[eid] for eid in self.edge_ids)

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def src(self) -> str:
        return self._edges[-1].src

    @property
    def rng(self) -> str:
        return self._edges[0].rng

    @property
    def is_cycle(self) -> bool:
        return self.rng == self.src

    def walk_vertices(self) -> tuple[str, ...]:
        """Vertices in traversal order, endpoints included."""
        out = [self.src]
        for e in reversed(self._edges):
            out.append(e.rng)
        return tuple(out)

    def walk_edge_ids(self) -> tuple[str, ...]:
        return tuple(reversed(self.edge_ids))


# -- parsing and serialization ------------------------------------------------


def detect_format(text: str) -> str:
    return "json" if text.lstrip()[:1] == "{" else "edgelist"


def parse_graph(text: str, format: str = "json") -> Graph:
    if format == "json":
        return _parse_json(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_json(text: str) -> Graph:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise GraphFormatError("top level: expected a JSON object")
    vertices = raw.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError('"vertices": expected a list of strings')
    edges_raw = raw.get("edges", [])
    if not isinstance(edges_raw, list):
        raise GraphFormatError('"edges": expected a list')
    edges = []
    for k, e in enumerate(edges_raw):
        where = f"edge #{k}"
        if not isinstance(e, dict):
            raise GraphFormatError(f"{where}: expected an object")
        eid = e.get("id", f"e{k}")
        if not isinstance(eid, str):
            raise GraphFormatError(f"{where}: id must be a string")
        missing = [key for key in ("src", "rng", "mult") if key not in e]
        if missing:
            raise GraphFormatError(f"{where}: missing {', '.join(missing)}")
        edges.append(
            Edge(
                id=eid,
                src=e["src"],
                rng=e["rng"],
                mult=_parse_mult(e["mult"], where),
            )
        )
    return Graph(vertices=tuple(vertices), edges=tuple(edges))


def _parse_edgelist(text: str) -> Graph:
    vertices: list[str] = []
    declared: set[str] = set()
    edges: list[Edge] = []
    k = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        where = f"line {lineno}"
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise GraphFormatError(f"{where}: expected 'vertex <id>'")
            if tokens[1] in declared:
                raise GraphFormatError(f"{where}: vertex {tokens[1]!r}: duplicate id")
            declared.add(tokens[1])
            vertices.append(tokens[1])
            continue
        if len(tokens) != 3:
            raise GraphFormatError(f"{where}: expected 'src rng mult'")
        src, rng, mtok = tokens
        for endpoint in (src, rng):
            if endpoint not in declared:
                raise GraphFormatError(f"{where}: dangling endpoint {endpoint!r}")
        if mtok == "omega":
            mult: Mult = OMEGA
        else:
            try:
                mult = int(mtok)
            except ValueError:
                raise GraphFormatError(
                    f"{where}: multiplicity must be a positive integer or \"omega\", "
                    f"got {mtok!r}"
                ) from None
            mult = _parse_mult(mult, where)
        edges.append(Edge(id=f"e{k}", src=src, rng=rng, mult=mult))
        k += 1
    return Graph(vertices=tuple(vertices), edges=tuple(edges))


def graph_to_json(g: Graph) -> str:
    obj = {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "src": e.src, "rng": e.rng, "mult": mult_to_json(e.mult)}
            for e in g.edges
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def graph_to_edgelist(g: Graph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"{e.src} {e.rng} {mult_to_json(e.mult)}" for e in g.edges]
    return "\n".join(lines) + "\n"


def serialize_graph(g: Graph, format: str = "json") -> str:
    if format == "json":
        return graph_to_json(g)
    if format == "edgelist":
        return graph_to_edgelist(g)
    raise ValueError(f"unknown graph format {format!r}")
