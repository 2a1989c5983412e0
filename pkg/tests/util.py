"""Shared test helpers: brute-force oracles and seeded random generators.

The oracles deliberately re-derive everything from the raw definitions
(reachability double loops, full subset enumeration, bounded walk DFS) so
they stay independent of the package's optimized code paths.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path as FsPath

from hypothesis import strategies as st

from graphck import (
    Edge,
    FinitePartialAction,
    FiniteT0Space,
    Graph,
    OMEGA,
    PartialHomeo,
    parse_graph,
)

REPO = FsPath(__file__).resolve().parent.parent
CORPUS_DIR = REPO / "corpus"
DOCS_DIR = REPO / "docs"

CORPUS_NAMES = ["e1", "e2", "e3", "e4", "e5", "e6", "e7"]


def load_corpus() -> dict[str, Graph]:
    out = {}
    for name in CORPUS_NAMES:
        out[name] = parse_graph((CORPUS_DIR / f"{name}.json").read_text())
    return out


# -- graph oracles ---------------------------------------------------------------


def brute_is_hereditary(g: Graph, S) -> bool:
    S = frozenset(S)
    return all(w in S for v in S for w in g.vertices if g.geq(v, w))


def brute_is_saturated(g: Graph, S) -> bool:
    S = frozenset(S)
    for v in g.vertices:
        deg = g.in_degree(v)
        if isinstance(deg, int) and 0 < deg:
            if all(e.src in S for e in g.in_edges(v)) and v not in S:
                return False
    return True


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in itertools.combinations(items, r))


def brute_sh_sets(g: Graph) -> set[frozenset]:
    return {
        S
        for S in all_subsets(g.vertices)
        if brute_is_hereditary(g, S) and brute_is_saturated(g, S)
    }


def enumerate_simple_cycles(g: Graph):
    """All vertex-simple cycles, as edge lists in traversal order.

    Each cycle is rooted at its canonically smallest vertex, so every cycle
    appears exactly once up to rotation.
    """
    cycles = []

    def extend(start, smaller, walk, seen):
        u = walk[-1].rng if walk else start
        for e in g.out_edges(u):
            if e.rng in smaller:
                continue
            if e.rng == start:
                cycles.append(walk + [e])
            elif e.rng not in seen:
                extend(start, smaller, walk + [e], seen | {e.rng})

    for i, v in enumerate(g.vertices):
        extend(v, set(g.vertices[:i]), [], {v})
    return cycles


def cycle_has_entrance(g: Graph, cycle_edges) -> bool:
    heads = {e.rng for e in cycle_edges}
    used = {e.id for e in cycle_edges}
    for e in g.edges:
        if e.rng in heads:
            if e.id not in used:
                return True
            if e.mult == OMEGA or (isinstance(e.mult, int) and e.mult >= 2):
                return True
    return False


def brute_condition_L(g: Graph) -> bool:
    return all(cycle_has_entrance(g, c) for c in enumerate_simple_cycles(g))


def brute_first_return_count(g: Graph, v: str, cap: int = 2) -> int:
    """Count first-return walks at v by bounded DFS, saturating at cap.

    Depth is bounded by twice the vertex count: if any longer first-return
    walk exists, at least two shorter ones do, so saturation is reached
    within the bound.  Only use on small graphs.
    """
    bound = 2 * len(g.vertices)

    def step(m) -> int:
        return cap if m == OMEGA else min(m, cap)

    total = 0
    work = [(v, 0, 1)]  # (current vertex, steps taken, choice weight so far)
    while work:
        u, depth, weight = work.pop()
        if depth >= bound:
            continue
        for e in g.out_edges(u):
            w = min(weight * step(e.mult), cap)
            if e.rng == v:
                total += w
                if total >= cap:
                    return cap
            else:
                work.append((e.rng, depth + 1, w))
    return min(total, cap)


def brute_maximal_tails(g: Graph) -> set[frozenset]:
    out = set()
    for M in all_subsets(g.vertices):
        if not M:
            continue
        a = all(v in M for v in g.vertices for w in M if g.geq(v, w))
        b = True
        for v in M:
            deg = g.in_degree(v)
            if isinstance(deg, int) and deg > 0:
                if not any(e.src in M for e in g.in_edges(v)):
                    b = False
                    break
        c = all(
            any(g.geq(v, y) and g.geq(w, y) for y in M) for v in M for w in M
        )
        if a and b and c:
            out.add(M)
    return out


def brute_glb(leq, i: int, j: int):
    n = len(leq)
    lbs = [k for k in range(n) if leq[k][i] and leq[k][j]]
    greatest = [k for k in lbs if all(leq[m][k] for m in lbs)]
    return greatest[0] if len(greatest) == 1 else None


def brute_lub(leq, i: int, j: int):
    n = len(leq)
    ubs = [k for k in range(n) if leq[i][k] and leq[j][k]]
    least = [k for k in ubs if all(leq[k][m] for m in ubs)]
    return least[0] if len(least) == 1 else None


def poset_isomorphic(leq1, leq2) -> bool:
    """Brute-force order-isomorphism search with signature pruning."""
    n = len(leq1)
    if n != len(leq2):
        return False

    def sig(leq, i):
        down = sum(1 for k in range(n) if leq[k][i])
        up = sum(1 for k in range(n) if leq[i][k])
        return (down, up)

    sig1 = [sig(leq1, i) for i in range(n)]
    sig2 = [sig(leq2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False
    assignment = [-1] * n
    used = [False] * n

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or sig1[i] != sig2[j]:
                continue
            ok = True
            for k in range(i):
                if leq1[i][k] != leq2[j][assignment[k]]:
                    ok = False
                    break
                if leq1[k][i] != leq2[assignment[k]][j]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used[j] = True
                if backtrack(i + 1):
                    return True
                used[j] = False
                assignment[i] = -1
        return False

    return backtrack(0)


# -- random graphs ---------------------------------------------------------------


@st.composite
def graphs(draw, max_n: int = 6, omega_ok: bool = True):
    """Hypothesis strategy for small multigraphs."""
    n = draw(st.integers(1, max_n))
    vertices = tuple(f"v{i}" for i in range(n))
    mult_opts = [1, 2, 3] + ([OMEGA] if omega_ok else [])
    m = draw(st.integers(0, 2 * n))
    edges = tuple(
        Edge(
            id=f"e{k}",
            src=vertices[draw(st.integers(0, n - 1))],
            rng=vertices[draw(st.integers(0, n - 1))],
            mult=draw(st.sampled_from(mult_opts)),
        )
        for k in range(m)
    )
    return Graph(vertices, edges)


def random_graph(
    rng: random.Random,
    max_n: int = 8,
    max_edges: int | None = None,
    omega_ok: bool = True,
) -> Graph:
    n = rng.randint(1, max_n)
    vertices = tuple(f"v{i}" for i in range(n))
    m = rng.randint(0, max_edges if max_edges is not None else 2 * n)
    mult_pool: list = [1, 1, 1, 2, 3]
    if omega_ok:
        mult_pool.append(OMEGA)
    edges = tuple(
        Edge(
            id=f"e{k}",
            src=rng.choice(vertices),
            rng=rng.choice(vertices),
            mult=rng.choice(mult_pool),
        )
        for k in range(m)
    )
    return Graph(vertices, edges)


def random_strongly_connected_graph(rng: random.Random, max_n: int = 6) -> Graph:
    n = rng.randint(1, max_n)
    vertices = tuple(f"v{i}" for i in range(n))
    edges = [
        Edge(id=f"c{i}", src=vertices[i], rng=vertices[(i + 1) % n], mult=1)
        for i in range(n)
    ]
    for k in range(rng.randint(0, n)):
        edges.append(
            Edge(
                id=f"x{k}",
                src=rng.choice(vertices),
                rng=rng.choice(vertices),
                mult=rng.choice([1, 2]),
            )
        )
    return Graph(vertices, tuple(edges))


# -- random T0 spaces and actions --------------------------------------------------


def random_t0_space(rng: random.Random, max_n: int = 6) -> FiniteT0Space:
    n = rng.randint(1, max_n)
    points = tuple(f"p{i}" for i in range(n))
    order = list(range(n))
    rng.shuffle(order)
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.3:
                # orient along the shuffled order to keep antisymmetry
                pairs.append((points[order[a]], points[order[b]]))
    return FiniteT0Space.from_pairs(points, pairs)


def order_automorphisms(space: FiniteT0Space):
    pts = space.points
    n = len(pts)
    autos = []
    for perm in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            for j in range(n):
                if (pts[j] in space.above(pts[i])) != (
                    pts[perm[j]] in space.above(pts[perm[i]])
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            autos.append({pts[i]: pts[perm[i]] for i in range(n)})
    return autos


def find_order_iso(space: FiniteT0Space, dom, img, rng: random.Random):
    """Backtrack one order isomorphism dom -> img, or None."""
    dom = list(space.sort_set(dom))
    img_list = list(space.sort_set(img))
    if len(dom) != len(img_list):
        return None
    assignment: dict[str, str] = {}
    used: set[str] = set()
    shuffled_img = img_list[:]
    rng.shuffle(shuffled_img)

    def ok(x, y) -> bool:
        for a, b in assignment.items():
            if (x in space.above(a)) != (y in space.above(b)):
                return False
            if (a in space.above(x)) != (b in space.above(y)):
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(dom):
            return True
        x = dom[i]
        for y in shuffled_img:
            if y in used or not ok(x, y):
                continue
            assignment[x] = y
            used.add(y)
            if backtrack(i + 1):
                return True
            used.discard(y)
            del assignment[x]
        return False

    return dict(assignment) if backtrack(0) else None


def random_partial_homeo(rng: random.Random, space: FiniteT0Space) -> PartialHomeo:
    opens = space.open_sets()
    for _ in range(30):
        mode = rng.random()
        if mode < 0.4:
            autos = order_automorphisms(space)
            auto = rng.choice(autos)
            dom = rng.choice(opens)
            return PartialHomeo(
                space, tuple((x, auto[x]) for x in space.sort_set(dom))
            )
        dom = rng.choice(opens)
        img = rng.choice([S for S in opens if len(S) == len(dom)])
        iso = find_order_iso(space, dom, img, rng)
        if iso is not None:
            return PartialHomeo(space, tuple(iso.items()))
    return PartialHomeo.identity(space)


def random_action(
    rng: random.Random, max_points: int = 6, max_gens: int = 2
) -> FinitePartialAction:
    space = random_t0_space(rng, max_points)
    k = rng.randint(1, max_gens)
    if k == 1 and rng.random() < 0.5:
        group = "Z"
    else:
        group = f"F{k}"
    names = tuple(f"g{i+1}" for i in range(k))
    gens = tuple(random_partial_homeo(rng, space) for _ in range(k))
    return FinitePartialAction(space, group, names, gens)


def random_open_set(rng: random.Random, space: FiniteT0Space) -> frozenset:
    mask = rng.randrange(1 << len(space.points))
    S = frozenset(p for i, p in enumerate(space.points) if mask >> i & 1)
    return space.interior(S)


def random_word(rng: random.Random, a: FinitePartialAction, max_len: int = 3) -> str:
    letters = []
    for _ in range(rng.randint(0, max_len)):
        name = rng.choice(a.generator_names)
        letters.append(name if rng.random() < 0.5 else f"{name}^-1")
    return " ".join(letters)
