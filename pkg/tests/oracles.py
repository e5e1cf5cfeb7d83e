"""Independent brute-force and networkx-based oracles for the test suite.

Nothing in here may import algorithmic internals beyond the Graph type;
values produced by these functions are compared against the package's
own algorithms.
"""

from __future__ import annotations

import itertools
from typing import FrozenSet, List, Sequence, Set, Tuple

import networkx as nx

from cliquedec.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def nx_is_chordal(g: Graph) -> bool:
    return nx.is_chordal(to_nx(g))


def nx_maximal_cliques(g: Graph) -> Set[FrozenSet[str]]:
    return {frozenset(c) for c in nx.find_cliques(to_nx(g))}


def nx_chordal_cliques(g: Graph) -> Set[FrozenSet[str]]:
    """Maximal cliques via networkx's elimination-based chordal routine."""
    return {frozenset(c) for c in nx.chordal_graph_cliques(to_nx(g))}


def separates(g: Graph, s: FrozenSet[str], x: FrozenSet[str], y: FrozenSet[str]) -> bool:
    """Does s meet every X-Y path?  (Full Menger convention: a vertex of
    x & y is itself a path, so it must lie in s.)"""
    if not (x & y) <= s:
        return False
    comps = [c for c, _ in g.components_after_deletion(s)]
    for c in comps:
        if c & (x - s) and c & (y - s):
            return False
    return True


def brute_min_separators(
    g: Graph, x: Sequence[str], y: Sequence[str]
) -> Tuple[int, List[FrozenSet[str]]]:
    """Minimum X-Y separator size and all separators of that size, by
    exhaustive subset enumeration in increasing size."""
    xf, yf = frozenset(x), frozenset(y)
    vs = list(g.vertices)
    for k in range(len(vs) + 1):
        found = [
            frozenset(s)
            for s in itertools.combinations(vs, k)
            if separates(g, frozenset(s), xf, yf)
        ]
        if found:
            return k, found
    raise AssertionError("the whole vertex set always separates")


def brute_minimal_separators(g: Graph) -> Set[FrozenSet[str]]:
    """All minimal u-v separators by exhaustive subset enumeration.

    S is a minimal separator iff it separates some nonadjacent pair u,v
    and no proper subset of S separates that same pair.
    """
    vs = list(g.vertices)
    out = set()
    pairs = [
        (u, v)
        for i, u in enumerate(vs)
        for v in vs[i + 1 :]
        if not g.has_edge(u, v)
    ]
    for size in range(1, len(vs) - 1):
        for s in itertools.combinations(vs, size):
            sf = frozenset(s)
            for u, v in pairs:
                if u in sf or v in sf:
                    continue
                if not _pair_separated(g, sf, u, v):
                    continue
                if any(
                    _pair_separated(g, sf - {w}, u, v) for w in sf
                ):
                    continue
                out.add(sf)
                break
    return out


def _pair_separated(g: Graph, s: FrozenSet[str], u: str, v: str) -> bool:
    for c, _ in g.components_after_deletion(s):
        if u in c and v in c:
            return False
    return True


def random_graph(n: int, p: float, rng) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    edges = [
        (u, v)
        for i, u in enumerate(vs)
        for v in vs[i + 1 :]
        if rng.random() < p
    ]
    return Graph(vs, edges)


def random_clique(g: Graph, rng) -> List[str]:
    """Grow a random maximal clique greedily from a random start vertex."""
    v = rng.choice(list(g.vertices))
    clique = [v]
    candidates = set(g.neighbors(v))
    while candidates:
        w = rng.choice(sorted(candidates))
        clique.append(w)
        candidates &= g.neighbors(w)
    return clique


def connected_graphs_up_to_iso(max_n: int) -> List[Graph]:
    """All connected graphs on 1..max_n vertices, one per isomorphism class.

    Built by augmentation: every connected n-vertex graph arises from a
    connected (n-1)-vertex graph by adding a vertex joined to a nonempty
    subset (delete a non-cutvertex to descend).  Deduplication groups by
    cheap invariants and settles ties with networkx isomorphism.
    """
    levels: List[List[nx.Graph]] = [[nx.Graph([("v0", "v0")])]]
    levels[0][0].remove_edges_from(list(levels[0][0].edges))
    out = [Graph(["v0"])]
    for n in range(2, max_n + 1):
        buckets = {}
        reps = []
        new_vertex = f"v{n-1}"
        for base in levels[-1]:
            others = list(base.nodes)
            for k in range(1, len(others) + 1):
                for attach in itertools.combinations(others, k):
                    h = base.copy()
                    h.add_node(new_vertex)
                    h.add_edges_from((new_vertex, u) for u in attach)
                    key = _invariant(h)
                    bucket = buckets.setdefault(key, [])
                    if not any(nx.is_isomorphic(h, other) for other in bucket):
                        bucket.append(h)
                        reps.append(h)
        levels.append(reps)
        for h in reps:
            out.append(Graph(sorted(h.nodes), sorted(tuple(sorted(e)) for e in h.edges)))
    return out


def _invariant(h: nx.Graph):
    degs = tuple(sorted(d for _, d in h.degree()))
    tri = tuple(sorted(nx.triangles(h).values()))
    return (h.number_of_nodes(), h.number_of_edges(), degs, tri)
