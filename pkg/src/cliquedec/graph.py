"""Finite simple undirected graphs with a canonical vertex order.

Vertices are opaque strings.  The canonical order is insertion order of
first appearance; every set-valued result is emitted sorted by it, so all
outputs are deterministic.  Graphs are immutable after construction and
all operations are pure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import LoopEdge, UnknownVertex

INFINITY = float("inf")


class Graph:
    """Finite simple graph: no loops, no parallel edges."""

    __slots__ = ("_vertices", "_index", "_adj", "_component_cache")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Tuple[str, str]] = ()):
        vs: List[str] = []
        index: Dict[str, int] = {}
        for v in vertices:
            if not isinstance(v, str):
                raise TypeError(f"vertex identifiers must be strings, got {v!r}")
            if v not in index:
                index[v] = len(vs)
                vs.append(v)
        adj: Dict[str, set] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise LoopEdge(f"loop at {u!r}")
            for w in (u, v):
                if w not in index:
                    index[w] = len(vs)
                    vs.append(w)
                    adj[w] = set()
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(vs)
        self._index = index
        self._adj = {v: frozenset(nbrs) for v, nbrs in adj.items()}
        self._component_cache: Dict[FrozenSet[str], list] = {}

    # -- basics ---------------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def key(self, v: str) -> int:
        """Canonical sort key of a vertex."""
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def sorted(self, vs: Iterable[str]) -> List[str]:
        """Sort vertices into the canonical order."""
        return sorted(vs, key=self.key)

    def neighbors(self, v: str) -> FrozenSet[str]:
        if v not in self._index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, frozenset())

    def edges(self) -> List[Tuple[str, str]]:
        """All edges, canonically ordered pairs in canonical order."""
        out = []
        for u in self._vertices:
            ku = self._index[u]
            for v in self._adj[u]:
                if self._index[v] > ku:
                    out.append((u, v))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj.values()) // 2

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self._vertices == other._vertices
            and self._adj == other._adj
        )

    def __hash__(self):
        return hash((self._vertices, frozenset(self._adj.items())))

    def __repr__(self):
        return f"Graph({len(self)} vertices, {self.edge_count()} edges)"

    # -- derived graphs -------------------------------------------------

    def induced(self, vs: Iterable[str]) -> "Graph":
        """Induced subgraph, keeping the host's canonical order."""
        keep = set(vs)
        for v in keep:
            if v not in self._index:
                raise UnknownVertex(f"unknown vertex {v!r}")
        order = [v for v in self._vertices if v in keep]
        edges = [
            (u, v)
            for u in order
            for v in self._adj[u]
            if v in keep and self._index[u] < self._index[v]
        ]
        return Graph(order, edges)

    def is_clique(self, vs: Iterable[str]) -> bool:
        vl = list(vs)
        return all(self.has_edge(u, v) for i, u in enumerate(vl) for v in vl[i + 1 :])

    # -- metric and components ------------------------------------------

    def distances_from(self, v: str) -> Dict[str, int]:
        """BFS distances from v to every vertex in its component."""
        if v not in self._index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        dist = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance(self, u: str, v: str):
        """Graph distance; INFINITY across components."""
        if v not in self._index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return self.distances_from(u).get(v, INFINITY)

    def components(self) -> List[FrozenSet[str]]:
        return [c for c, _ in self.components_after_deletion(frozenset())]

    def is_connected(self) -> bool:
        return len(self) <= 1 or len(self.components()) == 1

    def components_after_deletion(
        self, deleted: Iterable[str]
    ) -> List[Tuple[FrozenSet[str], bool]]:
        """Components of G-X with a flag for N_G(C) = X (full components).

        The neighborhood N_G(C) is computed in the original graph.
        """
        x = frozenset(deleted)
        cached = self._component_cache.get(x)
        if cached is not None:
            return cached
        for v in x:
            if v not in self._index:
                raise UnknownVertex(f"unknown vertex {v!r}")
        seen = set(x)
        out = []
        for start in self._vertices:
            if start in seen:
                continue
            comp = set()
            queue = deque([start])
            seen.add(start)
            while queue:
                u = queue.popleft()
                comp.add(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            nbhd = set()
            for u in comp:
                nbhd |= self._adj[u]
            nbhd -= comp
            out.append((frozenset(comp), nbhd == x))
        self._component_cache[x] = out
        return out

    def ball(self, v: str, radius2: int) -> "Ball":
        """Ball of radius radius2/2 around v.

        Both parities yield the induced subgraph on the vertices at
        distance at most radius2 // 2 from v; the half-integer convention
        (vertices at distance <= k plus all host edges among them for
        radius (2k+1)/2) coincides with the induced subgraph.
        """
        if radius2 < 0:
            raise ValueError("radius2 must be nonnegative")
        k = radius2 // 2
        dist = self.distances_from(v)
        vs = [u for u in self._vertices if dist.get(u, INFINITY) <= k]
        return Ball(center=v, radius2=radius2, subgraph=self.induced(vs))

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in self.edges()]}

    @staticmethod
    def from_json_dict(data: dict) -> "Graph":
        if not isinstance(data, dict):
            raise ValueError("graph JSON must be an object")
        unknown = set(data) - {"vertices", "edges"}
        if unknown:
            raise ValueError(f"unknown fields in graph JSON: {sorted(unknown)}")
        vertices = data.get("vertices", [])
        edges = data.get("edges", [])
        if not all(isinstance(v, str) for v in vertices):
            raise ValueError("vertices must be strings")
        pairs = []
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2):
                raise ValueError(f"malformed edge {e!r}")
            pairs.append((e[0], e[1]))
        return Graph(vertices, pairs)


@dataclass(frozen=True)
class Ball:
    """Ball around a vertex; radius2 stores twice the radius exactly."""

    center: str
    radius2: int
    subgraph: Graph


def from_edge_list(pairs: Sequence[Tuple[str, str]], isolated: Sequence[str] = ()) -> Graph:
    """Build a graph from an edge list, deduplicating parallel edges.

    Vertex set is the union of endpoints plus explicitly declared isolated
    vertices; a pair with equal endpoints raises LoopEdge.
    """
    vertices: List[str] = []
    seen = set()
    for u, v in pairs:
        if u == v:
            raise LoopEdge(f"loop at {u!r}")
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
    for w in isolated:
        if w not in seen:
            seen.add(w)
            vertices.append(w)
    return Graph(vertices, pairs)
