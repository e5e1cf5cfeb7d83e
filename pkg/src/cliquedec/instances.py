"""Ready-made graphs and voltage presentations for pipelines and tests."""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .chordal import maximal_cliques
from .covers import VoltagePresentation, parse_word
from .graph import Graph


def star(t: int) -> Graph:
    """K_{1,t} with center 'c' and leaves '1'..'t'."""
    return Graph(["c"] + [str(i) for i in range(1, t + 1)],
                 [("c", str(i)) for i in range(1, t + 1)])


def path(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, list(zip(vs, vs[1:])))


def cycle(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, [(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :]])


def two_triangles() -> Graph:
    """Two triangles abc and bcd glued along the edge bc."""
    return Graph("abcd", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])


def wheel() -> Graph:
    """4-cycle r0..r3 plus a hub adjacent to the whole rim."""
    rim = [f"r{i}" for i in range(4)]
    edges = list(zip(rim, rim[1:])) + [(rim[-1], rim[0])]
    edges += [("h", r) for r in rim]
    return Graph(rim + ["h"], edges)


def ktree(n: int, k: int, seed: int = 0) -> Graph:
    """Random k-tree on n >= k+1 vertices."""
    if n < k + 1:
        raise ValueError("need n >= k + 1")
    rng = random.Random(seed)
    vs = [f"v{i}" for i in range(n)]
    edges = [(vs[i], vs[j]) for i in range(k + 1) for j in range(i + 1, k + 1)]
    cliques = [vs[: k + 1]]
    for i in range(k + 1, n):
        base = rng.choice(cliques)
        drop = rng.randrange(len(base))
        face = [u for j, u in enumerate(base) if j != drop]
        edges.extend((u, vs[i]) for u in face)
        cliques.append(face + [vs[i]])
    return Graph(vs, edges)


def random_chordal(n: int, seed: int = 0) -> Graph:
    """Random connected chordal graph grown by simplicial vertex insertion."""
    rng = random.Random(seed)
    g = Graph(["v0"])
    for i in range(1, n):
        cliques = maximal_cliques(g)
        base = list(rng.choice(cliques).vertices)
        size = rng.randint(1, len(base))
        attach = rng.sample(sorted(base), size)
        g = Graph(
            list(g.vertices) + [f"v{i}"],
            g.edges() + [(u, f"v{i}") for u in attach],
        )
    return g


# -- voltage presets ----------------------------------------------------


def cycle_z_presentation(n: int) -> VoltagePresentation:
    """C_n with voltage z on the closing edge; the derived cover is the
    double ray."""
    base = cycle(n)
    tree = frozenset(
        frozenset((f"v{i}", f"v{i+1}")) for i in range(n - 1)
    )
    return VoltagePresentation(
        base=base,
        tree_edges=tree,
        voltages={(f"v{n-1}", "v0"): parse_word("z")},
    )


def identity_presentation(g: Graph) -> VoltagePresentation:
    """The trivial cover: a BFS spanning tree, identity on every co-tree edge."""
    root = g.vertices[0]
    seen = {root}
    tree = set()
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in g.sorted(g.neighbors(u)):
            if w not in seen:
                seen.add(w)
                tree.add(frozenset((u, w)))
                queue.append(w)
    return VoltagePresentation(base=g, tree_edges=frozenset(tree), voltages={})


def make_instance(kind: str, params: Optional[dict] = None) -> Graph:
    """Instance factory used by the CLI's `gen` subcommand."""
    p = params or {}
    if kind == "star":
        return star(int(p.get("t", 3)))
    if kind == "path":
        return path(int(p.get("n", 5)))
    if kind == "cycle":
        return cycle(int(p.get("n", 6)))
    if kind == "complete":
        return complete(int(p.get("n", 4)))
    if kind == "ktree":
        return ktree(int(p.get("n", 8)), int(p.get("k", 2)), int(p.get("seed", 0)))
    if kind == "random_chordal":
        return random_chordal(int(p.get("n", 12)), int(p.get("seed", 0)))
    if kind == "two_triangles":
        return two_triangles()
    if kind == "wheel":
        return wheel()
    raise ValueError(f"unknown instance kind {kind!r}")
