"""Chordality recognition and the clique/separator structure built on it.

Recognition runs maximum-cardinality search and verifies the perfect
elimination property; on failure an induced cycle of length >= 4 is
extracted as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .errors import NotChordal
from .graph import Graph


@dataclass(frozen=True)
class EliminationOrdering:
    """A vertex permutation; valid iff every vertex's later neighbors form a clique."""

    order: Tuple[str, ...]


@dataclass(frozen=True)
class MaximalClique:
    vertices: FrozenSet[str]


def mcs_order(g: Graph) -> List[str]:
    """Maximum-cardinality search order; its reverse is a PEO iff g is chordal."""
    weight = {v: 0 for v in g.vertices}
    visited = []
    unvisited = set(g.vertices)
    while unvisited:
        v = max(g.sorted(unvisited), key=lambda u: weight[u])
        # max() keeps the first maximum, so ties go to the canonical order
        visited.append(v)
        unvisited.discard(v)
        for w in g.neighbors(v):
            if w in unvisited:
                weight[w] += 1
    return visited


def _verify_peo(g: Graph, order: List[str]) -> Optional[Tuple[str, str, str]]:
    """Return (v, u, w) with u, w nonadjacent later neighbors of v, or None."""
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = g.sorted(u for u in g.neighbors(v) if pos[u] > pos[v])
        for i, u in enumerate(later):
            for w in later[i + 1 :]:
                if not g.has_edge(u, w):
                    return (v, u, w)
    return None


def _find_hole(g: Graph) -> Optional[List[str]]:
    """Find an induced cycle of length >= 4, or None if chordal.

    Scans induced paths u-v-w and closes them through G - (N[v] \\ {u, w});
    a shortest such connection is chordless, so the closed cycle is induced.
    """
    for v in g.vertices:
        nbrs = g.sorted(g.neighbors(v))
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if g.has_edge(u, w):
                    continue
                forbidden = (set(g.neighbors(v)) | {v}) - {u, w}
                sub = g.induced(set(g.vertices) - forbidden)
                if u not in sub or w not in sub:
                    continue
                path = _shortest_path(sub, u, w)
                if path is not None:
                    return [v] + path
    return None


def _shortest_path(g: Graph, u: str, w: str) -> Optional[List[str]]:
    from collections import deque

    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == w:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in g.sorted(g.neighbors(x)):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def is_chordal(g: Graph):
    """Chordality test with certificate.

    Returns (True, EliminationOrdering) or (False, hole) where hole is an
    induced cycle of length >= 4 as a vertex list.
    """
    order = mcs_order(g)[::-1]
    if _verify_peo(g, order) is None:
        return True, EliminationOrdering(tuple(order))
    hole = _find_hole(g)
    assert hole is not None, "PEO verification failed but no hole found"
    return False, hole


def perfect_elimination_ordering(g: Graph) -> EliminationOrdering:
    ok, cert = is_chordal(g)
    if not ok:
        raise NotChordal(cert)
    return cert


def maximal_cliques(g: Graph, require_chordal: bool = True) -> List[MaximalClique]:
    """All maximal cliques, duplicate-free, in canonical order.

    For chordal graphs this uses the perfect elimination ordering; with
    require_chordal=False a Bron-Kerbosch fallback handles general graphs.
    """
    ok, cert = is_chordal(g)
    if ok:
        order = list(cert.order)
        pos = {v: i for i, v in enumerate(order)}
        candidates = []
        for v in order:
            c = frozenset({v} | {u for u in g.neighbors(v) if pos[u] > pos[v]})
            candidates.append(c)
        cliques = [c for c in candidates if not any(c < d for d in candidates)]
        uniq = sorted(set(cliques), key=lambda c: tuple(g.key(v) for v in g.sorted(c)))
        return [MaximalClique(c) for c in uniq]
    if require_chordal:
        raise NotChordal(cert)
    found = []
    _bron_kerbosch(g, set(), set(g.vertices), set(), found)
    uniq = sorted(set(found), key=lambda c: tuple(g.key(v) for v in g.sorted(c)))
    return [MaximalClique(c) for c in uniq]


def _bron_kerbosch(g: Graph, r, p, x, out):
    if not p and not x:
        out.append(frozenset(r))
        return
    pivot = max(p | x, key=lambda u: len(g.neighbors(u) & p))
    for v in g.sorted(p - g.neighbors(pivot)):
        _bron_kerbosch(g, r | {v}, p & g.neighbors(v), x & g.neighbors(v), out)
        p = p - {v}
        x = x | {v}


def minimal_separators(g: Graph) -> List[FrozenSet[str]]:
    """All minimal u-v separators, i.e. all sets with >= 2 full components.

    Enumerated as neighborhoods of components of G - N[v], expanded to a
    fixpoint, then filtered by the tightness criterion.
    """
    candidates = set()
    queue = []
    for v in g.vertices:
        closed = set(g.neighbors(v)) | {v}
        for comp, _ in g.components_after_deletion(closed & set(g.vertices)):
            nbhd = frozenset().union(*(g.neighbors(u) for u in comp)) - comp
            if nbhd and nbhd not in candidates:
                candidates.add(nbhd)
                queue.append(nbhd)
    while queue:
        s = queue.pop()
        for x in s:
            blocked = set(s) | set(g.neighbors(x))
            for comp, _ in g.components_after_deletion(blocked & set(g.vertices)):
                nbhd = frozenset().union(*(g.neighbors(u) for u in comp)) - comp
                if nbhd and nbhd not in candidates:
                    candidates.add(nbhd)
                    queue.append(nbhd)
    tight = [
        s
        for s in candidates
        if sum(full for _, full in g.components_after_deletion(s)) >= 2
    ]
    return sorted(tight, key=lambda s: (len(s), tuple(g.key(v) for v in g.sorted(s))))


def dirac_check(g: Graph):
    """Every-minimal-separator-is-a-clique test; agrees with is_chordal.

    Returns (flag, witness) where witness is a non-clique minimal
    separator on failure, else None.
    """
    for s in minimal_separators(g):
        if not g.is_clique(s):
            return False, s
    return True, None


def is_r_chordal(g: Graph, r: int):
    """True iff g has no induced cycle of length > r; witness on failure."""
    if r < 3:
        raise ValueError("r must be >= 3")
    witness = _long_induced_cycle(g, r)
    return (witness is None), witness


def _long_induced_cycle(g: Graph, r: int) -> Optional[List[str]]:
    """Search for an induced cycle of length > r by DFS over induced paths.

    The cycle's canonically-least vertex is forced to the path start,
    which prunes rotations; exponential worst case, fine at desk scale.
    """
    if len(g) <= r:
        return None
    for start in g.vertices:
        k0 = g.key(start)

        def extend(path, on_path):
            last = path[-1]
            for nxt in g.sorted(g.neighbors(last)):
                if g.key(nxt) <= k0 or nxt in on_path:
                    continue
                # induced: nxt may not touch the path's interior
                if any(g.has_edge(nxt, p) for p in path[1:-1]):
                    continue
                if len(path) >= 2 and g.has_edge(nxt, start):
                    if len(path) + 1 > r:
                        return path + [nxt]
                    continue  # closing chord to start; nxt unusable here
                path.append(nxt)
                on_path.add(nxt)
                found = extend(path, on_path)
                if found is not None:
                    return found
                path.pop()
                on_path.discard(nxt)
            return None

        res = extend([start], {start})
        if res is not None:
            return res
    return None


def is_r_locally_chordal(g: Graph, r: int):
    """True iff the ball of radius r/2 around every vertex is chordal.

    Witness is the first failing center (canonical order) with its hole.
    """
    if r < 3:
        raise ValueError("r must be >= 3")
    for v in g.vertices:
        b = g.ball(v, r)
        ok, cert = is_chordal(b.subgraph)
        if not ok:
            return False, (v, cert)
    return True, None
