"""Tree-decompositions: validation, induced separations, construction from a
nested separation set, classification, and contraction to maximal cliques.

The tree of a nested proper separation set is built intrinsically: nodes
are equivalence classes of oriented separations, so the output depends
only on the set, not on any processing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    ImproperSeparation,
    NotAClique,
    NotATree,
    NotNested,
    OrbitNotMatching,
    PreconditionViolated,
)
from .graph import Graph
from .separations import CROSSING, Separation, classify, relate


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree with one vertex-set bag per node."""

    tree: Graph
    bags: Dict[str, FrozenSet[str]]

    def bag(self, node: str) -> FrozenSet[str]:
        return self.bags[node]

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": t, "bag": sorted(self.bags[t])} for t in self.tree.vertices
            ],
            "edges": [list(e) for e in self.tree.edges()],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "TreeDecomposition":
        unknown = set(data) - {"nodes", "edges"}
        if unknown:
            raise ValueError(f"unknown fields in tree-decomposition JSON: {sorted(unknown)}")
        bags = {}
        ids = []
        for node in data.get("nodes", []):
            extra = set(node) - {"id", "bag"}
            if extra:
                raise ValueError(f"unknown fields in node JSON: {sorted(extra)}")
            ids.append(node["id"])
            bags[node["id"]] = frozenset(node["bag"])
        edges = [(e[0], e[1]) for e in data.get("edges", [])]
        return TreeDecomposition(tree=Graph(ids, edges), bags=bags)

    def to_dot(self) -> str:
        lines = ["graph treedec {"]
        for t in self.tree.vertices:
            label = "{" + ",".join(sorted(self.bags[t])) + "}"
            lines.append(f'  "{t}" [label="{label}"];')
        for u, v in self.tree.edges():
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class TDClassification:
    regular: bool
    point_finite: bool
    into_cliques: bool
    into_maximal_cliques: bool


def _check_tree(t: Graph) -> None:
    if len(t) == 0:
        raise NotATree("empty tree")
    if not t.is_connected():
        raise NotATree("tree is disconnected")
    if t.edge_count() != len(t) - 1:
        raise NotATree("tree contains a cycle")


def verify_td(g: Graph, td: TreeDecomposition) -> dict:
    """Check coverage (every vertex and edge in some bag) and connectivity
    of every vertex's node set; failures carry witnesses."""
    _check_tree(td.tree)
    if set(td.bags) != set(td.tree.vertices):
        raise NotATree("bags and tree nodes do not match")
    report = {"ok": True, "uncovered_vertices": [], "uncovered_edges": [], "disconnected": []}
    covered = set()
    for b in td.bags.values():
        covered |= b
    for v in g.vertices:
        if v not in covered:
            report["uncovered_vertices"].append(v)
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags.values()):
            report["uncovered_edges"].append((u, v))
    for v in g.vertices:
        nodes = [t for t in td.tree.vertices if v in td.bags[t]]
        if nodes and not td.tree.induced(nodes).is_connected():
            report["disconnected"].append(v)
    report["ok"] = not (
        report["uncovered_vertices"] or report["uncovered_edges"] or report["disconnected"]
    )
    return report


def induced_separation(g: Graph, td: TreeDecomposition, f: Tuple[str, str]) -> Separation:
    """The separation {A1, A2} with Ai = union of bags on side i of tree edge f."""
    t1, t2 = f
    if not td.tree.has_edge(t1, t2):
        raise ValueError(f"{f!r} is not a tree edge")
    side1 = _tree_side(td.tree, t1, t2)
    a1 = frozenset().union(*(td.bags[t] for t in side1))
    a2 = frozenset().union(*(td.bags[t] for t in set(td.tree.vertices) - side1))
    s = Separation(a1, a2)
    assert s.separator == td.bags[t1] & td.bags[t2], "adhesion is not the separator"
    return s


def _tree_side(tree: Graph, t1: str, t2: str) -> Set[str]:
    """Nodes on t1's side of the tree edge t1-t2."""
    seen = {t1, t2}
    stack = [t1]
    side = {t1}
    while stack:
        u = stack.pop()
        for w in tree.neighbors(u):
            if w not in seen:
                seen.add(w)
                side.add(w)
                stack.append(w)
    return side


# -- building the tree from a nested set --------------------------------


def build_td_from_nested(g: Graph, n: Iterable[Separation]) -> TreeDecomposition:
    """Tree-decomposition whose induced separations are exactly n.

    Nodes are equivalence classes of oriented separations: (A,B) and (C,D)
    point at the same node iff (A,B) <= (D,C) with nothing strictly in
    between.  The bag of a node is the intersection of the sides pointing
    at it.  The edge-to-separation bijection is verified before returning.
    """
    if not g.is_connected():
        raise PreconditionViolated("graph must be connected")
    seps = sorted(set(n))
    for i, s in enumerate(seps):
        cl = classify(g, s)
        if not cl.proper:
            raise ImproperSeparation(f"{s} is improper")
        for t in seps[i + 1 :]:
            if relate(s, t) == CROSSING:
                raise NotNested(f"{s} crosses {t}")

    if not seps:
        return TreeDecomposition(
            tree=Graph(["t0"]), bags={"t0": frozenset(g.vertices)}
        )

    oriented: List[Tuple[FrozenSet[str], FrozenSet[str]]] = []
    for s in seps:
        oriented.extend(s.orientations())

    def leq(p, q):
        return p[0] <= q[0] and p[1] >= q[1]

    def rev(p):
        return (p[1], p[0])

    def immediate(p, q):
        """p <= q with no oriented separation strictly between."""
        if not leq(p, q):
            return False
        for r in oriented:
            if r != p and r != q and leq(p, r) and leq(r, q):
                return False
        return True

    # p ~ q  iff  p = q, or p <= rev(q) immediately (and p is not rev(q))
    parent = {p: p for p in oriented}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rp] = rq

    for i, p in enumerate(oriented):
        for q in oriented[i + 1 :]:
            if p != rev(q) and immediate(p, rev(q)):
                union(p, q)

    classes: Dict[Tuple, List[Tuple]] = {}
    for p in oriented:
        classes.setdefault(find(p), []).append(p)

    node_of = {p: find(p) for p in oriented}
    reps = sorted(classes, key=lambda r: (tuple(sorted(r[0])), tuple(sorted(r[1]))))
    names = {rep: f"t{i}" for i, rep in enumerate(reps)}

    bags = {}
    for rep in reps:
        # everything pointing at this node: the down-closure of the class
        members = classes[rep]
        pointing = [p for p in oriented if any(leq(p, q) for q in members)]
        bag = frozenset(g.vertices)
        for p in pointing:
            bag &= p[1]
        bags[names[rep]] = bag

    edges = []
    for s in seps:
        p, q = s.orientations()
        edges.append((names[node_of[q]], names[node_of[p]]))
        # p = (A,B) points at the node on the B-side, i.e. class(p)'s bag
        # lies in B; the edge for s joins class(p) and class(rev(p))

    td = TreeDecomposition(tree=Graph([names[r] for r in reps], edges), bags=bags)
    _check_tree(td.tree)
    assert verify_td(g, td)["ok"], "constructed decomposition failed validation"
    induced = {induced_separation(g, td, e) for e in td.tree.edges()}
    assert induced == set(seps), "edge-separation bijection failed"
    return td


# -- classification and queries -----------------------------------------


def classify_td(g: Graph, td: TreeDecomposition) -> TDClassification:
    from .chordal import maximal_cliques

    regular = all(
        classify(g, induced_separation(g, td, e)).proper for e in td.tree.edges()
    )
    point_finite = True  # every vertex lies in finitely many bags of a finite tree
    into_cliques = all(g.is_clique(b) for b in td.bags.values())
    into_max = False
    if into_cliques:
        bag_list = list(td.bags.values())
        cliques = {c.vertices for c in maximal_cliques(g, require_chordal=False)}
        into_max = len(bag_list) == len(set(bag_list)) and set(bag_list) == cliques
    return TDClassification(
        regular=regular,
        point_finite=point_finite,
        into_cliques=into_cliques,
        into_maximal_cliques=into_max,
    )


def clique_in_bag(g: Graph, td: TreeDecomposition, k: Iterable[str]) -> str:
    """Some node whose bag contains the clique k; guaranteed to exist."""
    kf = frozenset(k)
    if not g.is_clique(kf):
        raise NotAClique(f"{sorted(kf)} is not a clique")
    for t in td.tree.vertices:
        if kf <= td.bags[t]:
            return t
    raise AssertionError("no bag contains the clique; decomposition invalid")


# -- contraction to maximal cliques -------------------------------------


def contract_to_maximal(
    g: Graph,
    td: TreeDecomposition,
    orbits: Optional[Sequence[Sequence[Tuple[str, str]]]] = None,
    orbit_order: str = "canonical",
) -> TreeDecomposition:
    """Contract edge orbits with comparable bags until none remain.

    Orbits partition the tree edges (default: singletons, the trivial
    group).  An orbit is contracted only if its edges form a matching;
    bags merge by union.  The result has no bag contained in a
    neighboring bag, hence is into maximal cliques when td was into
    cliques and regular.
    """
    _check_tree(td.tree)
    if orbits is None:
        orbits = [[e] for e in td.tree.edges()]
    seen_edges = set()
    for orbit in orbits:
        for u, v in orbit:
            if not td.tree.has_edge(u, v):
                raise ValueError(f"({u!r}, {v!r}) is not a tree edge")
            seen_edges.add(frozenset((u, v)))
    if len(seen_edges) != td.tree.edge_count():
        raise ValueError("orbits must partition the tree edges")

    if orbit_order == "canonical":
        orbits = sorted(
            (sorted(tuple(sorted(e)) for e in orbit) for orbit in orbits),
        )
    elif orbit_order != "input":
        raise ValueError("orbit_order must be 'canonical' or 'input'")

    parent = {t: t for t in td.tree.vertices}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    bags = dict(td.bags)

    changed = True
    while changed:
        changed = False
        for orbit in orbits:
            live = [
                (find(u), find(v)) for u, v in orbit if find(u) != find(v)
            ]
            if not live:
                continue
            ru, rv = live[0]
            if not (bags[ru] <= bags[rv] or bags[rv] <= bags[ru]):
                continue
            endpoints = [t for e in live for t in e]
            if len(endpoints) != len(set(endpoints)):
                raise OrbitNotMatching(
                    "orbit edges share a node; the action is not free on cliques"
                )
            for a, b in live:
                merged = bags[a] | bags[b]
                parent[a] = b
                bags[b] = merged
                changed = True

    roots = sorted({find(t) for t in td.tree.vertices}, key=td.tree.key)
    new_edges = set()
    for u, v in td.tree.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            new_edges.add((ru, rv) if td.tree.key(ru) < td.tree.key(rv) else (rv, ru))
    out = TreeDecomposition(
        tree=Graph(roots, sorted(new_edges)), bags={t: bags[t] for t in roots}
    )
    _check_tree(out.tree)
    for u, v in out.tree.edges():
        assert not (out.bags[u] <= out.bags[v] or out.bags[v] <= out.bags[u]), (
            "containment between neighboring bags survived contraction"
        )
    return out


def disjoint_union_bags_lemma_check(g: Graph, td: TreeDecomposition) -> bool:
    """For connected g with every part a disjoint union of complete graphs:
    is every bag in fact a single clique?"""
    if not g.is_connected():
        raise PreconditionViolated("graph must be connected")
    for b in td.bags.values():
        sub = g.induced(b)
        for comp in sub.components():
            if not g.is_clique(comp):
                raise PreconditionViolated(
                    f"bag {sorted(b)} is not a disjoint union of complete graphs"
                )
    return all(g.is_clique(b) and g.induced(b).is_connected() for b in td.bags.values())
