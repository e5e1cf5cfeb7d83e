"""Periodic covers presented by voltage graphs over free groups.

A voltage presentation assigns free-group words to the co-tree edges of a
finite base graph; the derived cover is explored through finite windows
of bounded word length.  On chordal windows the canonical nested set is
computed orbit-wise and folded into a graph-decomposition of the base.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .chordal import is_chordal, maximal_cliques
from .errors import (
    ActionMismatch,
    BallNotPreserved,
    BudgetExceeded,
    LiftCrossesBoundary,
    NotAClique,
    PreconditionViolated,
    Unstable,
    WindowNotChordal,
)
from .graph import Graph
from .nested import construct_N
from .separations import Separation
from .treedec import TreeDecomposition, build_td_from_nested, classify_td

# -- free-group words ---------------------------------------------------

Word = Tuple[Tuple[str, int], ...]

IDENTITY: Word = ()


def word_mul(a: Word, b: Word) -> Word:
    """Concatenate and freely reduce."""
    out = list(a)
    for letter in b:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_inv(a: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(a))


def word_len(a: Word) -> int:
    return len(a)


def parse_word(s: str) -> Word:
    """Parse 'z1 z2^-1' style words; '1' or '' is the identity."""
    s = s.strip()
    if s in ("", "1"):
        return IDENTITY
    letters: List[Tuple[str, int]] = []
    for token in s.split():
        if "^" in token:
            name, exp = token.split("^", 1)
            e = int(exp)
        else:
            name, e = token, 1
        if not name or e == 0:
            raise ValueError(f"malformed word letter {token!r}")
        sign = 1 if e > 0 else -1
        letters.extend([(name, sign)] * abs(e))
    return word_mul(IDENTITY, tuple(letters))


def word_str(a: Word) -> str:
    if not a:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in a)


# -- presentations ------------------------------------------------------


@dataclass(frozen=True)
class VoltagePresentation:
    """Base graph with free-group voltages on its co-tree edges."""

    base: Graph
    tree_edges: FrozenSet[FrozenSet[str]]
    voltages: Dict[Tuple[str, str], Word] = field(default_factory=dict)

    def __post_init__(self):
        b = self.base
        tree = Graph(b.vertices, [tuple(sorted(e, key=b.key)) for e in self.tree_edges])
        if not tree.is_connected() or tree.edge_count() != len(b) - 1:
            raise PreconditionViolated("tree_edges must form a spanning tree")
        for e in self.tree_edges:
            u, v = tuple(e)
            if not b.has_edge(u, v):
                raise PreconditionViolated(f"tree edge {sorted(e)} is not a base edge")
        full = dict(self.voltages)
        for (u, v), w in list(full.items()):
            if not b.has_edge(u, v):
                raise PreconditionViolated(f"voltage on non-edge ({u!r}, {v!r})")
            rev = full.get((v, u))
            if rev is None:
                full[(v, u)] = word_inv(w)
            elif rev != word_inv(w):
                raise PreconditionViolated(f"voltage on ({v!r}, {u!r}) is not the inverse")
        for u, v in b.edges():
            if frozenset((u, v)) in self.tree_edges:
                if full.get((u, v), IDENTITY) != IDENTITY:
                    raise PreconditionViolated("tree edges must carry the identity")
                full[(u, v)] = IDENTITY
                full[(v, u)] = IDENTITY
            else:
                full.setdefault((u, v), IDENTITY)
                full.setdefault((v, u), IDENTITY)
        object.__setattr__(self, "voltages", full)

    def generators(self) -> List[str]:
        return sorted({g for w in self.voltages.values() for g, _ in w})

    def max_voltage_length(self) -> int:
        return max((len(w) for w in self.voltages.values()), default=0)

    def to_json_dict(self) -> dict:
        b = self.base
        cotree = []
        for u, v in b.edges():
            if frozenset((u, v)) not in self.tree_edges:
                cotree.append({"edge": [u, v], "word": word_str(self.voltages[(u, v)])})
        return {
            "base": b.to_json_dict(),
            "tree_edges": [sorted(e, key=b.key) for e in self.tree_edges],
            "voltages": cotree,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "VoltagePresentation":
        unknown = set(data) - {"base", "tree_edges", "voltages"}
        if unknown:
            raise ValueError(f"unknown fields in voltage JSON: {sorted(unknown)}")
        base = Graph.from_json_dict(data["base"])
        tree_edges = frozenset(frozenset(e) for e in data.get("tree_edges", []))
        voltages = {}
        for item in data.get("voltages", []):
            extra = set(item) - {"edge", "word"}
            if extra:
                raise ValueError(f"unknown fields in voltage entry: {sorted(extra)}")
            u, v = item["edge"]
            voltages[(u, v)] = parse_word(item["word"])
        return VoltagePresentation(base=base, tree_edges=tree_edges, voltages=voltages)


# -- derived windows ----------------------------------------------------


def _vertex_id(v: str, w: Word) -> str:
    return f"{v}@{word_str(w)}"


@dataclass(frozen=True)
class CoverWindow:
    """Induced subgraph of the derived cover on word length <= radius."""

    presentation: VoltagePresentation
    radius: int
    window: Graph
    boundary: FrozenSet[str]
    base_of: Dict[str, str]
    word_of: Dict[str, Word]

    def safe(self, x: str, depth: int) -> bool:
        """Is x at least `depth` voltage-steps away from the word-length cap?"""
        step = max(1, self.presentation.max_voltage_length())
        return len(self.word_of[x]) <= self.radius - depth * step

    def translate(self, gamma: Word, x: str) -> Optional[str]:
        """Deck action: left multiplication on the word coordinate."""
        w = word_mul(gamma, self.word_of[x])
        if len(w) > self.radius:
            return None
        return _vertex_id(self.base_of[x], w)


def _all_words(generators: Sequence[str], max_len: int) -> List[Word]:
    words = [IDENTITY]
    frontier = [IDENTITY]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in generators:
                for e in (1, -1):
                    w2 = word_mul(w, ((g, e),))
                    if len(w2) == len(w) + 1:
                        nxt.append(w2)
        words.extend(nxt)
        frontier = nxt
    return words


def derive_window(pres: VoltagePresentation, L: int) -> CoverWindow:
    """Materialize the derived cover on group words of length <= L.

    Vertices are (base vertex, word); the edge over a base edge uv with
    voltage a joins (u, w) and (v, w*a); the deck group acts by left
    multiplication, the covering map is the first projection.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    gens = pres.generators()
    words = _all_words(gens, L)
    base_of, word_of = {}, {}
    ids = []
    for w in words:
        for v in pres.base.vertices:
            x = _vertex_id(v, w)
            ids.append(x)
            base_of[x] = v
            word_of[x] = w
    edges = []
    for u, v in pres.base.edges():
        a = pres.voltages[(u, v)]
        for w in words:
            w2 = word_mul(w, a)
            if len(w2) <= L:
                edges.append((_vertex_id(u, w), _vertex_id(v, w2)))
    window = Graph(ids, edges)
    boundary = frozenset(x for x in ids if len(word_of[x]) == L)
    return CoverWindow(
        presentation=pres,
        radius=L,
        window=window,
        boundary=boundary,
        base_of=base_of,
        word_of=word_of,
    )


# -- cover verification -------------------------------------------------


def verify_cover(pres: VoltagePresentation, r: int, L: int) -> dict:
    """Check the covering, ball-preservation, free-clique-action and fiber
    properties on the window interior.

    Raises BallNotPreserved with the failing center when the projection
    does not restrict to an isomorphism on some r/2-ball; other checks
    report their results.
    """
    if L < r + 2:
        raise PreconditionViolated("L must be at least r + 2")
    win = derive_window(pres, L)
    g = pres.base
    report = {
        "covering": True,
        "ball_preserving": True,
        "free_on_cliques": True,
        "fiber_distances": True,
        "checked_centers": 0,
        "window": win,
    }

    # (a) local bijection on incident edges
    for x in win.window.vertices:
        if not win.safe(x, 1):
            continue
        images = [win.base_of[y] for y in win.window.neighbors(x)]
        if sorted(images) != sorted(g.neighbors(win.base_of[x])):
            report["covering"] = False
            report.setdefault("covering_witness", x)

    # (b) r/2-ball preservation
    k = r // 2
    for x in win.window.vertices:
        if not win.safe(x, k):
            continue
        report["checked_centers"] += 1
        up = win.window.ball(x, r).subgraph
        down = g.ball(win.base_of[x], r).subgraph
        images = [win.base_of[y] for y in up.vertices]
        iso = (
            len(set(images)) == len(up)
            and set(images) == set(down.vertices)
            and all(
                up.has_edge(y, z) == down.has_edge(win.base_of[y], win.base_of[z])
                for y, z in itertools.combinations(up.vertices, 2)
            )
        )
        if not iso:
            raise BallNotPreserved(x)

    # (c) free action on cliques: K and gamma K are disjoint
    gens = pres.generators()
    step = max(1, pres.max_voltage_length())
    gammas = [w for w in _all_words(gens, 2) if w != IDENTITY]
    ok, _ = is_chordal(win.window)
    cliques = (
        [c.vertices for c in maximal_cliques(win.window, require_chordal=False)]
        if len(win.window) <= 400
        else []
    )
    for kq in cliques:
        if not all(win.safe(x, 2) for x in kq):
            continue
        for gamma in gammas:
            image = {win.translate(gamma, x) for x in kq}
            if None in image:
                continue
            if image & set(kq):
                report["free_on_cliques"] = False
                report.setdefault("free_witness", (sorted(kq), word_str(gamma)))

    # (d) fibers pairwise at distance > 2
    fibers: Dict[str, List[str]] = {}
    for x in win.window.vertices:
        fibers.setdefault(win.base_of[x], []).append(x)
    for v, fib in fibers.items():
        for x, y in itertools.combinations(fib, 2):
            if not (win.safe(x, 1) and win.safe(y, 1)):
                continue
            if win.window.has_edge(x, y) or (
                win.window.neighbors(x) & win.window.neighbors(y)
            ):
                report["fiber_distances"] = False
                report.setdefault("fiber_witness", (x, y))
    report["ok"] = all(
        report[key]
        for key in ("covering", "ball_preserving", "free_on_cliques", "fiber_distances")
    )
    return report


# -- clique lifting and projection --------------------------------------


def lift_project_clique(
    pres: VoltagePresentation,
    window: CoverWindow,
    k: Iterable[str],
    direction: str,
):
    """Project a window clique to the base, or enumerate all its window lifts.

    Projection returns the image clique and asserts bijectivity; lifting
    returns every full lift inside the window (pairwise disjoint), raising
    LiftCrossesBoundary when a partial lift leaves the window.
    """
    kf = list(dict.fromkeys(k))
    if direction == "project":
        if not window.window.is_clique(kf):
            raise NotAClique(f"{sorted(kf)} is not a window clique")
        image = [window.base_of[x] for x in kf]
        assert len(set(image)) == len(kf), "projection not injective on a clique"
        assert pres.base.is_clique(image), "projection of a clique is not a clique"
        return frozenset(image)
    if direction != "lift":
        raise ValueError("direction must be 'lift' or 'project'")
    if not pres.base.is_clique(kf):
        raise NotAClique(f"{sorted(kf)} is not a base clique")
    v0 = kf[0]
    lifts = []
    for x0 in window.window.vertices:
        if window.base_of[x0] != v0:
            continue
        lift = {v0: x0}
        blocked = False
        for u in kf[1:]:
            cands = [
                y for y in window.window.neighbors(x0) if window.base_of[y] == u
            ]
            if len(cands) != 1:
                if not window.safe(x0, 1):
                    blocked = True
                    break
                raise LiftCrossesBoundary(f"no unique lift of {u!r} adjacent to {x0!r}")
            lift[u] = cands[0]
        if blocked:
            continue
        members = frozenset(lift.values())
        if window.window.is_clique(members):
            lifts.append(members)
        elif all(window.safe(x, 1) for x in members):
            raise NotAClique(f"lift {sorted(members)} is not a clique in the window")
    for a, b in itertools.combinations(lifts, 2):
        assert not (a & b), "distinct lifts of a clique intersect"
    return lifts


# -- orbit-wise nested sets on periodic covers --------------------------


def _normalize_vertex_set(win: CoverWindow, vs: Iterable[str]):
    """Canonical form of a vertex set up to the deck action.

    Each member's word inverse is tried as a left translation; the
    lexicographically least translated picture is the orbit key.
    """
    members = list(vs)
    best = None
    for m in members:
        t = word_inv(win.word_of[m])
        pic = tuple(
            sorted((win.base_of[x], word_mul(t, win.word_of[x])) for x in members)
        )
        if best is None or pic < best:
            best = pic
    return best


def _separation_signature(win: CoverWindow, s: Separation):
    """Deck-orbit key of a separation from its separator's local picture."""
    sep = sorted(s.separator)
    nbrs = set()
    for x in sep:
        nbrs |= win.window.neighbors(x)
    nbrs -= set(sep)
    side_a = frozenset(nbrs & (s.sideA - s.sideB))
    side_b = frozenset(nbrs & (s.sideB - s.sideA))
    best = None
    for m in sep:
        t = word_inv(win.word_of[m])

        def pic(xs):
            return tuple(sorted((win.base_of[x], word_mul(t, win.word_of[x])) for x in xs))

        sides = tuple(sorted((pic(side_a), pic(side_b))))
        cand = (pic(sep), sides)
        if best is None or cand < best:
            best = cand
    return best


def _window_nested_set(pres: VoltagePresentation, L: int):
    win = derive_window(pres, L)
    ok, cert = is_chordal(win.window)
    if not ok:
        raise WindowNotChordal(f"window at L={L} has a hole: {cert}")
    n = construct_N(win.window)
    return win, n


def periodic_N(pres: VoltagePresentation, L: int):
    """Orbit representatives of the canonical nested set of the cover.

    The construction runs on the window; separations whose separator is
    too close to the boundary are discarded, the rest are grouped into
    deck orbits by a translation-normalized local signature.  Stability
    is the agreement of the signature sets at L and L + 2.
    """
    if len(pres.generators()) > 2:
        raise PreconditionViolated("deck groups of rank > 2 are not supported")
    win, n = _window_nested_set(pres, L)

    def interior_signatures(w: CoverWindow, nested):
        sigs = {}
        for s in sorted(nested.union):
            if all(w.safe(x, 2) for x in s.separator):
                sig = _separation_signature(w, s)
                if sig not in sigs:
                    sigs[sig] = s
        return sigs

    sigs = interior_signatures(win, n)
    if pres.generators():
        win2, n2 = _window_nested_set(pres, L + 2)
        sigs2 = interior_signatures(win2, n2)
        stable = set(sigs) == set(sigs2)
    else:
        stable = True
    reps = [sigs[k] for k in sorted(sigs)]
    return reps, stable


# -- graph-decompositions and folding -----------------------------------


@dataclass(frozen=True)
class GraphDecomposition:
    """Bags arranged along a model graph, with one co-part per vertex."""

    model: Graph
    bags: Dict[str, FrozenSet[str]]
    coparts: Dict[str, Graph]

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": h, "bag": sorted(self.bags[h])} for h in self.model.vertices
            ],
            "edges": [list(e) for e in self.model.edges()],
            "coparts": {
                v: {"nodes": list(sub.vertices), "edges": [list(e) for e in sub.edges()]}
                for v, sub in self.coparts.items()
            },
        }

    def to_dot(self) -> str:
        lines = ["graph graphdec {"]
        for h in self.model.vertices:
            label = "{" + ",".join(sorted(self.bags[h])) + "}"
            lines.append(f'  "{h}" [label="{label}"];')
        for u, v in self.model.edges():
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines)

    def to_graphml(self) -> str:
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
            '  <key id="bag" for="node" attr.name="bag" attr.type="string"/>',
            '  <graph edgedefault="undirected">',
        ]
        for h in self.model.vertices:
            lines.append(f'    <node id="{h}">')
            lines.append(f'      <data key="bag">{",".join(sorted(self.bags[h]))}</data>')
            lines.append("    </node>")
        for u, v in self.model.edges():
            lines.append(f'    <edge source="{u}" target="{v}"/>')
        lines.extend(["  </graph>", "</graphml>"])
        return "\n".join(lines)


def fold(
    pres: VoltagePresentation, win: CoverWindow, td: TreeDecomposition
) -> GraphDecomposition:
    """Quotient a deck-invariant tree-decomposition of the window by the
    deck group.

    Model nodes are deck orbits of interior tree nodes, edges come from
    interior tree edges, bags are the projected bags, and each vertex's
    co-part is the projection of the node set of its most interior lift.
    """
    g = pres.base
    interior = {
        t for t in td.tree.vertices if all(win.safe(x, 2) for x in td.bags[t])
    }
    orbit_key = {t: _normalize_vertex_set(win, td.bags[t]) for t in interior}
    keys = sorted(set(orbit_key.values()))
    names = {k: f"h{i}" for i, k in enumerate(keys)}

    bags: Dict[str, FrozenSet[str]] = {}
    for t in interior:
        h = names[orbit_key[t]]
        projected = frozenset(win.base_of[x] for x in td.bags[t])
        if h in bags and bags[h] != projected:
            raise ActionMismatch(
                f"orbit {h} projects to different bags; enlarge the window"
            )
        bags[h] = projected

    model_edges = set()
    for t1, t2 in td.tree.edges():
        if t1 in interior and t2 in interior:
            h1, h2 = names[orbit_key[t1]], names[orbit_key[t2]]
            if h1 == h2:
                raise ActionMismatch("tree edge folds to a loop; enlarge the window")
            model_edges.add(tuple(sorted((h1, h2))))
    model = Graph([names[k] for k in keys], sorted(model_edges))

    coparts: Dict[str, Graph] = {}
    for v in g.vertices:
        lifts = [x for x in win.window.vertices if win.base_of[x] == v]
        x0 = min(lifts, key=lambda x: (len(win.word_of[x]), x))
        t_nodes = [t for t in td.tree.vertices if x0 in td.bags[t]]
        if not all(t in interior for t in t_nodes):
            raise ActionMismatch(
                f"the lift of {v!r} touches non-interior tree nodes; enlarge the window"
            )
        sub_nodes = sorted({names[orbit_key[t]] for t in t_nodes}, key=model.key)
        sub_edges = set()
        for t1, t2 in td.tree.edges():
            if t1 in t_nodes and t2 in t_nodes:
                sub_edges.add(
                    tuple(sorted((names[orbit_key[t1]], names[orbit_key[t2]])))
                )
        coparts[v] = Graph(sub_nodes, sorted(sub_edges))
    return GraphDecomposition(model=model, bags=bags, coparts=coparts)


def verify_graph_decomposition(g: Graph, gd: GraphDecomposition) -> dict:
    """Coverage of vertices and edges, connected co-parts inside the right
    model subgraphs, and the into-cliques flags."""
    report = {
        "h1_uncovered_vertices": [],
        "h1_uncovered_edges": [],
        "h2_failures": [],
        "into_cliques": all(g.is_clique(b) for b in gd.bags.values()),
    }
    covered = set()
    for b in gd.bags.values():
        covered |= b
    for v in g.vertices:
        if v not in covered:
            report["h1_uncovered_vertices"].append(v)
    for u, v in g.edges():
        if not any(u in b and v in b for b in gd.bags.values()):
            report["h1_uncovered_edges"].append((u, v))
    for v in g.vertices:
        sub = gd.coparts.get(v)
        if sub is None or len(sub) == 0:
            report["h2_failures"].append((v, "missing co-part"))
            continue
        w_v = {h for h in gd.model.vertices if v in gd.bags[h]}
        if not set(sub.vertices) <= w_v:
            report["h2_failures"].append((v, "co-part node outside W_v"))
        if not all(gd.model.has_edge(a, b) for a, b in sub.edges()):
            report["h2_failures"].append((v, "co-part edge missing from model"))
        if not sub.is_connected():
            report["h2_failures"].append((v, "co-part disconnected"))
    bag_list = list(gd.bags.values())
    cliques = {c.vertices for c in maximal_cliques(g, require_chordal=False)}
    report["into_maximal_cliques"] = (
        report["into_cliques"]
        and len(bag_list) == len(set(bag_list))
        and set(bag_list) == cliques
    )
    report["ok"] = not (
        report["h1_uncovered_vertices"]
        or report["h1_uncovered_edges"]
        or report["h2_failures"]
    )
    return report


def r_acyclic_check(
    g: Graph,
    gd: GraphDecomposition,
    r: int,
    budget: int = 200_000,
    seed: int = 0,
):
    """Is the union of every <= r co-parts acyclic?

    Exhaustive over vertex subsets when their count fits the budget, else
    a seeded random sample; the witness is (X, cycle) on failure.
    """
    vs = list(g.vertices)
    total = sum(_ncr(len(vs), k) for k in range(1, min(r, len(vs)) + 1))
    subsets: Iterable[Tuple[str, ...]]
    exhaustive = total <= budget
    if exhaustive:
        subsets = itertools.chain.from_iterable(
            itertools.combinations(vs, k) for k in range(1, min(r, len(vs)) + 1)
        )
    else:
        rng = random.Random(seed)
        subsets = (
            tuple(rng.sample(vs, rng.randint(1, min(r, len(vs)))))
            for _ in range(budget)
        )
    checked = 0
    for x in subsets:
        checked += 1
        nodes = set()
        edges = set()
        for v in x:
            sub = gd.coparts[v]
            nodes |= set(sub.vertices)
            edges |= {tuple(sorted(e)) for e in sub.edges()}
        union = Graph(sorted(nodes), sorted(edges))
        cycle = _find_cycle(union)
        if cycle is not None:
            return False, {"X": list(x), "cycle": cycle, "exhaustive": exhaustive}
    return True, {"checked": checked, "exhaustive": exhaustive}


def _ncr(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


def _find_cycle(g: Graph) -> Optional[List[str]]:
    seen = set()
    for root in g.vertices:
        if root in seen:
            continue
        parent = {root: None}
        stack = [root]
        seen.add(root)
        while stack:
            u = stack.pop()
            for w in g.sorted(g.neighbors(u)):
                if w not in parent:
                    parent[w] = u
                    seen.add(w)
                    stack.append(w)
                elif parent[u] != w:
                    # close the cycle through the two tree paths to the root
                    pu = _root_path(parent, u)
                    pw = _root_path(parent, w)
                    common = set(pu) & set(pw)
                    cut_u = next(i for i, a in enumerate(pu) if a in common)
                    cut_w = next(i for i, a in enumerate(pw) if a in common)
                    return pu[: cut_u + 1] + pw[:cut_w][::-1]
    return None


def _root_path(parent, v):
    path = []
    while v is not None:
        path.append(v)
        v = parent[v]
    return path


# -- combined local-chordality / folding pipeline -----------------------


def theorem3_pipeline(g: Graph, r: int, cover: VoltagePresentation, L: int) -> dict:
    """Compare r-local chordality of g with the folded decomposition being
    into cliques; the two verdicts must agree."""
    from .chordal import is_r_locally_chordal

    locally_chordal, witness = is_r_locally_chordal(g, r)
    report = {
        "r": r,
        "locally_chordal": locally_chordal,
        "local_witness": witness,
        "window_chordal": None,
        "into_cliques": False,
        "decomposition": None,
        "window_td_into_cliques": None,
    }
    win = derive_window(cover, L)
    ok, cert = is_chordal(win.window)
    report["window_chordal"] = ok
    if ok:
        n = construct_N(win.window)
        td = build_td_from_nested(win.window, n.union)
        report["window_td_into_cliques"] = classify_td(win.window, td).into_cliques
        gd = fold(cover, win, td)
        vr = verify_graph_decomposition(g, gd)
        report["decomposition"] = gd
        report["gd_report"] = vr
        report["into_cliques"] = bool(vr["ok"] and vr["into_cliques"])
    report["consistent"] = report["locally_chordal"] == report["into_cliques"]
    return report
