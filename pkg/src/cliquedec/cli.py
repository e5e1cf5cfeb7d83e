"""Command-line surface: chordality checks, canonical tree-decompositions,
folding of periodic covers, verification, and instance generation.

Exit codes: 0 success / verdict true, 1 verdict false (witness printed),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Dict, List, Optional

from .chordal import is_chordal, is_r_locally_chordal, maximal_cliques
from .covers import (
    VoltagePresentation,
    derive_window,
    fold,
    r_acyclic_check,
    verify_graph_decomposition,
)
from .errors import CliquedecError, OutOfRange
from .graph import Graph
from .instances import make_instance, star
from .nested import construct_N, verify_N
from .separations import Separation
from .symmetry import automorphism_generators, verify_canonical_td
from .treedec import (
    TreeDecomposition,
    build_td_from_nested,
    classify_td,
    contract_to_maximal,
    verify_td,
)

SCHEMA = "v1"
DEFAULT_SEED = 20240601


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return Graph.from_json_dict(json.load(fh))


def _load_voltage(path: str) -> VoltagePresentation:
    with open(path) as fh:
        return VoltagePresentation.from_json_dict(json.load(fh))


def _load_td(path: str) -> TreeDecomposition:
    with open(path) as fh:
        return TreeDecomposition.from_json_dict(json.load(fh))


def _emit(args, report: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"schema": SCHEMA, **report}, indent=2, sort_keys=True, default=str))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


# -- subcommand handlers ------------------------------------------------


def cmd_check_chordal(args) -> int:
    g = _load_graph(args.infile)
    ok, cert = is_chordal(g)
    if ok:
        _emit(args, {"chordal": True, "elimination_ordering": list(cert.order)})
        return 0
    _emit(args, {"chordal": False, "hole": cert})
    return 1


def cmd_max_cliques(args) -> int:
    g = _load_graph(args.infile)
    cliques = maximal_cliques(g, require_chordal=False)
    _emit(args, {"maximal_cliques": [sorted(c.vertices) for c in cliques]})
    return 0


def canonical_td_pipeline(g: Graph, include_nontight: bool = False) -> dict:
    """construct_N, build the tree, and verify canonicity end to end."""
    n = construct_N(g, include_nontight=include_nontight)
    td = build_td_from_nested(g, n.union)
    aut = automorphism_generators(g)
    canon = verify_canonical_td(g, td, aut)
    cls = classify_td(g, td)
    return {
        "nested_set": n,
        "td": td,
        "aut": aut,
        "canonical": canon["canonical"],
        "classification": cls,
        "beta_restricted_to_tight": not include_nontight,
    }


def cmd_canonical_td(args) -> int:
    g = _load_graph(args.infile)
    res = canonical_td_pipeline(g, include_nontight=args.beta_include_nontight)
    td = res["td"]
    report = {
        "decomposition": td.to_json_dict(),
        "canonical": res["canonical"],
        "regular": res["classification"].regular,
        "into_cliques": res["classification"].into_cliques,
        "into_maximal_cliques": res["classification"].into_maximal_cliques,
        "beta_restricted_to_tight": res["beta_restricted_to_tight"],
    }
    _emit(args, report)
    return 0 if res["canonical"] else 1


def cmd_maximal_td(args) -> int:
    g = _load_graph(args.infile)
    res = canonical_td_pipeline(g)
    td = contract_to_maximal(g, res["td"], orbit_order=args.orbit_order)
    cls = classify_td(g, td)
    _emit(
        args,
        {
            "decomposition": td.to_json_dict(),
            "into_maximal_cliques": cls.into_maximal_cliques,
        },
    )
    return 0 if cls.into_maximal_cliques else 1


def cmd_local_chordal(args) -> int:
    g = _load_graph(args.infile)
    ok, witness = is_r_locally_chordal(g, args.r)
    if ok:
        _emit(args, {"r_locally_chordal": True, "r": args.r})
        return 0
    center, hole = witness
    _emit(args, {"r_locally_chordal": False, "r": args.r, "center": center, "hole": hole})
    return 1


def cmd_fold(args) -> int:
    pres = _load_voltage(args.voltage)
    win = derive_window(pres, args.L)
    ok, cert = is_chordal(win.window)
    if not ok:
        _emit(args, {"window_chordal": False, "hole": cert})
        return 1
    n = construct_N(win.window)
    td = build_td_from_nested(win.window, n.union)
    gd = fold(pres, win, td)
    vr = verify_graph_decomposition(pres.base, gd)
    _emit(
        args,
        {
            "decomposition": gd.to_json_dict(),
            "ok": vr["ok"],
            "into_cliques": vr["into_cliques"],
            "into_maximal_cliques": vr["into_maximal_cliques"],
        },
    )
    return 0 if vr["ok"] else 1


def cmd_verify_td(args) -> int:
    g = _load_graph(args.infile)
    td = _load_td(args.td)
    report = verify_td(g, td)
    _emit(args, report)
    return 0 if report["ok"] else 1


def cmd_verify_gd(args) -> int:
    g = _load_graph(args.infile)
    pres = _load_voltage(args.voltage)
    win = derive_window(pres, args.L)
    n = construct_N(win.window)
    td = build_td_from_nested(win.window, n.union)
    gd = fold(pres, win, td)
    report = verify_graph_decomposition(g, gd)
    _emit(args, {k: v for k, v in report.items()})
    return 0 if report["ok"] else 1


def cmd_r_acyclic(args) -> int:
    g = _load_graph(args.infile)
    pres = _load_voltage(args.voltage)
    win = derive_window(pres, args.L)
    n = construct_N(win.window)
    td = build_td_from_nested(win.window, n.union)
    gd = fold(pres, win, td)
    flag, info = r_acyclic_check(g, gd, args.r, seed=args.seed)
    _emit(args, {"r_acyclic": flag, "r": args.r, **info})
    return 0 if flag else 1


def _prufer_trees(t: int):
    """All labeled trees on nodes 0..t-1 via Prüfer sequences."""
    if t == 1:
        yield []
        return
    if t == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(t), repeat=t - 2):
        degree = [1] * t
        for x in seq:
            degree[x] += 1
        edges = []
        seq_list = list(seq)
        leaves = sorted(i for i in range(t) if degree[i] == 1)
        import heapq

        heap = leaves[:]
        heapq.heapify(heap)
        for x in seq_list:
            leaf = heapq.heappop(heap)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(heap, x)
        u, v = heapq.heappop(heap), heapq.heappop(heap)
        edges.append((u, v))
        yield edges


def reproduce_example_51(t: int) -> dict:
    """Exhaustively test every tree over the maximal cliques of K_{1,t}.

    None of the candidate tree-decompositions into maximal cliques is
    canonical, while the star-shaped decomposition with the singleton
    center bag is canonical (and not into maximal cliques).
    """
    if not 3 <= t <= 6:
        raise OutOfRange("t must be between 3 and 6")
    g = star(t)
    aut = automorphism_generators(g)
    cliques = sorted(
        (c.vertices for c in maximal_cliques(g)), key=lambda c: sorted(c)
    )
    assert len(cliques) == t
    candidates = 0
    canonical = 0
    for edges in _prufer_trees(t):
        bags = {f"t{i}": cliques[i] for i in range(t)}
        tree = Graph([f"t{i}" for i in range(t)], [(f"t{u}", f"t{v}") for u, v in edges])
        td = TreeDecomposition(tree=tree, bags=bags)
        assert verify_td(g, td)["ok"]
        candidates += 1
        if verify_canonical_td(g, td, aut)["canonical"]:
            canonical += 1
    res = canonical_td_pipeline(g)
    return {
        "t": t,
        "candidate_trees": candidates,
        "canonical_into_maximal": canonical,
        "star_decomposition_canonical": res["canonical"],
        "star_decomposition_into_maximal_cliques": res[
            "classification"
        ].into_maximal_cliques,
    }


def cmd_reproduce(args) -> int:
    if args.what != "example-5.1":
        raise ValueError(f"unknown reproduction target {args.what!r}")
    report = reproduce_example_51(args.t)
    if not getattr(args, "json", False):
        print(
            f"no canonical tree-decomposition into maximal cliques exists "
            f"({report['candidate_trees']} candidate trees, "
            f"{report['canonical_into_maximal']} canonical)"
        )
        print(
            f"star decomposition with singleton center bag: "
            f"canonical={report['star_decomposition_canonical']}, "
            f"into_maximal_cliques={report['star_decomposition_into_maximal_cliques']}"
        )
    else:
        _emit(args, report)
    return 0


def cmd_gen(args) -> int:
    params = {"n": args.n, "t": args.t, "k": args.k, "seed": args.seed}
    g = make_instance(args.kind, {k: v for k, v in params.items() if v is not None})
    print(json.dumps(g.to_json_dict(), indent=2))
    return 0


# -- argument parsing ---------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquedec",
        description="Canonical tree- and graph-decompositions of chordal "
        "graphs and their periodic covers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--jobs", type=int, default=1, help="worker cap (advisory)")
        return p

    p = add("check-chordal", cmd_check_chordal, help="chordality with certificate")
    p.add_argument("--in", dest="infile", required=True)

    p = add("max-cliques", cmd_max_cliques, help="maximal cliques")
    p.add_argument("--in", dest="infile", required=True)

    p = add("canonical-td", cmd_canonical_td, help="canonical tree-decomposition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--beta-include-nontight", action="store_true")

    p = add("maximal-td", cmd_maximal_td, help="contract to maximal cliques")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--orbit-order", choices=["canonical", "input"], default="canonical")

    p = add("local-chordal", cmd_local_chordal, help="r-local chordality")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("-r", type=int, required=True)

    p = add("fold", cmd_fold, help="fold a periodic cover into a graph-decomposition")
    p.add_argument("--voltage", required=True)
    p.add_argument("-L", type=int, default=6)

    p = add("verify-td", cmd_verify_td, help="validate a tree-decomposition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--td", required=True)

    p = add("verify-gd", cmd_verify_gd, help="validate the folded graph-decomposition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--voltage", required=True)
    p.add_argument("-L", type=int, default=6)

    p = add("r-acyclic", cmd_r_acyclic, help="r-acyclicity of the folded decomposition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--voltage", required=True)
    p.add_argument("-L", type=int, default=6)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("reproduce", cmd_reproduce, help="reproduce worked examples")
    p.add_argument("what", choices=["example-5.1"])
    p.add_argument("-t", type=int, default=3)

    p = add("gen", cmd_gen, help="emit an instance graph as JSON")
    p.add_argument(
        "kind",
        choices=[
            "star",
            "path",
            "cycle",
            "complete",
            "ktree",
            "random_chordal",
            "two_triangles",
            "wheel",
        ],
    )
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-t", type=int, default=None)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (CliquedecError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
