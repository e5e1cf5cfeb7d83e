"""Shared fixtures: the random chordal suite and the C6 cover artifacts
are expensive, so they are computed once per session."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cliquedec.cli import canonical_td_pipeline
from cliquedec.covers import derive_window
from cliquedec.instances import cycle_z_presentation, random_chordal
from cliquedec.nested import construct_N
from cliquedec.treedec import build_td_from_nested

SUITE1_SEED = 20240601
SUITE1_COUNT = 50


@pytest.fixture(scope="session")
def suite1():
    """50 seeded random connected chordal graphs, 12 to 40 vertices, each
    with its full canonical-decomposition pipeline results."""
    import random

    rng = random.Random(SUITE1_SEED)
    out = []
    for i in range(SUITE1_COUNT):
        n = rng.randint(12, 40)
        g = random_chordal(n, seed=SUITE1_SEED + i)
        out.append((g, canonical_td_pipeline(g)))
    return out


SUITE2_SEED = 20240602
SUITE2_COUNT = 200


@pytest.fixture(scope="session")
def suite2():
    """200 seeded random graphs on 4 to 14 vertices (mixed density)."""
    import random

    from oracles import random_graph

    rng = random.Random(SUITE2_SEED)
    return [
        random_graph(rng.randint(4, 14), rng.uniform(0.15, 0.7), rng)
        for _ in range(SUITE2_COUNT)
    ]


@pytest.fixture(scope="session")
def c6z_artifacts():
    """Window, nested set and tree-decomposition for the C6 z-cover at L=6."""
    pres = cycle_z_presentation(6)
    win = derive_window(pres, 6)
    n = construct_N(win.window)
    td = build_td_from_nested(win.window, n.union)
    return pres, win, n, td
