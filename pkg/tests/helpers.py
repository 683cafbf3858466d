"""Shared fixtures: hand-built graphs/complexes and seeded random graphs."""

from __future__ import annotations

import random

from cwkoszul.cw import RegularCWComplex
from cwkoszul.layered import LayeredGraph


def edge_poset() -> LayeredGraph:
    """Face poset of a single closed edge: endpoints a, b under e."""
    return LayeredGraph({"a": 1, "b": 1, "e": 2}, {("e", "a"), ("e", "b")}, name="edge")


def nonuniform_poset() -> LayeredGraph:
    """Rank-3 vertex whose two covers share no lower cover."""
    return LayeredGraph(
        {"x": 3, "b": 2, "c": 2, "p": 1, "q": 1},
        {("x", "b"), ("x", "c"), ("b", "p"), ("c", "q")},
        name="nonuniform",
    )


def dangling_square_complex() -> RegularCWComplex:
    """A 2-cell whose boundary hits a single edge once: fails validation."""
    return RegularCWComplex(
        "dangling",
        {"v1": 0, "v2": 0, "e": 1, "f": 2},
        {("e", "v1"): -1, ("e", "v2"): 1, ("f", "e"): 1},
    )


def segment_plus_point() -> RegularCWComplex:
    """A closed segment and an isolated vertex: valid but not pure."""
    return RegularCWComplex(
        "segment_plus_point",
        {"a": 0, "b": 0, "c": 0, "e": 1},
        {("e", "a"): -1, ("e", "b"): 1},
    )


def two_disjoint_triangles() -> RegularCWComplex:
    from cwkoszul.catalog import _simplicial

    return _simplicial("two_triangles", ["abc", "def"])


def random_layered_graph(rng: random.Random) -> LayeredGraph:
    """A small random layered graph of rank 2..4 (not necessarily uniform)."""
    top = rng.randint(2, 4)
    layers = {
        r: [f"{r}{chr(97 + i)}" for i in range(rng.randint(1, 3))]
        for r in range(1, top + 1)
    }
    verts = {v: r for r, vs in layers.items() for v in vs}
    covers = set()
    for r in range(2, top + 1):
        for v in layers[r]:
            k = rng.randint(1, len(layers[r - 1]))
            for w in rng.sample(layers[r - 1], k):
                covers.add((v, w))
    return LayeredGraph(verts, covers, name=f"rnd{rng.random():.6f}")


def random_uniform_graphs(count: int, seed: int) -> list[LayeredGraph]:
    """Deterministic list of uniform random graphs of rank <= 4."""
    rng = random.Random(seed)
    out: list[LayeredGraph] = []
    while len(out) < count:
        g = random_layered_graph(rng)
        if g.is_uniform()[0]:
            out.append(g)
    return out
