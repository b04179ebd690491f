"""Fully connected base graphs and seeded edge sampling.

Randomness comes from NumPy's counter-based Philox generator.  Sample ``i``
of a run with seed ``s`` uses the stream ``SeedSequence(s, spawn_key=(i,))``
so any sample can be regenerated on its own, in any order or process.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import BadRho
from .graph import StratifiedDigraph, from_layers, to_rational

RNG_NAME = "numpy.random.Philox"

# Layer sizes of the benchmark base graphs.
BASE_GRAPHS = {
    "gamma1": (10, 10),
    "gamma2": (10, 10, 10),
    "gamma3": (4, 10, 10, 10),
    "gamma4": (4, 10, 10, 10, 10),
    "gamma5": (4, 10, 10, 10, 10, 5),
}


def vertex_name(layer: int, index: int, sizes) -> str:
    lw = len(str(max(len(sizes) - 1, 0)))
    iw = len(str(max(max(sizes) - 1, 0)))
    return f"k{layer:0{lw}d}_{index:0{iw}d}"


def fully_connected(sizes) -> StratifiedDigraph:
    """Stratified digraph with every edge between adjacent layers present."""
    sizes = tuple(int(s) for s in sizes)
    if not sizes or min(sizes) < 1:
        raise ValueError("layer sizes must be positive")
    layers = [[vertex_name(i, j, sizes) for j in range(n)] for i, n in enumerate(sizes)]
    edges = [(u, v) for i in range(len(sizes) - 1) for u in layers[i] for v in layers[i + 1]]
    return from_layers(layers, edges)


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def parse_rho(rho) -> Fraction:
    try:
        r = to_rational(rho)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadRho(f"cannot parse rho {rho!r}") from exc
    if not 0 < r <= 1:
        raise BadRho(f"rho must lie in (0, 1], got {rho!r}")
    return r


def pair_sample_size(rho: Fraction, n_pairs: int) -> int:
    return math.ceil(rho * n_pairs)


def sample_subgraph(base: StratifiedDigraph, rho, rng: np.random.Generator) -> StratifiedDigraph:
    """Keep ``ceil(rho * |E_i|)`` uniformly chosen edges between each pair of adjacent layers."""
    rho = parse_rho(rho)
    kept = []
    for i in range(base.depth):
        below = set(base.layers[i + 1])
        pair_edges = [e for e in base.edges if e[1] in below]
        k = pair_sample_size(rho, len(pair_edges))
        idx = rng.choice(len(pair_edges), size=k, replace=False)
        kept.extend(pair_edges[j] for j in sorted(int(j) for j in idx))
    return base.with_graph(base.graph.edge_subgraph(kept, base.vertices))


def sample_batch(sizes, rho, count: int, seed: int) -> list[StratifiedDigraph]:
    base = fully_connected(sizes)
    return [sample_subgraph(base, rho, rng_for(seed, i)) for i in range(count)]


def assign_weights(g: StratifiedDigraph, rng: np.random.Generator, dist: str = "uniform", digits: int = 6) -> StratifiedDigraph:
    """Random edge weights in (0, 1), rounded to ``digits`` decimals and stored exactly.

    ``dist`` is ``"uniform"`` or ``"beta"`` (density 6x(1-x)).
    """
    n = len(g.edges)
    if dist == "uniform":
        raw = rng.random(n)
    elif dist == "beta":
        raw = rng.beta(2.0, 2.0, n)
    else:
        raise ValueError(f"unknown weight distribution {dist!r}")
    scale = 10**digits
    weights = {}
    for e, x in zip(g.edges, raw):
        q = min(max(int(round(float(x) * scale)), 1), scale - 1)
        weights[e] = Fraction(q, scale)
    graph = type(g.graph)(g.graph.vertices, g.graph.edges, weights)
    return g.with_graph(graph)


def random_stratified(rng: np.random.Generator, max_layer: int = 4, max_depth: int = 3,
                      min_depth: int = 1, density: float | None = None) -> StratifiedDigraph:
    """Random stratified digraph with integer vertex ids (test corpora)."""
    depth = int(rng.integers(min_depth, max_depth + 1))
    sizes = [int(rng.integers(1, max_layer + 1)) for _ in range(depth + 1)]
    p = float(rng.uniform(0.3, 1.0)) if density is None else density
    layers, nxt = [], 0
    for s in sizes:
        layers.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = [(u, v) for i in range(depth) for u in layers[i] for v in layers[i + 1] if rng.random() < p]
    return from_layers(layers, edges)


def random_dag(rng: np.random.Generator, n: int, p: float) -> "Digraph":
    """Random DAG on ``0..n-1``: each forward pair ``i < j`` is an edge with probability ``p``."""
    from .graph import Digraph

    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Digraph.from_edges(edges, range(n))
