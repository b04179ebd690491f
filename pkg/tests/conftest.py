import itertools

import pytest

from digraph_homology.graph import Digraph, from_layers
from digraph_homology.sampling import fully_connected, random_dag, random_stratified, rng_for


# -- brute-force oracles (deliberately independent of the library's algorithms) --


def all_allowed_paths(g: Digraph):
    """Every allowed elementary path of a DAG, by DFS from every vertex."""
    out = []

    def dfs(path):
        out.append(tuple(path))
        for w in g.succ[path[-1]]:
            path.append(w)
            dfs(path)
            path.pop()

    for v in g.vertices:
        dfs([v])
    return out


def brute_longest(g: Digraph) -> int:
    return max((len(p) - 1 for p in all_allowed_paths(g)), default=0)


def brute_g_star(g: Digraph):
    """Vertices, edges and position-layers of the union of all longest paths."""
    ell = brute_longest(g)
    longest = [p for p in all_allowed_paths(g) if len(p) - 1 == ell]
    verts = {v for p in longest for v in p}
    edges = {e for p in longest for e in zip(p, p[1:])}
    layers = [set() for _ in range(ell + 1)]
    for p in longest:
        for i, v in enumerate(p):
            layers[i].add(v)
    return verts, edges, layers


def bipartite(m, n):
    return fully_connected([m, n])


@pytest.fixture
def diamond():
    return Digraph.from_edges([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@pytest.fixture
def chord():
    return Digraph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def k222():
    return fully_connected([2, 2, 2])


def stratified_corpus(n, seed, max_layer=4, max_depth=3, min_depth=1):
    """Seeded random stratified digraphs plus rho-samples of a [3,3,3,3] base."""
    from digraph_homology.sampling import sample_batch

    rng = rng_for(seed)
    graphs = [random_stratified(rng, max_layer=max_layer, max_depth=max_depth, min_depth=min_depth)
              for _ in range(n)]
    for k, rho in enumerate(("0.3", "0.6", "0.9")):
        graphs.extend(sample_batch([3, 3, 3, 3], rho, 10, seed + 100 + k))
    return graphs


def dag_corpus(n, seed, max_vertices=12):
    rng = rng_for(seed)
    out = []
    for _ in range(n):
        nv = int(rng.integers(1, max_vertices + 1))
        out.append(random_dag(rng, nv, float(rng.uniform(0.1, 0.6))))
    return out


def disjoint_union(graphs):
    """Relabel vertices as (i, v) and take the union of stratified graphs with equal depth."""
    depth = graphs[0].depth
    layers = [[] for _ in range(depth + 1)]
    edges = []
    for i, g in enumerate(graphs):
        assert g.depth == depth
        for k, layer in enumerate(g.layers):
            layers[k].extend((i, v) for v in layer)
        edges.extend(((i, u), (i, v)) for u, v in g.edges)
    return from_layers(layers, edges)
