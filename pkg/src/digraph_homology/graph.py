"""Digraphs, stratification, longest-path subgraphs and trimming.

Vertex ids are opaque hashable tokens with a total order (strings or ints,
not mixed).  Every iteration order in this package derives from that order,
which makes outputs deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    DepthZero,
    DuplicateEdge,
    EdgeSkipsLayer,
    NotAPartition,
    NotStratifiable,
    SelfLoop,
    UnknownVertex,
)

Vertex = Hashable
Edge = tuple


def to_rational(w) -> Fraction:
    """Exact rational from an int, Fraction, or decimal/``num/den`` string.

    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the nearest binary double.
    """
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        return Fraction(repr(w))
    if isinstance(w, str):
        return Fraction(w.strip())
    return Fraction(w)


@dataclass(frozen=True, eq=True)
class Digraph:
    """Simple digraph: no self-loops, no multi-edges, optional rational weights."""

    vertices: tuple
    edges: tuple
    weights: Mapping | None = field(default=None, compare=True)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(tuple(self.vertices)):
            raise UnknownVertex("duplicate vertex id")
        edges = [tuple(e) for e in self.edges]
        vset = set(verts)
        seen = set()
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            if u not in vset or v not in vset:
                raise UnknownVertex(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")
            if (u, v) in seen:
                raise DuplicateEdge(f"duplicate edge ({u!r}, {v!r})")
            seen.add((u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        if self.weights is not None:
            w = {tuple(e): to_rational(x) for e, x in dict(self.weights).items()}
            extra = set(w) - seen
            if extra:
                raise UnknownVertex(f"weight given for non-edge {next(iter(extra))!r}")
            object.__setattr__(self, "weights", w)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = (), weights: Mapping | None = None) -> Digraph:
        """Vertex set is ``vertices`` plus every edge endpoint."""
        edges = [tuple(e) for e in edges]
        verts = set(vertices)
        for u, v in edges:
            verts.add(u)
            verts.add(v)
        return cls(tuple(verts), tuple(edges), weights)

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None and len(self.weights) == len(self.edges)

    @cached_property
    def succ(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        return {v: tuple(s) for v, s in out.items()}

    @cached_property
    def pred(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[v].append(u)
        return {v: tuple(sorted(p)) for v, p in out.items()}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edge_set

    def subgraph(self, vertices: Iterable) -> Digraph:
        """Induced subgraph on ``vertices``."""
        keep = set(vertices)
        edges = [e for e in self.edges if e[0] in keep and e[1] in keep]
        return self._with(tuple(keep), edges)

    def edge_subgraph(self, edges: Iterable, vertices: Iterable | None = None) -> Digraph:
        edges = [tuple(e) for e in edges]
        if vertices is None:
            vertices = {x for e in edges for x in e}
        return self._with(tuple(vertices), edges)

    def _with(self, vertices, edges) -> Digraph:
        w = None
        if self.weights is not None:
            w = {e: self.weights[e] for e in edges if e in self.weights}
        return Digraph(tuple(vertices), tuple(edges), w)


@dataclass(frozen=True, eq=True)
class StratifiedDigraph:
    """A digraph with an ordered layer partition K_0..K_L.

    Construct through :func:`validate_stratified`; the constructor itself
    only normalizes layer order.  Empty layers appear only after trimming or
    when explicitly allowed, and force ``trivial_full_depth``.
    """

    graph: Digraph
    layers: tuple

    def __post_init__(self):
        key = {v: i for i, v in enumerate(self.graph.vertices)}
        object.__setattr__(self, "layers", tuple(tuple(sorted(k, key=key.__getitem__)) for k in self.layers))

    __hash__ = None  # type: ignore[assignment]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @cached_property
    def layer_of(self) -> dict:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    @property
    def trivial_full_depth(self) -> bool:
        """True when some layer is empty, so no full-depth path exists."""
        return any(len(k) == 0 for k in self.layers)

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    def restrict(self, vertices: Iterable, edges: Iterable | None = None) -> StratifiedDigraph:
        """Subgraph on ``vertices`` keeping every layer index (layers may empty out)."""
        keep = set(vertices)
        if edges is None:
            g = self.graph.subgraph(keep)
        else:
            g = self.graph.edge_subgraph(edges, keep)
        layers = tuple(tuple(v for v in k if v in keep) for k in self.layers)
        return StratifiedDigraph(g, layers)

    def with_graph(self, g: Digraph) -> StratifiedDigraph:
        """Same layers over a graph with the same vertex set (e.g. fewer edges)."""
        if g.vertices != self.graph.vertices:
            raise NotAPartition("vertex sets differ")
        return StratifiedDigraph(g, self.layers)


@dataclass(frozen=True)
class LayerProfile:
    """Longest allowed path lengths ending at (``top``) and starting from (``bottom``) each vertex."""

    top: dict
    bottom: dict
    order: tuple

    @property
    def length(self) -> int:
        return max(self.top.values(), default=0)


# -- validation -------------------------------------------------------------


def validate_stratified(g: Digraph, layers: Sequence[Iterable], allow_empty_layers: bool = False) -> StratifiedDigraph:
    layers = [list(k) for k in layers]
    if not layers:
        raise NotAPartition("at least one layer is required")
    seen: dict = {}
    for i, k in enumerate(layers):
        if not k and not allow_empty_layers:
            raise NotAPartition(f"layer {i} is empty")
        for v in k:
            if v in seen:
                raise NotAPartition(f"vertex {v!r} appears in layers {seen[v]} and {i}")
            seen[v] = i
    vset = set(g.vertices)
    missing = vset - set(seen)
    if missing:
        raise NotAPartition(f"vertex {min(missing)!r} is in no layer")
    extra = set(seen) - vset
    if extra:
        raise NotAPartition(f"layer member {min(extra)!r} is not a vertex")
    for u, v in g.edges:
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}")
        if seen[v] != seen[u] + 1:
            raise EdgeSkipsLayer(f"edge ({u!r}, {v!r}) goes from layer {seen[u]} to layer {seen[v]}")
    return StratifiedDigraph(g, tuple(tuple(k) for k in layers))


def from_layers(layers: Sequence[Iterable], edges: Iterable, weights: Mapping | None = None) -> StratifiedDigraph:
    """Convenience constructor: vertex set is the union of the layers."""
    layers = [list(k) for k in layers]
    g = Digraph(tuple(v for k in layers for v in k), tuple(tuple(e) for e in edges), weights)
    return validate_stratified(g, layers)


# -- traversal --------------------------------------------------------------


def topological_order(g: Digraph) -> list:
    """Kahn's algorithm, always emitting the smallest available vertex."""
    indeg = {v: len(g.pred[v]) for v in g.vertices}
    heap = [v for v in g.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        u = heapq.heappop(heap)
        out.append(u)
        for v in g.succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(out) != len(g.vertices):
        raise CycleDetected("graph contains a directed cycle")
    return out


def layer_profile(g: Digraph) -> LayerProfile:
    order = topological_order(g)
    top = {v: 0 for v in order}
    for v in order:
        for u in g.pred[v]:
            if top[u] + 1 > top[v]:
                top[v] = top[u] + 1
    bottom = {v: 0 for v in order}
    for v in reversed(order):
        for w in g.succ[v]:
            if bottom[w] + 1 > bottom[v]:
                bottom[v] = bottom[w] + 1
    return LayerProfile(top, bottom, tuple(order))


def longest_path_length(g: Digraph) -> int:
    return layer_profile(g).length


def weakly_connected_components(g: Digraph) -> list[Digraph]:
    """Components ordered by their smallest vertex."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for root in sorted(groups, key=lambda r: groups[r][0]):
        members = set(groups[root])
        edges = [e for e in g.edges if e[0] in members]
        comps.append(g.edge_subgraph(edges, members))
    return comps


def stratified_components(g: StratifiedDigraph) -> list[StratifiedDigraph]:
    """Weakly connected components, each keeping the global layer indices."""
    return [g.restrict(c.vertices, c.edges) for c in weakly_connected_components(g.graph)]


def infer_layers(g: Digraph) -> StratifiedDigraph:
    """Stratify by ``K_i = {v : top[v] = i}``."""
    prof = layer_profile(g)
    depth = prof.length
    layers: list[list] = [[] for _ in range(depth + 1)]
    for v in g.vertices:
        layers[prof.top[v]].append(v)
    for u, v in g.edges:
        if prof.top[v] != prof.top[u] + 1:
            raise NotStratifiable(f"edge ({u!r}, {v!r}) skips from layer {prof.top[u]} to {prof.top[v]}")
    return StratifiedDigraph(g, tuple(tuple(k) for k in layers))


def extract_longest_subgraph(g: Digraph) -> StratifiedDigraph:
    """Union of supports of all longest allowed paths, with its layers.

    An edge ``(u, v)`` lies on a longest path iff
    ``top[u] + 1 + bottom[v] == length``.
    """
    prof = layer_profile(g)
    ell = prof.length
    if ell == 0:
        raise DepthZero("graph has no edges; the maximal homology is reduced H_0")
    top, bottom = prof.top, prof.bottom
    e_star = [(u, v) for u, v in g.edges if top[u] + 1 + bottom[v] == ell]
    v_star = {x for e in e_star for x in e}
    layers = [[] for _ in range(ell + 1)]
    for v in g.vertices:
        if v in v_star:
            layers[top[v]].append(v)
    sub = g.edge_subgraph(e_star, v_star)
    return StratifiedDigraph(sub, tuple(tuple(k) for k in layers))


# -- trimming ---------------------------------------------------------------


def _removable(g: StratifiedDigraph) -> set:
    last = g.depth
    layer_of = g.layer_of
    pred, succ = g.graph.pred, g.graph.succ
    out = set()
    for v in g.vertices:
        i = layer_of[v]
        if (i != 0 and len(pred[v]) <= 1) or (i != last and len(succ[v]) <= 1):
            out.add(v)
    return out


def trim_removable(g: StratifiedDigraph) -> StratifiedDigraph:
    """Delete vertices that cannot lie on any full-depth cycle, to a fixpoint.

    A vertex outside K_0 with at most one predecessor, or outside K_L with at
    most one successor, is removable; deleting it may make neighbours
    removable, so passes repeat until nothing changes.
    """
    if g.depth == 0:
        return g
    while True:
        drop = _removable(g)
        if not drop:
            return g
        g = g.restrict(v for v in g.vertices if v not in drop)


def _connected_counts_fail(g: StratifiedDigraph) -> set:
    # Bitmask reachability per vertex: descendants by layer sweep downward,
    # ancestors by sweep upward.  Cost O(L * |E|) big-int ops.
    pos = {v: i for i, v in enumerate(g.vertices)}
    layer_masks = []
    for k in g.layers:
        m = 0
        for v in k:
            m |= 1 << pos[v]
        layer_masks.append(m)
    pred, succ = g.graph.pred, g.graph.succ
    desc = {v: 0 for v in g.vertices}
    for k in reversed(g.layers):
        for v in k:
            m = 0
            for w in succ[v]:
                m |= desc[w] | (1 << pos[w])
            desc[v] = m
    anc = {v: 0 for v in g.vertices}
    for k in g.layers:
        for v in k:
            m = 0
            for u in pred[v]:
                m |= anc[u] | (1 << pos[u])
            anc[v] = m
    layer_of = g.layer_of
    out = set()
    for v in g.vertices:
        i = layer_of[v]
        related = desc[v] | anc[v]
        for j, lm in enumerate(layer_masks):
            if j != i and (related & lm).bit_count() <= 1:
                out.add(v)
                break
    return out


def trim_connected_count(g: StratifiedDigraph) -> StratifiedDigraph:
    """Delete every vertex connected to at most one vertex of some other layer.

    Two vertices are connected when an allowed path contains both.  Runs
    together with :func:`trim_removable` until neither deletes anything.
    """
    if g.depth == 0:
        return g
    while True:
        g = trim_removable(g)
        drop = _connected_counts_fail(g)
        if not drop:
            return g
        g = g.restrict(v for v in g.vertices if v not in drop)
