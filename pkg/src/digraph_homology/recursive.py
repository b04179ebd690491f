"""Layer-by-layer recursion for full-depth and maximal path homology.

For a stratified digraph with layers K_0..K_L, the full-depth homology is
the space of L-cycles.  The recursion carries, for each layer p, the
vertices ``x`` of K_p whose predecessors support a nonzero (p-1)-cycle,
together with a coordinate matrix ``A_x`` expressing a basis of those
cycles in a basis of the (p-1)-cycles of the prefix graph.  The p-cycles
of the prefix graph then correspond to the null space of ``[A_x1 ... A_xn]``
(matrix ``V``), which is all the next layer needs.  Actual chains are only
built when ``track=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import Chain, linear_combination
from .errors import DepthZero
from .general import HomologyResult
from .graph import (
    Digraph,
    StratifiedDigraph,
    extract_longest_subgraph,
    stratified_components,
    trim_removable,
)
from .linalg import EliminationStats, RationalMatrix, hstack, null_space_basis

ONE = Fraction(1)


@dataclass
class LayerState:
    """Recursion state after processing layer ``p``.

    ``v_matrix`` has row labels ``(x, k)`` for x in ``k_plus`` and
    ``k < a_matrices[x].shape[1]``; its columns are a basis of the
    (p)-cycle space of the prefix graph in coordinates of the stacked
    ``A_x`` blocks.
    """

    p: int
    k_plus: list
    a_matrices: dict
    v_matrix: RationalMatrix
    tracked_basis: list | None = None

    @property
    def b_p(self) -> int:
        return self.v_matrix.shape[1]

    def block_rows(self, x) -> list:
        return [(x, k) for k in range(self.a_matrices[x].shape[1])]


@dataclass
class _Counters:
    elim: EliminationStats = field(default_factory=EliminationStats)
    shortcut_identity: int = 0
    shortcut_stack: int = 0
    null_calls: int = 0


def _initial_state(k0: tuple, track: bool) -> LayerState:
    n0 = len(k0)
    a = {x: RationalMatrix.identity([0]) for x in k0}
    rows = [{}] + [{j - 1: ONE} for j in range(1, n0)]
    rows[0] = {j: -ONE for j in range(n0 - 1)}
    v = RationalMatrix([(x, 0) for x in k0], range(n0 - 1), rows)
    basis = None
    if track:
        first = Chain.path(k0[0])
        basis = [Chain.path(x) - first for x in k0[1:]]
    return LayerState(0, list(k0), a, v, basis)


def _stack_null_space(order: list, a: dict, b_prev: int, counters: _Counters) -> RationalMatrix:
    """Basis of null([A_x1 ... A_xn]) with rows labelled ``(x, k)``.

    If some block is the identity (its vertex sees every admitted
    predecessor), the system ``I u + B w = 0`` is solved directly as
    ``u = -B w`` with ``w`` free; the first such block in vertex order is
    used.
    """
    labels = [(x, k) for x in order for k in range(a[x].shape[1])]
    pivot = next((x for x in order if a[x].shape[1] == b_prev and a[x].is_identity()), None)
    if pivot is None:
        counters.null_calls += 1
        stacked = hstack([a[x] for x in order], col_index=labels)
        return null_space_basis(stacked, stats=counters.elim)
    counters.shortcut_stack += 1
    free = [lab for lab in labels if lab[0] != pivot]
    fpos = {lab: j for j, lab in enumerate(free)}
    rows: dict = {lab: {} for lab in labels}
    # Column j of the basis: e_j on free label j, -B[:, j] on the pivot block.
    for x in order:
        if x == pivot:
            continue
        ax = a[x]
        for r, row in enumerate(ax._raw_rows()):
            tgt = rows[(pivot, r)]
            for k, val in row.items():
                tgt[fpos[(x, k)]] = -val
        for k in range(ax.shape[1]):
            rows[(x, k)][fpos[(x, k)]] = ONE
    return RationalMatrix(labels, range(len(free)), [rows[lab] for lab in labels])


def _advance(state: LayerState, layer: tuple, g: Digraph, track: bool, counters: _Counters) -> LayerState | None:
    """One recursion step; ``None`` means the cycle space vanished."""
    prev_plus = set(state.k_plus)
    v = state.v_matrix
    b_prev = state.b_p
    order = []
    a: dict = {}
    for x in layer:
        hits = [u for u in g.pred[x] if u in prev_plus]
        if not hits:
            continue
        if len(hits) == len(prev_plus):
            counters.shortcut_identity += 1
            a[x] = RationalMatrix.identity(range(b_prev))
        else:
            drop = [lab for u in hits for lab in state.block_rows(u)]
            counters.null_calls += 1
            basis = null_space_basis(v.drop_rows(drop), stats=counters.elim)
            if basis.shape[1] == 0:
                continue
            a[x] = basis
        order.append(x)
    if len(order) <= 1:
        return None
    v_new = _stack_null_space(order, a, b_prev, counters)
    if v_new.shape[1] == 0:
        return None
    basis = None
    if track:
        basis = _track(state, order, a, v_new)
    return LayerState(state.p + 1, order, a, v_new, basis)


def _track(state: LayerState, order: list, a: dict, v_new: RationalMatrix) -> list:
    """New cycle chains: sum over x of (previous basis · A_x · V_x) joined with x."""
    prev = state.tracked_basis
    deg = state.p + 1
    out = []
    cols = v_new.columns()
    for col in cols:
        acc: dict = {}
        for x in order:
            ax = a[x]
            vx = [col.get((x, k), 0) for k in range(ax.shape[1])]
            if not any(vx):
                continue
            w = [sum((val * vx[k] for k, val in row.items()), Fraction(0)) for row in ax._raw_rows()]
            gamma = linear_combination(prev, w, deg - 1)
            for path, c in gamma.terms.items():
                key = path + (x,)
                s = acc.get(key, 0) + c
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        out.append(Chain._raw(deg, acc))
    return out


def _run(g: StratifiedDigraph, track: bool):
    """Run the recursion; returns (profile of b_p, final state or None, counters)."""
    L = g.depth
    counters = _Counters()
    profile = [0] * (L + 1)
    if g.trivial_full_depth or len(g.layers[0]) <= 1:
        return profile, None, counters
    state = _initial_state(g.layers[0], track)
    profile[0] = state.b_p
    for p in range(1, L + 1):
        nxt = _advance(state, g.layers[p], g.graph, track, counters)
        if nxt is None:
            return profile, None, counters
        state = nxt
        profile[p] = state.b_p
    return profile, state, counters


def full_depth(g: StratifiedDigraph, track: bool = False) -> HomologyResult:
    """Full-depth Betti number (and optionally a basis of L-cycles)."""
    profile, state, counters = _run(g, track)
    L = g.depth
    basis = None
    if track:
        basis = state.tracked_basis if state is not None else []
    stats = {
        "elimination_ops": counters.elim.ops,
        "null_space_calls": counters.null_calls,
        "identity_shortcuts": counters.shortcut_identity,
        "stack_shortcuts": counters.shortcut_stack,
    }
    return HomologyResult(profile[L] if state is not None else 0, L, "recursive", basis, profile, stats)


def betti_profile(g: StratifiedDigraph) -> list[tuple[int, int]]:
    """``(p, b_p)`` where b_p is the dimension of the p-cycle space of the prefix graph."""
    profile, _, _ = _run(g, False)
    return list(enumerate(profile))


def maximal(g: Digraph, track: bool = False) -> HomologyResult:
    """Betti number in the dimension of the longest path of a DAG."""
    try:
        g_star = extract_longest_subgraph(g)
    except DepthZero:
        n = len(g.vertices)
        basis = None
        if track:
            vs = g.vertices
            basis = [Chain.path(v) - Chain.path(vs[0]) for v in vs[1:]]
        return HomologyResult(max(n - 1, 0), 0, "maximal", basis)
    total = 0
    basis = [] if track else None
    for comp in stratified_components(g_star):
        res = full_depth(trim_removable(comp), track)
        total += res.betti
        if track:
            basis.extend(res.basis)
    return HomologyResult(total, g_star.depth, "maximal", basis)
