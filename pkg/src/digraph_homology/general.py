"""Path homology of an arbitrary digraph by the general matrix algorithm.

For each dimension p the allowed p-paths are enumerated, the boundary matrix
is split into disallowed rows (D_*) and allowed rows (E), a basis N of the
∂-invariant paths is the null space of D_*, and the induced boundary B solves
``N_{p-1} @ B_p = E_p @ N_p``.  Then ``beta_p = dim null(B_p) - rank(B_{p+1})``.

This is slow (the number of allowed paths grows geometrically with p) but
makes no structural assumption, so it serves as the oracle for the layered
recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import Chain, count_allowed_paths, enumerate_allowed_paths
from .errors import DimensionGuard
from .graph import Digraph, StratifiedDigraph
from .linalg import RationalMatrix, null_space_basis, rank, solve_all

DEFAULT_GUARD = 2_000_000


@dataclass
class HomologyResult:
    betti: int
    dimension: int
    algorithm: str
    basis: list | None = None
    profile: list | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self, with_basis: bool = True) -> dict:
        out = {"betti": self.betti, "dimension": self.dimension, "algorithm": self.algorithm}
        if with_basis and self.basis is not None:
            out["basis"] = [c.to_json() for c in self.basis]
        return out


@dataclass
class BoundaryBlocks:
    """Boundary matrix of allowed p-paths, split by allowed/disallowed rows.

    ``full`` has rows for every (p-1)-path hit by some boundary.
    ``disallowed`` keeps the rows that are not allowed paths (D_*), and
    ``allowed`` has one row per allowed (p-1)-path, zero rows included (E).
    """

    p: int
    full: RationalMatrix
    disallowed: RationalMatrix
    allowed: RationalMatrix


@dataclass
class OmegaBasis:
    p: int
    n_matrix: RationalMatrix
    basis_chains: list | None = None

    @property
    def dim(self) -> int:
        return self.n_matrix.shape[1]


def _guard(g: Digraph, p: int, limit: int | None):
    if limit is not None and p >= 0:
        n = count_allowed_paths(g, p)
        if n > limit:
            raise DimensionGuard(f"{n} allowed {p}-paths exceed the limit {limit}")


def boundary_matrix(g: Digraph, p: int, paths=None, lower=None) -> BoundaryBlocks:
    """Boundary matrix of dimension ``p >= 1`` with sparse row support."""
    if p < 1:
        raise ValueError("boundary_matrix needs p >= 1")
    paths = enumerate_allowed_paths(g, p) if paths is None else paths
    lower = enumerate_allowed_paths(g, p - 1) if lower is None else lower
    cols: list[dict] = []
    hit: set = set()
    for path in paths:
        col: dict = {}
        for i in range(p + 1):
            face = path[:i] + path[i + 1:]
            col[face] = col.get(face, 0) + (1 if i % 2 == 0 else -1)
        col = {k: v for k, v in col.items() if v}
        hit.update(col)
        cols.append(col)
    lower_set = set(lower)
    rows = sorted(hit)
    full = RationalMatrix.from_columns(rows, cols, col_index=paths)
    bad = [r for r in rows if r not in lower_set]
    disallowed = full.select_rows(bad)
    good_cols = [{k: v for k, v in c.items() if k in lower_set} for c in cols]
    allowed = RationalMatrix.from_columns(lower, good_cols, col_index=paths)
    return BoundaryBlocks(p, full, disallowed, allowed)


def omega_basis(g: Digraph, p: int, track: bool = False, guard: int | None = DEFAULT_GUARD,
                _blocks: BoundaryBlocks | None = None) -> OmegaBasis:
    """Basis of the ∂-invariant p-paths as columns over the allowed p-paths."""
    _guard(g, p, guard)
    if p == 0:
        n = RationalMatrix.identity([(v,) for v in g.vertices]).relabel(col_index=range(len(g.vertices)))
    else:
        blocks = boundary_matrix(g, p) if _blocks is None else _blocks
        n = null_space_basis(blocks.disallowed)
    chains = None
    if track:
        chains = [Chain(p, col) for col in n.columns()]
    return OmegaBasis(p, n, chains)


def _omega_and_blocks(g, p, guard):
    if p == 0:
        return omega_basis(g, 0, guard=guard), None
    blocks = boundary_matrix(g, p)
    return omega_basis(g, p, guard=guard, _blocks=blocks), blocks


def induced_boundary(n_lower: OmegaBasis, n_upper: OmegaBasis, blocks: BoundaryBlocks | None) -> RationalMatrix:
    """Matrix of ∂ from Ω_p to Ω_{p-1} in the given bases."""
    if n_upper.p == 0:
        # ∂ sends every vertex to the scalar 1.
        cols = n_upper.n_matrix.col_index
        return RationalMatrix(["unit"], cols, [{j: Fraction(1) for j in range(len(cols))}])
    rhs = blocks.allowed @ n_upper.n_matrix
    return solve_all(n_lower.n_matrix, rhs)


def boundary_chain(g: Digraph, top: int | None = None, guard: int | None = DEFAULT_GUARD) -> list[RationalMatrix]:
    """The induced boundary matrices B_0..B_top (B_0 is the all-ones row)."""
    if top is None:
        top = 0
        while count_allowed_paths(g, top + 1) and top < len(g.vertices):
            top += 1
    out = []
    prev = None
    for p in range(top + 1):
        cur, blocks = _omega_and_blocks(g, p, guard)
        out.append(induced_boundary(prev, cur, blocks))
        prev = cur
    return out


def betti(g: Digraph, p: int, guard: int | None = DEFAULT_GUARD) -> HomologyResult:
    """Reduced Betti number ``beta_p`` of any digraph."""
    if p < 0:
        raise ValueError("p must be >= 0")
    for q in (p - 1, p, p + 1):
        _guard(g, q, guard)
    if count_allowed_paths(g, p) == 0:
        return HomologyResult(0, p, "general")
    lower = _omega_and_blocks(g, p - 1, None)[0] if p >= 1 else None
    cur, blocks = _omega_and_blocks(g, p, None)
    b_p = induced_boundary(lower, cur, blocks)
    kernel = cur.dim - rank(b_p)
    boundaries = 0
    if count_allowed_paths(g, p + 1):
        up, up_blocks = _omega_and_blocks(g, p + 1, None)
        if up.dim:
            boundaries = rank(induced_boundary(cur, up, up_blocks))
    stats = {"omega_dims": {p: cur.dim}}
    return HomologyResult(kernel - boundaries, p, "general", stats=stats)


def _cycle_space_dim(paths: list[tuple], degree: int) -> int:
    """Dimension of the kernel of ∂ restricted to the span of ``paths``."""
    if not paths:
        return 0
    if degree == 0:
        return len(paths) - 1
    cols = []
    for path in paths:
        col: dict = {}
        for i in range(degree + 1):
            face = path[:i] + path[i + 1:]
            col[face] = col.get(face, 0) + (1 if i % 2 == 0 else -1)
        cols.append({k: v for k, v in col.items() if v})
    rows = sorted({k for c in cols for k in c})
    m = RationalMatrix.from_columns(rows, cols)
    return len(paths) - rank(m)


def omega_structure_check(g: StratifiedDigraph, p: int, guard: int | None = DEFAULT_GUARD) -> bool:
    """Check ``dim Ω_p`` against the sum over endpoint pairs of inner cycle spaces.

    For each pair (x in K_i, y in K_{i+p}) the inner space is the (p-2)-cycles
    γ such that the path x γ y is allowed.  Test utility for small graphs.
    """
    if not 2 <= p <= g.depth:
        raise ValueError("need 2 <= p <= depth")
    gr = g.graph
    lhs = omega_basis(gr, p, guard=guard).dim
    inner = enumerate_allowed_paths(gr, p - 2)
    by_ends: dict = {}
    for path in inner:
        by_ends.setdefault((path[0], path[-1]), []).append(path)
    rhs = 0
    for i in range(g.depth - p + 1):
        for x in g.layers[i]:
            sx = set(gr.succ[x])
            for y in g.layers[i + p]:
                py = set(gr.pred[y])
                paths = [q for (a, b), qs in by_ends.items() if a in sx and b in py for q in qs]
                paths.sort()
                rhs += _cycle_space_dim(paths, p - 2)
    return lhs == rhs
