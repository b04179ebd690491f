"""Formal linear combinations of elementary paths.

An elementary p-path is a tuple of p+1 vertices.  The empty tuple ``()`` is
the unit of the degree -1 space (the scalars), so joining paths is plain
tuple concatenation and joining with the unit is scalar multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DisallowedTerm
from .graph import Digraph

UNIT = ()


class Chain:
    """Sparse rational combination of elementary paths of a single degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple, object] | None = None):
        self.degree = degree
        d: dict[tuple, Fraction] = {}
        if terms:
            if degree < -1:
                raise ValueError("chains below degree -1 are always zero")
            for path, c in terms.items():
                path = tuple(path)
                if len(path) != degree + 1:
                    raise ValueError(f"path {path!r} does not have degree {degree}")
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    d[path] = d.get(path, 0) + c
                    if not d[path]:
                        del d[path]
        self.terms = d

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> Chain:
        c = cls.__new__(cls)
        c.degree = degree
        c.terms = terms
        return c

    @classmethod
    def path(cls, *vertices, coeff=1) -> Chain:
        """The elementary path through ``vertices`` (none gives the scalar unit)."""
        return cls(len(vertices) - 1, {tuple(vertices): coeff})

    @classmethod
    def scalar(cls, c) -> Chain:
        return cls(-1, {UNIT: c})

    @classmethod
    def zero(cls, degree: int) -> Chain:
        return cls._raw(max(degree, -2), {})

    # -- algebra ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: Chain):
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for k, v in other.terms.items():
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                del d[k]
        return Chain._raw(self.degree, d)

    def __neg__(self) -> Chain:
        return Chain._raw(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> Chain:
        if isinstance(c, Chain):
            return NotImplemented
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not c:
            return Chain.zero(self.degree)
        return Chain._raw(self.degree, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def coefficient(self, path) -> Fraction:
        return self.terms.get(tuple(path), Fraction(0))

    def items(self) -> list[tuple[tuple, Fraction]]:
        """Terms in lexicographic path order."""
        return sorted(self.terms.items())

    def paths(self) -> list[tuple]:
        return sorted(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"Chain({self.degree}, 0)"
        parts = []
        for path, c in self.items():
            s = "(" + ",".join(map(str, path)) + ")"
            parts.append(f"{c}*{s}" if c != 1 else s)
        return f"Chain({self.degree}, " + " + ".join(parts) + ")"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"path": list(p), "coeff": f"{c.numerator}/{c.denominator}"} for p, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> Chain:
        return cls(int(obj["degree"]), {tuple(t["path"]): Fraction(t["coeff"]) for t in obj["terms"]})


def linear_combination(chains: Iterable[Chain], coeffs: Iterable, degree: int) -> Chain:
    """``sum c_i * chain_i`` accumulated in one dict."""
    acc: dict[tuple, Fraction] = {}
    for ch, c in zip(chains, coeffs):
        if not c:
            continue
        for k, v in ch.terms.items():
            s = acc.get(k, 0) + c * v
            if s:
                acc[k] = s
            else:
                del acc[k]
    return Chain._raw(degree, acc)


def boundary(c: Chain) -> Chain:
    """Alternating face sum; a vertex maps to the scalar unit."""
    p = c.degree
    if p <= -1 or not c.terms:
        return Chain.zero(p - 1)
    if p == 0:
        return Chain.scalar(sum(c.terms.values()))
    acc: dict[tuple, Fraction] = {}
    for path, v in c.terms.items():
        for i in range(p + 1):
            face = path[:i] + path[i + 1:]
            s = acc.get(face, 0) + (v if i % 2 == 0 else -v)
            if s:
                acc[face] = s
            else:
                del acc[face]
    return Chain._raw(p - 1, acc)


def join(c1: Chain, c2: Chain) -> Chain:
    """Bilinear concatenation of paths; degree is ``p + q + 1``."""
    degree = c1.degree + c2.degree + 1
    if c1.degree < -1 or c2.degree < -1 or not c1.terms or not c2.terms:
        return Chain.zero(degree)
    acc: dict[tuple, Fraction] = {}
    for a, x in c1.terms.items():
        for b, y in c2.terms.items():
            k = a + b
            s = acc.get(k, 0) + x * y
            if s:
                acc[k] = s
            else:
                del acc[k]
    return Chain._raw(degree, acc)


def is_allowed(path: tuple, g: Digraph) -> bool:
    es = g.edge_set
    return all((path[i], path[i + 1]) in es for i in range(len(path) - 1))


def enumerate_allowed_paths(g: Digraph, p: int) -> list[tuple]:
    """Allowed elementary p-paths in lexicographic order, built by extending (p-1)-paths."""
    if p < 0:
        return []
    paths = [(v,) for v in g.vertices]
    succ = g.succ
    for _ in range(p):
        paths = [path + (w,) for path in paths for w in succ[path[-1]]]
        if not paths:
            break
    return paths


def count_allowed_paths(g: Digraph, p: int) -> int:
    """Number of allowed elementary p-paths, by walk counting."""
    if p < 0:
        return 0
    counts = {v: 1 for v in g.vertices}
    for _ in range(p):
        nxt = {v: 0 for v in g.vertices}
        for u, v in g.edges:
            nxt[v] += counts[u]
        counts = nxt
    return sum(counts.values())


def split_allowed(c: Chain, g: Digraph) -> tuple[Chain, Chain]:
    """Split ``c`` into its allowed and disallowed parts."""
    if c.degree < 0:
        return c, Chain.zero(c.degree)
    a, d = {}, {}
    for path, v in c.terms.items():
        (a if is_allowed(path, g) else d)[path] = v
    return Chain._raw(c.degree, a), Chain._raw(c.degree, d)


def cross_section(c: Chain, s: int) -> set:
    if s < 0 or s > c.degree:
        return set()
    return {path[s] for path in c.terms}


def top(c: Chain) -> set:
    return cross_section(c, 0)


def bottom(c: Chain) -> set:
    return cross_section(c, c.degree)


def support(c: Chain, g: Digraph | None = None) -> Digraph:
    """Subgraph of vertices and consecutive pairs appearing in the terms.

    When ``g`` is given, every term must be an allowed path of ``g``.
    """
    verts, edges = set(), set()
    for path in c.terms:
        if g is not None and not is_allowed(path, g):
            raise DisallowedTerm(f"term {path!r} is not an allowed path")
        verts.update(path)
        edges.update(zip(path, path[1:]))
    if g is not None:
        return g.edge_subgraph(edges, verts)
    return Digraph.from_edges(edges, verts)


def is_cycle(c: Chain, g: Digraph) -> bool:
    """True iff every term is allowed in ``g`` and the boundary vanishes."""
    if any(not is_allowed(path, g) for path in c.terms):
        return False
    return not boundary(c)
