"""Full-depth persistence over a strict edge-weight threshold filtration.

``G_t`` keeps every vertex and the edges whose weight is strictly greater
than ``t``.  The family decreases in ``t`` and full-depth cycles of a
subgraph stay cycles of any supergraph, so the Betti curve is
non-increasing; it can only change at edge weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingWeights
from .graph import StratifiedDigraph, to_rational
from .recursive import full_depth


@dataclass(frozen=True)
class PersistenceCurve:
    points: tuple  # ((threshold, betti), ...) with strictly increasing thresholds
    baseline: tuple | None = None  # (threshold, betti) below every weight

    @property
    def thresholds(self) -> list:
        return [t for t, _ in self.points]

    @property
    def bettis(self) -> list:
        return [b for _, b in self.points]

    def to_csv(self, exact: bool = False, header: bool = True) -> str:
        lines = ["threshold,betti"] if header else []
        pts = ([self.baseline] if self.baseline is not None else []) + list(self.points)
        lines += [f"{format_rational(t, exact)},{b}" for t, b in pts]
        return "\n".join(lines) + "\n"

    def to_gnuplot(self) -> str:
        pts = ([self.baseline] if self.baseline is not None else []) + list(self.points)
        return "".join(f"{float(t):.17g} {b}\n" for t, b in pts)

    def to_json(self) -> str:
        obj = {
            "points": [[format_rational(t), b] for t, b in self.points],
            "baseline": None if self.baseline is None else [format_rational(self.baseline[0]), self.baseline[1]],
        }
        return json.dumps(obj, indent=2) + "\n"


def format_rational(x: Fraction, exact: bool = False) -> str:
    """Finite decimal when the denominator allows it, else ``num/den``."""
    x = Fraction(x)
    if exact:
        return f"{x.numerator}/{x.denominator}"
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(x.numerator)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _require_weights(g: StratifiedDigraph):
    if not g.graph.is_weighted:
        raise MissingWeights("every edge needs a weight for a threshold filtration")


def filtration_thresholds(g: StratifiedDigraph) -> list[Fraction]:
    _require_weights(g)
    return sorted(set(g.graph.weights.values()))


def subgraph_above(g: StratifiedDigraph, t) -> StratifiedDigraph:
    """Same vertices and layers; keeps edges with weight strictly above ``t``."""
    _require_weights(g)
    t = to_rational(t)
    w = g.graph.weights
    kept = [e for e in g.edges if w[e] > t]
    return g.with_graph(g.graph.edge_subgraph(kept, g.vertices))


def persistence_curve(g: StratifiedDigraph, include_baseline: bool = False) -> PersistenceCurve:
    """Full-depth Betti number of ``G_t`` at every distinct edge weight ``t``."""
    ts = filtration_thresholds(g)
    points = []
    dead = False
    for t in ts:
        if dead:
            points.append((t, 0))
            continue
        b = full_depth(subgraph_above(g, t)).betti
        points.append((t, b))
        dead = b == 0
    baseline = None
    if include_baseline:
        below = ts[0] - 1 if ts else Fraction(0)
        baseline = (below, full_depth(g).betti)
    return PersistenceCurve(tuple(points), baseline)
