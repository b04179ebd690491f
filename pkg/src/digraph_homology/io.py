"""Edge-list and layers text formats.

Edge list, one record per line, ``#`` starts a comment::

    u v            # unweighted edge
    u v 0.35       # weighted edge (decimal or num/den, read exactly)
    w              # isolated vertex

Either every edge carries a weight or none does.  Layers file: line ``i``
lists the members of layer ``i``; a line holding only ``-`` is an empty
layer (written for trimmed graphs whose full-depth homology is trivial).
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .errors import PathHomologyError
from .graph import Digraph, StratifiedDigraph, validate_stratified
from .persistence import format_rational

EMPTY_LAYER = "-"


class ParseError(PathHomologyError, ValueError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str, source: str = "<string>") -> Digraph:
    edges, weights, isolated = [], {}, []
    n_weighted = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            isolated.append(parts[0])
        elif len(parts) in (2, 3):
            e = (parts[0], parts[1])
            edges.append(e)
            if len(parts) == 3:
                try:
                    weights[e] = Fraction(parts[2])
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"{source}:{lineno}: bad weight {parts[2]!r}") from None
                n_weighted += 1
        else:
            raise ParseError(f"{source}:{lineno}: expected 'u v [weight]', got {raw.strip()!r}")
    if n_weighted and n_weighted != len(edges):
        raise ParseError(f"{source}: some edges have weights and some do not")
    try:
        return Digraph.from_edges(edges, isolated, weights if n_weighted else None)
    except PathHomologyError as exc:
        raise ParseError(f"{source}: {exc}") from None


def parse_layers(text: str) -> list[list[str]]:
    layers = []
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        layers.append([] if parts == [EMPTY_LAYER] else parts)
    return layers


def read_graph(path) -> Digraph:
    path = Path(path)
    return parse_edge_list(path.read_text(encoding="utf-8"), str(path))


def read_layers(path) -> list[list[str]]:
    return parse_layers(Path(path).read_text(encoding="utf-8"))


def read_stratified(edges_path, layers_path) -> StratifiedDigraph:
    """Read a graph and its layers; layer members without edges become isolated vertices."""
    g = read_graph(edges_path)
    layers = read_layers(layers_path)
    extra = {v for k in layers for v in k} - set(g.vertices)
    if extra:
        g = Digraph(g.vertices + tuple(extra), g.edges, g.weights)
    return validate_stratified(g, layers, allow_empty_layers=True)


def format_edge_list(g: Digraph) -> str:
    lines = []
    w = g.weights if g.is_weighted else None
    for u, v in g.edges:
        if w is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {format_rational(w[(u, v)])}")
    touched = {x for e in g.edges for x in e}
    lines.extend(str(v) for v in g.vertices if v not in touched)
    return "\n".join(lines) + ("\n" if lines else "")


def format_layers(g: StratifiedDigraph) -> str:
    return "".join((" ".join(map(str, k)) if k else EMPTY_LAYER) + "\n" for k in g.layers)


def write_atomic(path, text: str):
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_graph(path, g: Digraph):
    write_atomic(path, format_edge_list(g))


def write_layers(path, g: StratifiedDigraph):
    write_atomic(path, format_layers(g))
