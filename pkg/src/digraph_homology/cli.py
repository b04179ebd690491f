"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 dimension guard,
5 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import general, io, recursive
from .errors import BadRho, DimensionGuard, GraphError, MissingWeights
from .graph import (
    StratifiedDigraph,
    extract_longest_subgraph,
    infer_layers,
    stratified_components,
    trim_connected_count,
    trim_removable,
    weakly_connected_components,
)
from .persistence import persistence_curve
from .sampling import BASE_GRAPHS, RNG_NAME, assign_weights, fully_connected, parse_rho, rng_for, sample_subgraph

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_GUARD, EXIT_MISMATCH = 0, 2, 3, 4, 5


# Engines used by ``compare``; replaced in tests to check the harness itself.
_recursive_engine = recursive.full_depth
_general_engine = general.betti


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        io.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _load(path: str, layers: str | None, need_layers: bool):
    """Graph from ``path``; stratified when layers are given or needed (then inferred)."""
    if layers:
        return io.read_stratified(path, layers)
    g = io.read_graph(path)
    return infer_layers(g) if need_layers else g


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


# -- betti --------------------------------------------------------------------


def _betti_one(task):
    path, layers, dim, track, guard, timings = task
    t0 = time.perf_counter()
    if dim == "full":
        g = _load(path, layers, True)
        res = recursive.full_depth(g, track=track)
    elif dim == "max":
        g = io.read_stratified(path, layers).graph if layers else io.read_graph(path)
        res = recursive.maximal(g, track=track)
    else:
        g = _load(path, layers, False)
        g = g.graph if isinstance(g, StratifiedDigraph) else g
        res = general.betti(g, int(dim), guard=guard)
        if track:
            res.basis = None
    row = {"input": path, **res.to_json(with_basis=track)}
    if timings:
        row["elapsed_ms"] = _ms(t0)
    return row


def cmd_betti(args) -> int:
    tasks = [(p, args.layers, args.dim, args.track, args.guard, not args.no_timings) for p in args.inputs]
    results = _map(_betti_one, tasks, args.jobs)
    config = {"dim": args.dim, "track": args.track, "layers": args.layers, "guard": args.guard}
    _emit(_dump({"command": "betti", "config": config, "results": results}), args.output)
    return EXIT_OK


# -- sample -------------------------------------------------------------------


def _sizes(args) -> tuple:
    if args.base:
        return BASE_GRAPHS[args.base]
    if not args.sizes:
        raise GraphError("give --sizes or --base")
    try:
        return tuple(int(s) for s in args.sizes.split(","))
    except ValueError:
        raise io.ParseError(f"bad --sizes {args.sizes!r}") from None


def _sample_one(task):
    sizes, rho, seed, index, weights = task
    base = fully_connected(sizes)
    rng = rng_for(seed, index)
    g = sample_subgraph(base, rho, rng)
    if weights != "none":
        g = assign_weights(g, rng, weights)
    return g


def cmd_sample(args) -> int:
    sizes = _sizes(args)
    rho = parse_rho(args.rho)
    out = Path(args.out)
    tasks = [(sizes, rho, args.seed, i, args.weights) for i in range(args.count)]
    graphs = _map(_sample_one, tasks, args.jobs)
    io.write_layers(out / "layers.txt", graphs[0] if graphs else fully_connected(sizes))
    files = []
    for i, g in enumerate(graphs):
        name = f"sample_{i:04d}.edges"
        io.write_graph(out / name, g.graph)
        per_pair = [sum(1 for e in g.edges if e[1] in set(g.layers[k + 1])) for k in range(g.depth)]
        files.append({"file": name, "edges": len(g.edges), "edges_per_pair": per_pair})
    summary = {
        "command": "sample",
        "config": {
            "sizes": list(sizes),
            "rho": f"{rho.numerator}/{rho.denominator}",
            "count": args.count,
            "seed": args.seed,
            "rng": RNG_NAME,
            "weights": args.weights,
        },
        "results": files,
    }
    text = _dump(summary)
    io.write_atomic(out / "summary.json", text)
    sys.stdout.write(text)
    return EXIT_OK


# -- compare ------------------------------------------------------------------


def _compare_one(task):
    label, g, guard, timings = task
    t0 = time.perf_counter()
    rb = _recursive_engine(g).betti
    t1 = time.perf_counter()
    gb = _general_engine(g.graph, g.depth, guard=guard).betti
    t2 = time.perf_counter()
    row = {"input": label, "dimension": g.depth, "recursive": rb, "general": gb, "agree": rb == gb}
    if timings:
        row["elapsed_ms"] = {"recursive": round((t1 - t0) * 1000, 3), "general": round((t2 - t1) * 1000, 3)}
    return row


def cmd_compare(args) -> int:
    timings = not args.no_timings
    if args.inputs:
        tasks = [(p, _load(p, args.layers, True), args.guard, timings) for p in args.inputs]
        config = {"layers": args.layers, "guard": args.guard}
    else:
        sizes = _sizes(args)
        rho = parse_rho(args.rho)
        base = fully_connected(sizes)
        tasks = [
            (f"sample_{i:04d}", sample_subgraph(base, rho, rng_for(args.seed, i)), args.guard, timings)
            for i in range(args.count)
        ]
        config = {"sizes": list(sizes), "rho": f"{rho.numerator}/{rho.denominator}", "count": args.count,
                  "seed": args.seed, "rng": RNG_NAME, "guard": args.guard}
    results = _map(_compare_one, tasks, args.jobs)
    all_agree = all(r["agree"] for r in results)
    report = {"command": "compare", "config": config, "all_agree": all_agree, "results": results}
    if timings and results:
        tr = sum(r["elapsed_ms"]["recursive"] for r in results)
        tg = sum(r["elapsed_ms"]["general"] for r in results)
        report["total_ms"] = {"recursive": round(tr, 3), "general": round(tg, 3)}
    _emit(_dump(report), args.output)
    return EXIT_OK if all_agree else EXIT_MISMATCH


# -- persist ------------------------------------------------------------------


def cmd_persist(args) -> int:
    g = _load(args.input, args.layers, True)
    curve = persistence_curve(g, include_baseline=args.baseline)
    if args.format == "csv":
        text = curve.to_csv(exact=args.exact)
    elif args.format == "json":
        text = curve.to_json()
    else:
        text = curve.to_gnuplot()
    _emit(text, args.output)
    return EXIT_OK


# -- preprocess ---------------------------------------------------------------


def cmd_preprocess(args) -> int:
    out = Path(args.out)
    stem = Path(args.input).stem
    op = args.op
    written = []

    def save(name, g):
        io.write_graph(out / f"{name}.edges", g.graph if isinstance(g, StratifiedDigraph) else g)
        entry = {"edges_file": f"{name}.edges"}
        if isinstance(g, StratifiedDigraph):
            io.write_layers(out / f"{name}.layers", g)
            entry["layers_file"] = f"{name}.layers"
            entry["depth"] = g.depth
            entry["trivial_full_depth"] = g.trivial_full_depth
        entry["vertices"] = len(g.vertices)
        entry["edges"] = len(g.edges)
        written.append(entry)

    if op == "longest":
        save(f"{stem}.longest", extract_longest_subgraph(_load(args.input, None, False)))
    elif op in ("trim", "trim-connected"):
        g = _load(args.input, args.layers, True)
        trimmed = trim_removable(g) if op == "trim" else trim_connected_count(g)
        save(f"{stem}.trimmed", trimmed)
    elif op == "components":
        g = _load(args.input, args.layers, False)
        comps = stratified_components(g) if isinstance(g, StratifiedDigraph) else weakly_connected_components(g)
        for i, c in enumerate(comps):
            save(f"{stem}.c{i:03d}", c)
    elif op == "infer-layers":
        save(f"{stem}.layered", infer_layers(io.read_graph(args.input)))
    report = {"command": "preprocess", "config": {"op": op, "layers": args.layers}, "results": written}
    sys.stdout.write(_dump(report))
    return EXIT_OK


# -- plumbing -----------------------------------------------------------------


def _map(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digraph-homology", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, timings=True):
        p.add_argument("--jobs", type=int, default=1, help="worker processes for batch work")
        p.add_argument("--guard", type=int, default=general.DEFAULT_GUARD,
                       help="refuse the general algorithm above this many allowed paths")
        if timings:
            p.add_argument("--no-timings", action="store_true", help="omit elapsed times (byte-stable output)")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    def sampling_args(p, required):
        p.add_argument("--sizes", help="comma-separated layer sizes of the fully connected base")
        p.add_argument("--base", choices=sorted(BASE_GRAPHS), help="named base graph")
        p.add_argument("--rho", default=None if required else "1", required=required,
                       help="fraction of edges kept per adjacent layer pair, in (0, 1]")
        p.add_argument("--count", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("betti", help="Betti number of one or more graphs")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--layers", help="layers file (default: infer from longest paths)")
    p.add_argument("--dim", default="full", help="'full', 'max', or an explicit dimension p")
    p.add_argument("--track", action="store_true", help="include a basis of cycles")
    common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("sample", help="sample subgraphs of a fully connected base graph")
    sampling_args(p, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--weights", choices=["none", "uniform", "beta"], default="none")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("compare", help="cross-check the recursion against the general algorithm")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--layers")
    sampling_args(p, required=False)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("persist", help="full-depth Betti curve over edge-weight thresholds")
    p.add_argument("input")
    p.add_argument("--layers")
    p.add_argument("--format", choices=["csv", "json", "gnuplot"], default="csv")
    p.add_argument("--baseline", action="store_true", help="add a point below the smallest weight")
    p.add_argument("--exact", action="store_true", help="always print thresholds as num/den")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_persist)

    p = sub.add_parser("preprocess", help="longest-path subgraph, trimming, components, layer inference")
    p.add_argument("input")
    p.add_argument("--layers")
    p.add_argument("--op", required=True, choices=["longest", "trim", "trim-connected", "components", "infer-layers"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preprocess)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "betti" and args.dim not in ("full", "max"):
        try:
            if int(args.dim) < 0:
                raise ValueError
        except ValueError:
            parser.error("--dim must be 'full', 'max' or a non-negative integer")
    try:
        return args.func(args)
    except (io.ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionGuard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphError, MissingWeights, BadRho) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
