import networkx as nx
import pytest

from conftest import all_allowed_paths, brute_g_star, brute_longest, dag_corpus, stratified_corpus
from digraph_homology import general
from digraph_homology.errors import (
    CycleDetected,
    DepthZero,
    DuplicateEdge,
    EdgeSkipsLayer,
    NotAPartition,
    NotStratifiable,
    SelfLoop,
)
from digraph_homology.graph import (
    Digraph,
    extract_longest_subgraph,
    from_layers,
    infer_layers,
    layer_profile,
    longest_path_length,
    stratified_components,
    topological_order,
    trim_connected_count,
    trim_removable,
    validate_stratified,
    weakly_connected_components,
)
from digraph_homology.recursive import full_depth
from digraph_homology.sampling import fully_connected, rng_for, sample_subgraph


def test_minimal_stratified():
    g = validate_stratified(Digraph.from_edges([("a", "b")]), [["a"], ["b"]])
    assert g.depth == 1
    assert g.layer_of == {"a": 0, "b": 1}


def test_edge_skips_layer():
    g = Digraph.from_edges([("a", "b"), ("a", "c")])
    with pytest.raises(EdgeSkipsLayer, match="'a', 'c'"):
        validate_stratified(g, [["a"], ["b"], ["c"]])


def test_gamma1_valid():
    g = fully_connected([10, 10])
    assert g.depth == 1 and len(g.edges) == 100


@pytest.mark.parametrize(
    "layers",
    [[["a"], ["a", "b"]], [["a"]], [["a"], [], ["b"]], [["a"], ["b", "z"]]],
)
def test_not_a_partition(layers):
    with pytest.raises(NotAPartition):
        validate_stratified(Digraph.from_edges([("a", "b")]), layers)


def test_construction_errors():
    with pytest.raises(SelfLoop):
        Digraph.from_edges([("a", "a")])
    with pytest.raises(DuplicateEdge):
        Digraph.from_edges([("a", "b"), ("a", "b")])


def test_topological_order():
    assert topological_order(Digraph.from_edges([("a", "b"), ("b", "c")])) == ["a", "b", "c"]
    with pytest.raises(CycleDetected):
        topological_order(Digraph.from_edges([("a", "b"), ("b", "a")]))


def test_topological_order_diamond(diamond):
    order = topological_order(diamond)
    assert order == ["a", "b", "c", "d"]
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[u] < pos[v] for u, v in diamond.edges)


def test_topological_order_is_valid_on_random_dags():
    for g in dag_corpus(50, 5):
        order = topological_order(g)
        pos = {v: i for i, v in enumerate(order)}
        assert sorted(order) == list(g.vertices)
        assert all(pos[u] < pos[v] for u, v in g.edges)


def test_components_small(diamond):
    assert len(weakly_connected_components(Digraph.from_edges([("a", "b"), ("c", "d")]))) == 2
    assert len(weakly_connected_components(diamond)) == 1


def test_components_match_networkx_on_gamma2_sample():
    g = sample_subgraph(fully_connected([10, 10, 10]), "0.1", rng_for(0))
    comps = weakly_connected_components(g.graph)
    ref = nx.DiGraph()
    ref.add_nodes_from(g.vertices)
    ref.add_edges_from(g.edges)
    expected = sorted(sorted(c) for c in nx.weakly_connected_components(ref))
    assert [list(c.vertices) for c in comps] == expected
    assert sorted(e for c in comps for e in c.edges) == list(g.edges)


def test_longest_path_length_examples(chord):
    assert longest_path_length(Digraph.from_edges([], ["x", "y"])) == 0
    assert longest_path_length(chord) == 2


def test_longest_path_length_matches_enumeration():
    for g in dag_corpus(100, 1, max_vertices=10):
        assert longest_path_length(g) == brute_longest(g)


def test_layer_profile_invariant():
    for g in dag_corpus(50, 2):
        prof = layer_profile(g)
        for u, v in g.edges:
            assert prof.top[v] >= prof.top[u] + 1
            assert prof.bottom[u] >= prof.bottom[v] + 1


def test_extract_chord(chord):
    g = extract_longest_subgraph(chord)
    assert g.edges == (("a", "b"), ("b", "c"))
    assert g.layers == (("a",), ("b",), ("c",))


def test_extract_gamma1_and_star():
    base = fully_connected([10, 10])
    g = extract_longest_subgraph(base.graph)
    assert g.graph == base.graph and g.layers == base.layers
    star = extract_longest_subgraph(Digraph.from_edges([("a", "b"), ("a", "c"), ("a", "d")]))
    assert star.layers == (("a",), ("b", "c", "d"))
    assert len(star.edges) == 3


def test_extract_depth_zero():
    with pytest.raises(DepthZero):
        extract_longest_subgraph(Digraph.from_edges([], ["a", "b"]))


def test_extract_matches_brute_force():
    for g in dag_corpus(60, 8):
        if brute_longest(g) == 0:
            continue
        star = extract_longest_subgraph(g)
        verts, edges, layers = brute_g_star(g)
        assert set(star.vertices) == verts
        assert set(star.edges) == edges
        assert [set(k) for k in star.layers] == layers
        # layers partition V_* and every edge steps one layer
        validate_stratified(star.graph, star.layers)


def test_infer_layers():
    assert infer_layers(Digraph.from_edges([("a", "b"), ("b", "c")])).layers == (("a",), ("b",), ("c",))
    d = infer_layers(Digraph.from_edges([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]))
    assert d.layers == (("a",), ("b", "c"), ("d",))
    with pytest.raises(NotStratifiable):
        infer_layers(Digraph.from_edges([("a", "b"), ("b", "c"), ("a", "c")]))
    with pytest.raises(CycleDetected):
        infer_layers(Digraph.from_edges([("a", "b"), ("b", "a")]))


def test_trim_chain_becomes_trivial():
    g = from_layers([["a"], ["b"], ["c"]], [("a", "b"), ("b", "c")])
    t = trim_removable(g)
    assert t.trivial_full_depth
    assert t.vertices == ()
    assert t.depth == 2


def test_trim_keeps_complete_bipartite():
    g = fully_connected([2, 2])
    assert trim_removable(g) == g
    assert trim_connected_count(g) == g


def test_trim_connected_count_example():
    # "m" has a single successor, so both trims drop it.
    layers = [["a", "b"], ["m", "n", "o"], ["x", "y"]]
    edges = [("a", "m"), ("b", "m"), ("a", "n"), ("b", "n"), ("a", "o"), ("b", "o"),
             ("n", "x"), ("n", "y"), ("o", "x"), ("o", "y"), ("m", "y")]
    g = from_layers(layers, edges)
    assert "m" not in trim_removable(g).vertices
    t = trim_connected_count(g)
    assert "m" not in t.vertices
    assert full_depth(t).betti == full_depth(g).betti == general.betti(g.graph, 2).betti


def test_connected_count_trim_is_at_least_as_strong():
    for g in stratified_corpus(40, 17):
        assert set(trim_connected_count(g).vertices) <= set(trim_removable(g).vertices)


def test_trim_connected_gamma1_unchanged():
    g = fully_connected([10, 10])
    assert trim_connected_count(g) == g


@pytest.mark.parametrize("trim", [trim_removable, trim_connected_count])
def test_trimming_preserves_full_depth_betti(trim):
    for g in stratified_corpus(60, 21):
        t = trim(g)
        assert full_depth(t).betti == full_depth(g).betti
        assert t.trivial_full_depth or full_depth(t).betti == general.betti(t.graph, t.depth).betti


def test_trimming_gamma_samples():
    for rho in ("0.3", "0.5", "0.7"):
        g = sample_subgraph(fully_connected([10, 10, 10]), rho, rng_for(4))
        assert full_depth(trim_removable(g)).betti == full_depth(g).betti
        g3 = sample_subgraph(fully_connected([4, 10, 10, 10]), rho, rng_for(5))
        assert full_depth(trim_connected_count(g3)).betti == full_depth(g3).betti


def test_component_additivity():
    for g in stratified_corpus(40, 31):
        parts = stratified_components(g)
        assert sum(full_depth(c).betti for c in parts) == full_depth(g).betti


def test_restrict_keeps_layer_indices():
    g = fully_connected([2, 2, 2])
    sub = g.restrict(g.layers[0] + g.layers[1])
    assert sub.depth == 2 and sub.trivial_full_depth


def test_all_paths_oracle_sanity(diamond):
    paths = all_allowed_paths(diamond)
    assert ("a", "b", "d") in paths and ("a", "c", "d") in paths
    assert len(paths) == 4 + 4 + 2


def test_longest_subgraph_keeps_top_homology():
    for g in dag_corpus(60, 13, max_vertices=9):
        ell = longest_path_length(g)
        if ell == 0:
            continue
        star = extract_longest_subgraph(g)
        assert general.betti(g, ell).betti == general.betti(star.graph, ell).betti
