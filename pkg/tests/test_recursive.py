import pytest

from conftest import dag_corpus, disjoint_union, stratified_corpus
from digraph_homology import general
from digraph_homology.chains import Chain, boundary, bottom, enumerate_allowed_paths, is_allowed, is_cycle
from digraph_homology.errors import CycleDetected
from digraph_homology.general import _cycle_space_dim
from digraph_homology.graph import Digraph, from_layers, longest_path_length, trim_removable
from digraph_homology.linalg import RationalMatrix, rank
from digraph_homology.recursive import betti_profile, full_depth, maximal
from digraph_homology.sampling import BASE_GRAPHS, fully_connected, rng_for, sample_batch


def _coefficient_rank(chains):
    keys = sorted({k for c in chains for k in c.terms})
    entries = {(k, j): v for j, c in enumerate(chains) for k, v in c.terms.items()}
    return rank(RationalMatrix.from_entries(keys, range(len(chains)), entries))


def test_single_source_is_trivial():
    g = from_layers([["a"], ["b", "c"], ["d", "e"]],
                    [("a", "b"), ("a", "c"), ("b", "d"), ("c", "e"), ("b", "e")])
    r = full_depth(g, track=True)
    assert r.betti == 0 and r.basis == []


@pytest.mark.parametrize("m,n", [(2, 2), (2, 5), (3, 4), (4, 4)])
def test_complete_bipartite(m, n):
    g = fully_connected([m, n])
    assert full_depth(g).betti == (m - 1) * (n - 1) == general.betti(g.graph, 1).betti


def test_k222_tracked(k222):
    r = full_depth(k222, track=True)
    assert r.betti == 1 == general.betti(k222.graph, 2).betti
    (w,) = r.basis
    assert len(w.terms) == 8
    assert {abs(v) for v in w.terms.values()} == {1}
    assert is_cycle(w, k222.graph)


def test_gamma2_full():
    assert full_depth(fully_connected(BASE_GRAPHS["gamma2"])).betti == 729


def test_depth_zero_full_depth():
    g = from_layers([["a", "b", "c"]], [])
    assert full_depth(g).betti == 2


def test_betti_profile_examples():
    assert betti_profile(fully_connected([3, 3, 3])) == [(0, 2), (1, 4), (2, 8)]
    assert betti_profile(fully_connected([1, 3, 3])) == [(0, 0), (1, 0), (2, 0)]
    assert betti_profile(fully_connected([10, 10])) == [(0, 9), (1, 81)]


def test_fully_connected_product_pattern():
    for sizes in ([2, 2], [3, 4], [2, 2, 2], [3, 3, 3], [2, 3, 2, 2]):
        g = fully_connected(sizes)
        want = 1
        for s in sizes:
            want *= s - 1
        assert full_depth(g).betti == want == general.betti(g.graph, g.depth).betti


def test_maximal_examples(chord):
    assert maximal(Digraph.from_edges([], "abcd")).betti == 3
    r = maximal(chord, track=True)
    assert r.betti == 0 and r.dimension == 2 and r.basis == []
    two = disjoint_union([fully_connected([2, 2]), fully_connected([2, 2])])
    assert maximal(two.graph).betti == 2


def test_maximal_depth_zero_basis():
    r = maximal(Digraph.from_edges([], "xyz"), track=True)
    assert r.basis == [Chain.path("y") - Chain.path("x"), Chain.path("z") - Chain.path("x")]


def test_maximal_rejects_cycles():
    with pytest.raises(CycleDetected):
        maximal(Digraph.from_edges([("a", "b"), ("b", "a")]))


def test_maximal_matches_oracle_on_dags():
    for g in dag_corpus(80, 91, max_vertices=9):
        ell = longest_path_length(g)
        assert maximal(g).betti == general.betti(g, ell).betti


def test_oracle_equivalence():
    corpus = stratified_corpus(200, 101)
    assert len(corpus) >= 200
    for g in corpus:
        assert full_depth(g).betti == general.betti(g.graph, g.depth).betti


def test_tracked_basis_soundness():
    for g in stratified_corpus(80, 111):
        plain = full_depth(g)
        r = full_depth(g, track=True)
        assert r.betti == plain.betti == len(r.basis)
        for w in r.basis:
            assert w.degree == g.depth
            assert is_cycle(w, g.graph)
            assert bottom(w) <= set(g.layers[-1])
        if r.basis:
            assert _coefficient_rank(r.basis) == r.betti


def test_early_termination_and_monotone_vanishing():
    seen = 0
    for g in stratified_corpus(150, 121):
        prof = dict(betti_profile(g))
        stopped = [p for p, b in prof.items() if b == 0]
        if not stopped:
            continue
        first = min(stopped)
        assert all(prof[q] == 0 for q in range(first, g.depth + 1))
        # the oracle agrees the top group vanishes, and so does each prefix past the stop
        assert general.betti(g.graph, g.depth).betti == 0
        for q in range(max(first, 1), g.depth + 1):
            prefix = g.restrict([v for layer in g.layers[: q + 1] for v in layer])
            prefix = from_layers(g.layers[: q + 1], prefix.edges)
            assert general.betti(prefix.graph, q).betti == 0
        seen += 1
    assert seen > 10


def test_prefix_profile_matches_oracle():
    for g in stratified_corpus(60, 131):
        for p, b in betti_profile(g):
            if p == 0:
                continue
            verts = [v for layer in g.layers[: p + 1] for v in layer]
            prefix = from_layers(g.layers[: p + 1], [e for e in g.edges if e[1] in set(verts)])
            assert b == general.betti(prefix.graph, p).betti


def test_trimming_invariance():
    for g in stratified_corpus(80, 141):
        assert full_depth(trim_removable(g)).betti == full_depth(g).betti


def test_cycle_space_decomposition():
    for g in stratified_corpus(60, 151):
        top = enumerate_allowed_paths(g.graph, g.depth)
        assert full_depth(g).betti == _cycle_space_dim(top, g.depth)


def test_tracked_and_untracked_agree_on_samples():
    for g in sample_batch([4, 6, 6], "0.5", 10, 7):
        assert full_depth(g, track=True).betti == full_depth(g).betti


def _work_bound(g, profile):
    return sum(len(g.layers[p - 1]) * len(g.layers[p]) * max(profile[p - 1], 1) ** 3
               for p in range(1, g.depth + 1))


def test_elimination_work_is_bounded():
    for name, sizes in BASE_GRAPHS.items():
        for rho in ("0.3", "0.5", "1"):
            for g in sample_batch(list(sizes), rho, 3, 17):
                r = full_depth(g)
                assert r.stats["elimination_ops"] <= _work_bound(g, r.profile), (name, rho)


def test_shortcut_counters_on_full_graph():
    r = full_depth(fully_connected([3, 3, 3]))
    assert r.stats["identity_shortcuts"] == 6
    assert r.stats["stack_shortcuts"] == 2
    assert r.stats["null_space_calls"] == 0


def test_tracked_chains_allowed_terms():
    for g in stratified_corpus(30, 161):
        for w in full_depth(g, track=True).basis:
            assert all(is_allowed(q, g.graph) for q in w.paths())
            assert not boundary(w)
