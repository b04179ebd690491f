r"""
Betti curve of a weighted stratified digraph
--------------------------------------------
Keep the edges whose weight is strictly above a threshold ``t``. Raising
``t`` only removes edges, and a top-dimensional cycle of a subgraph stays a
cycle of the larger graph, so the full-depth Betti number can only fall.
"""
from digraph_homology import persistence_curve
from digraph_homology.persistence import subgraph_above
from digraph_homology.sampling import assign_weights, fully_connected, rng_for

g = assign_weights(fully_connected([2, 3, 3, 2]), rng_for(3), "uniform", digits=2)
curve = persistence_curve(g, include_baseline=True)
print(curve.to_csv())

#%%
# Each point is the Betti number of one threshold subgraph.
t, b = curve.points[2]
print(t, b, len(subgraph_above(g, t).edges))

#%%
# ``to_gnuplot`` writes two plain columns for any plotting tool.
print(curve.to_gnuplot()[:80])
