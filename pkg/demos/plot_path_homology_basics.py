r"""
Path homology of small digraphs
-------------------------------
Chains are sparse rational combinations of vertex sequences. The boundary
drops one vertex at a time with alternating signs, and a vertex maps to the
scalar unit, so the homology computed here is reduced.
"""
from digraph_homology import Chain, Digraph, boundary, general, is_cycle

square = Digraph.from_edges([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
c = Chain.path("a", "b", "d") - Chain.path("a", "c", "d")
print(boundary(c))

#%%
# The two faces through the missing edge (a,d) cancel, so ``c`` is
# boundary-invariant. It is not closed, though: its boundary is the loop
# around the square, and that loop is a 1-cycle.
print(is_cycle(c, square), is_cycle(boundary(c), square))

#%%
# The general algorithm works on any digraph. The square's 1-cycle is the
# boundary of ``c``, so the first Betti number vanishes.
for p in range(3):
    print(p, general.betti(square, p).betti)

#%%
# Two sources joined to two sinks form a circle with no square inside it,
# since neither source reaches the sinks through a middle vertex.
k22 = Digraph.from_edges([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
print(general.betti(k22, 1).betti)

#%%
# A directed triangle is also a circle.
tri = Digraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")])
print(general.betti(tri, 1).betti)
