# %% [markdown]
# Unshuffles and b/w trees
#
# Two cell structures on the same space. Milgram's cells are unshuffles of
# [n]; cactus cells are planar b/w trees. This walk-through builds both for
# small n and compares their counts.

# %%
from permop.seqcomb import NrSequence, Unshuffle, build_J_n, build_J_sigma, poset_leq, unshuffles
from permop.trees import BWTree, T_sigma, caterpillar, collapses, trees_by_degree

print(unshuffles(NrSequence.parse("3214"), (3, 1)))
print(poset_leq(Unshuffle.parse("13|24"), Unshuffle.parse("2413")))

# %%
# Faces of one permutahedron, by degree
print(build_J_sigma(NrSequence.parse("4321")).f_vector())
# and the whole Milgram poset
for n in range(1, 6):
    print(n, build_J_n(n).f_vector())

# %%
# Cactus cells: trees graded by degree
for n in range(1, 6):
    by_deg = trees_by_degree(range(1, n + 1))
    print(n, [len(by_deg[d]) for d in range(n)])

# %%
# A tree, its encoding and its faces
t = BWTree.parse("[1[3][2]]")
print(t.encoding, t.degree, [c.encoding for c in collapses(t)])

# %%
# The trees compatible with 4321 subdivide one copy of P_4; 15 of them are top cells.
top = T_sigma("4321", 3)
print(len(top), caterpillar("4321") in top)
