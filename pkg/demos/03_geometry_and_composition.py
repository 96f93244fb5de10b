# %% [markdown]
# Exact geometry of the subdivision, and composing cacti
#
# Each top cactus cell in T_sigma is a product of simplices sitting inside the
# permutahedron P_n. Volumes are computed with exact fractions.

# %%
from permop.geometry import export_off, subdivision_volume_check, vertex
from permop.operadcalc import compose, dyer_lashof_left, dyer_lashof_right, tree_to_sequence
from permop.trees import caterpillar

print(vertex("3241"))
rep = subdivision_volume_check("321")
for t, v in sorted(rep.cell_volumes.items()):
    print(t.encoding, v)
print("total", rep.total, "hexagon", rep.polytope_volume)

# %%
rep4 = subdivision_volume_check("4321")
print(len(rep4.cell_volumes), rep4.total, rep4.polytope_volume, rep4.ok)

# %%
# OFF output for an external viewer
print(export_off("321"))

# %%
# Words: walk around the cactus and record the lobe
print(tree_to_sequence(caterpillar("123")))
print(compose("121", 1, "121"))
print(compose("121", 2, "121"))

# %%
# Iterating the two-lobe cell hits every top cell of T_{12..n} once
for n in range(2, 6):
    r = dyer_lashof_right(n)
    print(n, len(r.chain), r.ok, dyer_lashof_left(n).chain)
