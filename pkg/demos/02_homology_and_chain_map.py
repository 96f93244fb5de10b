# %% [markdown]
# Homology of both models and the cellular map between them
#
# Betti numbers of F(R^2, n) are the coefficients of (1+t)(1+2t)...(1+(n-1)t).
# Both cell complexes should reproduce them, and the map I that sends an
# unshuffle to its compatible top trees should be a quasi-isomorphism.

# %%
import time

from permop.cellcx import build_cact, build_milgram, chain_map_I, order_complex
from permop.homlin import homology, induced_iso_check
from permop.suites import stirling_coefficients

for n in range(2, 5):
    F, C = build_milgram(n), build_cact(n)
    print(n, stirling_coefficients(n), homology(F.chain_complex()).betti, homology(C.chain_complex()).betti)

# %%
# Mod 2 induced map on homology
for n in range(2, 5):
    F, C = build_milgram(n), build_cact(n)
    rep = induced_iso_check(chain_map_I(n, F, C), F.chain_complex(), C.chain_complex())
    print(n, rep.ranks, rep.quasi_isomorphism)

# %%
# Integral check through the order complex of the face poset (a few seconds at n = 4)
t0 = time.perf_counter()
oc = order_complex(build_cact(4).face_poset)
h = homology(oc.chain_complex())
print(oc.f_vector(), h.betti, h.torsion_free, f"{time.perf_counter() - t0:.1f}s")
