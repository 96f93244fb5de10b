"""Acceptance criteria, one test each.

Every test prints one line ``criterion k: PASS|FAIL ...`` (also collected in
the pytest terminal summary). Run directly with ``python tests/test_acceptance.py``
to get just those lines.
"""

import itertools
import sys
import time
from math import factorial

from permop import cellcx, geometry, homlin, operadcalc, seqcomb, trees
from permop.suites import _independent_cact_covers, brute_force_leq, stirling_coefficients

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []


def _perms(n):
    return [seqcomb.NrSequence(p) for p in itertools.permutations(range(1, n + 1))]


def _report(k, title, failures, elapsed, limit, detail=""):
    ok = not failures and elapsed < limit
    status = "PASS" if ok else "FAIL"
    line = f"criterion {k}: {status}  {title}  [{elapsed:.1f}s < {limit}s]"
    if detail:
        line += f"  {detail}"
    if failures:
        line += f"  failures: {failures[:3]}"
    if elapsed >= limit:
        line += "  (over time limit)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_counts():
    t0 = time.perf_counter()
    bad = []
    if len(trees.T_sigma("4321", 3)) != 15:
        bad.append("|T^3_4321|")
    rep = trees.face_top_bijection("54321")
    if rep.domain_sizes != {1: 15, 2: 30, 3: 36, 4: 24}:
        bad.append(f"face sizes {rep.domain_sizes}")
    if len(trees.T_sigma("54321", 4)) != 105:
        bad.append("|T^4_54321|")
    for s in ["321", "4321", "54321"]:
        if not trees.face_top_bijection(s).bijective:
            bad.append(f"bijection {s}")
    _report(1, "counting suite", bad, time.perf_counter() - t0, 60, "15; 15/30/36/24; 105; bijective n=3,4,5")


def test_criterion_2_double_factorial():
    t0 = time.perf_counter()
    bad = []
    want = {2: 1, 3: 3, 4: 15, 5: 105}
    for n, w in want.items():
        assert trees.double_factorial(2 * n - 3) == w
        sizes = {len(trees.T_sigma(p, n - 1)) for p in _perms(n)}
        if sizes != {w}:
            bad.append((n, sorted(sizes)))
    _report(2, "|T^(n-1)_sigma| = (2n-3)!!", bad, time.perf_counter() - t0, 60, "1, 3, 15, 105 over all sigma")


def test_criterion_3_decomposition():
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for s in _perms(n):
            for pc in cellcx.piece_checks(s):
                if not pc.ok:
                    bad.append((str(s), str(pc.l), pc.f_vector, pc.expected))
            if not cellcx.pieces_partition_top(s):
                bad.append((str(s), "partition"))
    counts = {}
    for n in (3, 4):
        counts[n] = len({geometry.decomposition_key(s) for s in _perms(n)})
        if counts[n] != factorial(n) // 2:
            bad.append((n, "decompositions", counts[n]))
    _report(3, "decomposition suite", bad, time.perf_counter() - t0, 120, f"distinct decompositions {counts}")


def test_criterion_4_homology():
    t0 = time.perf_counter()
    bad = []
    seen = {}
    for n in (2, 3, 4):
        want = stirling_coefficients(n)
        for name, poset in [("J", seqcomb.build_J_n(n)), ("T", cellcx.build_cact(n).face_poset)]:
            h = homlin.homology(cellcx.order_complex(poset).chain_complex())
            seen[f"{name}({n})"] = h.betti
            if h.betti != want or not h.torsion_free:
                bad.append((name, n, h.to_dict()))
        for cx in (cellcx.build_milgram(n), cellcx.build_cact(n)):
            if cx.euler_characteristic() != 0:
                bad.append((cx.name, "euler", cx.euler_characteristic()))
    F5 = cellcx.build_milgram(5)
    if F5.euler_characteristic() != 0:
        bad.append(("F(5)", "euler", F5.euler_characteristic()))
    _report(4, "homology suite", bad, time.perf_counter() - t0, 600, f"integral Betti {seen['J(4)']}, no torsion, chi(F(5)) = 0")


def test_criterion_5_chain_map():
    t0 = time.perf_counter()
    bad = []
    for n in (1, 2, 3, 4):
        F, C = cellcx.build_milgram(n), cellcx.build_cact(n)
        try:
            rep = homlin.induced_iso_check(cellcx.chain_map_I(n, F, C), F.chain_complex(), C.chain_complex())
        except homlin.NotAChainMapError as exc:
            bad.append((n, str(exc)))
            continue
        if not rep.quasi_isomorphism:
            bad.append((n, rep.ranks, rep.source_betti, rep.target_betti))
    _report(5, "chain map suite (GF(2))", bad, time.perf_counter() - t0, 600, "dI = Id and I_* iso for n <= 4")


def test_criterion_6_operad():
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5):
        r = operadcalc.dyer_lashof_right(n)
        if not r.ok:
            bad.append(("right", n, len(r.chain), sorted(r.chain.multiplicities())))
        left = operadcalc.dyer_lashof_left(n)
        if not left.ok or len(left.chain) != 1:
            bad.append(("left", n, left.chain.to_dict()))
        elif operadcalc.sequence_to_tree(next(iter(left.chain))) != trees.caterpillar(range(1, n + 1)):
            bad.append(("left", n, "not the caterpillar"))
    for n in (1, 2, 3, 4):
        for t in trees.enumerate_trees(range(1, n + 1)):
            if operadcalc.sequence_to_tree(operadcalc.tree_to_sequence(t)) != t:
                bad.append(("round trip", t.encoding))
    _report(6, "operad suite", bad, time.perf_counter() - t0, 60, "right support 1/3/15/105 mult 1; left = caterpillar; round trip T_n, n<=4")


def test_criterion_7_geometry():
    t0 = time.perf_counter()
    bad = []
    for n in (1, 2, 3, 4):
        for s in _perms(n):
            fl = geometry.check_face_lattice(s)
            if not fl.ok:
                bad.append((str(s), fl))
    vols = {}
    for n in (3, 4):
        for s in _perms(n):
            rep = geometry.subdivision_volume_check(s)
            vols[n] = str(rep.polytope_volume)
            if not rep.ok:
                bad.append((str(s), str(rep.total), str(rep.polytope_volume), len(rep.overlapping_pairs)))
    _report(7, "geometry suite (exact rational)", bad, time.perf_counter() - t0, 300, f"projected vol(P_n) {vols}, all sigma")


def test_criterion_8_regularity():
    t0 = time.perf_counter()
    bad = []
    for n in (1, 2, 3, 4):
        F, C = cellcx.build_milgram(n), cellcx.build_cact(n)
        for cx in (F, C):
            if not cx.boundary_squared_zero():
                bad.append((cx.name, "d^2"))
        fr = F.regularity(lambda a: [b for b in F.cells[a.degree - 1] if seqcomb.poset_leq(b, a)] if a.degree else [])
        cr = C.regularity(_independent_cact_covers)
        if not fr.ok:
            bad.append((F.name, "columns", [str(x) for x in fr.column_mismatches[:3]]))
        if not cr.ok:
            bad.append((C.name, "columns", [str(x) for x in cr.column_mismatches[:3]]))
        for t in C.all_cells():
            if any(c.degree != t.degree - 1 for c in trees.collapses(t)):
                bad.append(("collapse degree", t.encoding))
        for s in _perms(n):
            Ts = set(trees.T_sigma(s))
            if any(c not in Ts for t in Ts for c in trees.collapses(t)):
                bad.append(("T_sigma not closed", str(s)))
        J = seqcomb.build_J_n(n)
        closure = brute_force_leq(J.elements)
        for a in J.elements:
            for b in J.elements:
                if seqcomb.poset_leq(a, b) != ((a, b) in closure):
                    bad.append(("poset_leq", str(a), str(b)))
    _report(8, "regularity/poset suite", bad, time.perf_counter() - t0, 300, "n <= 4")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
