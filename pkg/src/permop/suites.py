"""Named verification suites.

Each suite takes ``n`` (and a seed for spot checks) and returns a
``SuiteResult``: a list of named checks, each with a pass flag, the observed
value and, on failure, a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

from . import cellcx, geometry, homlin, operadcalc, seqcomb, trees

SUITES = ("poset", "trees", "cover", "chainmap", "homology", "operad", "geometry")


@dataclass
class Check:
    name: str
    passed: bool
    value: object = None
    witness: object = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed, "value": self.value}
        if not self.passed and self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class SuiteResult:
    suite: str
    n: int
    checks: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, value=None, witness=None):
        self.checks.append(Check(name, bool(passed), value, witness))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "skipped": self.skipped,
        }


def stirling_coefficients(n: int) -> list[int]:
    """Coefficients of (1 + t)(1 + 2t)...(1 + (n-1)t)."""
    poly = [1]
    for i in range(1, n):
        poly = cellcx.convolve(poly, [1, i])
    return poly


def _perms(n):
    return [seqcomb.NrSequence(p) for p in itertools.permutations(range(1, n + 1))]


def _first(xs, k=3):
    return [str(x) for x in xs[:k]]


# ------------------------------------------------------------------ suites


def brute_force_leq(elements) -> set:
    """Reflexive-transitive closure of the down-cover relation."""
    below = {}
    for a in sorted(elements, key=lambda e: e.degree):
        s = {a}
        for b in seqcomb.down_covers(a):
            s |= below[b]
        below[a] = s
    return {(b, a) for a, s in below.items() for b in s}


def suite_poset(n: int, seed: int = 0) -> SuiteResult:
    r = SuiteResult("poset", n)
    J = seqcomb.build_J_n(n)
    r.add("J(n) size n!*2^(n-1)", len(J.elements) == factorial(n) * 2 ** (n - 1), len(J.elements))
    r.add("f-vector", True, J.f_vector())
    if n > 4:
        r.skipped.append("brute-force closure (n > 4)")
        return r
    closure = brute_force_leq(J.elements)
    bad = [
        (str(a), str(b))
        for a in J.elements
        for b in J.elements
        if seqcomb.poset_leq(a, b) != ((a, b) in closure)
    ]
    r.add("poset_leq matches closure of covers", not bad, len(J.elements) ** 2, bad[:3])
    r.add("covers are minimal", J.covers_are_minimal())
    r.add("acyclic", J.is_acyclic())
    for s in _perms(n)[:2]:
        Js = seqcomb.build_J_sigma(s)
        ok = all(not seqcomb.poset_leq(a, b) or Js.leq(a, b) for a in Js.elements for b in Js.elements)
        r.add(f"J_{s} order agrees with poset_leq", ok)
    return r


def suite_trees(n: int, seed: int = 0) -> SuiteResult:
    r = SuiteResult("trees", n)
    labels = range(1, n + 1)
    by_deg = trees.trees_by_degree(labels)
    counts = [len(by_deg.get(d, [])) for d in range(n)]
    r.add("graded counts", True, counts)
    bad = [t.encoding for d, ts in by_deg.items() for t in ts for c in trees.collapses(t) if c.degree != d - 1]
    r.add("every collapse drops degree by 1", not bad, None, bad[:3])
    perms = _perms(n) if n <= 4 else [seqcomb.NrSequence(tuple(range(n, 0, -1)))]
    bad = []
    top_sizes = set()
    for s in perms:
        Ts = set(trees.T_sigma(s))
        if not all(c in Ts for t in Ts for c in trees.collapses(t)):
            bad.append(str(s))
        top_sizes.add(sum(1 for t in Ts if t.degree == n - 1))
    r.add("T_sigma closed under collapses", not bad, len(perms), bad[:3])
    df = trees.double_factorial(2 * n - 3) if n >= 2 else 1
    r.add("|T^(n-1)_sigma| = (2n-3)!!", top_sizes == {df}, sorted(top_sizes))
    if n >= 2:
        rep = trees.face_top_bijection(tuple(range(n, 0, -1)))
        r.add("face/top bijection", rep.bijective, {str(k): v for k, v in rep.domain_sizes.items()})
    return r


def suite_cover(n: int, seed: int = 0) -> SuiteResult:
    r = SuiteResult("cover", n)
    if n > 4:
        r.skipped.append("cover and decomposition checks (n > 4)")
        return r
    C = cellcx.build_cact(n)
    cov = cellcx.permutahedral_cover(n, C)
    r.add("n! copies", cov.copies == factorial(n), cov.copies)
    r.add("copies cover C(n)", cov.covers_all)
    r.add("unglued cells are the caterpillars", cov.caterpillars_unglued(), len(cov.unglued_cells))
    bad_down = [str(s) for s, cells in cov.cells_by_sigma.items() if not cellcx.is_down_closed(set(cells), C)]
    r.add("each copy is a subcomplex", not bad_down, None, bad_down[:3])
    if n >= 2:
        bad_piece, bad_part = [], []
        for s in _perms(n):
            for pc in cellcx.piece_checks(s):
                if not pc.ok:
                    bad_piece.append({"sigma": str(s), "l": str(pc.l), "got": pc.f_vector, "want": pc.expected})
            if not cellcx.pieces_partition_top(s):
                bad_part.append(str(s))
        r.add("piece f-vectors match product cells", not bad_piece, None, bad_piece[:3])
        r.add("pieces partition the top cells", not bad_part, None, bad_part[:3])
    if n >= 3:
        keys = {geometry.decomposition_key(s) for s in _perms(n)}
        r.add("n!/2 distinct decompositions", len(keys) == factorial(n) // 2, len(keys))
    return r


def _independent_cact_covers(t: trees.BWTree) -> list:
    """Faces via deleting one occurrence of a repeated letter in the word."""
    w = operadcalc.tree_to_sequence(t).word
    out = set()
    for j, x in enumerate(w):
        if w.count(x) > 1:
            cand = w[:j] + w[j + 1:]
            try:
                out.add(operadcalc.sequence_to_tree(cand))
            except ValueError:
                pass
    return sorted(out)


def suite_chainmap(n: int, seed: int = 0, allow_large: bool = False) -> SuiteResult:
    r = SuiteResult("chainmap", n)
    F = cellcx.build_milgram(n)
    r.add("F(n) boundary^2 = 0", F.boundary_squared_zero())
    fr = F.regularity(lambda a: [b for b in F.cells[a.degree - 1] if seqcomb.poset_leq(b, a)] if a.degree else [])
    r.add("F(n) columns are cover indicators", fr.ok, None, _first(fr.repeated_faces + fr.column_mismatches))
    if n > 4 and not allow_large:
        r.skipped.append("C(n) for n > 4 (needs --allow-large)")
        return r
    C = cellcx.build_cact(n, allow_large=allow_large)
    r.add("C(n) boundary^2 = 0", C.boundary_squared_zero())
    cr = C.regularity(_independent_cact_covers)
    r.add("C(n) columns are cover indicators", cr.ok, None, _first(cr.repeated_faces + cr.column_mismatches))
    maps = cellcx.chain_map_I(n, F, C)
    try:
        rep = homlin.induced_iso_check(maps, F.chain_complex(), C.chain_complex())
    except homlin.NotAChainMapError as exc:
        r.add("I is a chain map", False, None, str(exc))
        return r
    r.add("I is a chain map", True)
    r.add("I_* iso in every degree", rep.quasi_isomorphism, {"ranks": rep.ranks, "betti_F": rep.source_betti, "betti_C": rep.target_betti})
    return r


def suite_homology(n: int, seed: int = 0, allow_large: bool = False) -> SuiteResult:
    r = SuiteResult("homology", n)
    want = stirling_coefficients(n)
    F = cellcx.build_milgram(n)
    hF = homlin.homology(F.chain_complex())
    r.add("F(n) GF(2) Betti", hF.betti == want, {"got": hF.betti, "want": want})
    r.add("F(n) Euler characteristic", F.euler_characteristic() == (1 if n == 1 else 0), F.euler_characteristic())
    if n <= 4 or allow_large:
        C = cellcx.build_cact(n, allow_large=allow_large)
        hC = homlin.homology(C.chain_complex())
        r.add("C(n) GF(2) Betti", hC.betti == want, {"got": hC.betti, "want": want})
        r.add("C(n) Euler characteristic", C.euler_characteristic() == (1 if n == 1 else 0), C.euler_characteristic())
    if n <= 4:
        for name, poset in [("J(n)", seqcomb.build_J_n(n)), ("T_n", C.face_poset)]:
            h = homlin.homology(cellcx.order_complex(poset).chain_complex())
            r.add(f"order complex of {name}: integral Betti, no torsion",
                  h.betti == want and h.torsion_free, h.to_dict())
    else:
        r.skipped.append("order complexes (n > 4)")
    return r


def suite_operad(n: int, seed: int = 0) -> SuiteResult:
    r = SuiteResult("operad", n)
    conv = operadcalc.validate_convention(min(max(n, 2), 4))
    r.add("splitting convention passes the top-cell identity", conv[operadcalc.CONVENTION], conv)
    if n >= 2:
        right = operadcalc.dyer_lashof_right(n)
        r.add("right iterate: support = T^(n-1)_(1..n), multiplicities 1", right.ok,
              {"support": len(right.chain), "multiplicities": sorted(right.chain.multiplicities())})
        left = operadcalc.dyer_lashof_left(n)
        r.add("left iterate: the caterpillar", left.ok, left.chain.to_dict())
    m = min(n, 4)
    bad, crossings = [], []
    for t in trees.enumerate_trees(range(1, m + 1)):
        s = operadcalc.tree_to_sequence(t)
        if operadcalc.sequence_to_tree(s) != t or s.degree != t.degree or len(s) != t.degree + m:
            bad.append(t.encoding)
        if operadcalc.has_crossing(s):
            crossings.append(str(s))
    r.add(f"tree/sequence round trip on T_{m}", not bad, None, bad[:3])
    r.add(f"no i..j..i..j pattern in T_{m} words", not crossings, None, crossings[:3])
    r.add("degree additivity (arity <= 3)", not operadcalc.degree_additivity_violations(3))
    eq = operadcalc.random_equivariance_checks(50, seed=seed)
    r.add("equivariance spot checks", not eq, 50, eq[:1])
    tr = [x for i in range(1, min(n, 4) + 1) for x in operadcalc.transport_check(i)]
    r.add("top-cell summands land in the extended order", not tr, None, tr[:3])
    return r


def suite_geometry(n: int, seed: int = 0) -> SuiteResult:
    r = SuiteResult("geometry", n)
    if n > 4:
        r.skipped.append("geometry (n > 4)")
        return r
    for s in [tuple(range(n, 0, -1)), tuple(range(1, n + 1))]:
        fl = geometry.check_face_lattice(s)
        name = "".join(map(str, s))
        r.add(f"vertices on hyperplane ({name})", fl.on_hyperplane)
        r.add(f"edges have squared length 2 ({name})", fl.edge_lengths_ok)
        r.add(f"face lattice isomorphic to J_{name}", fl.bijective and fl.dims_match and fl.order_iso)
    if n >= 2:
        s = tuple(range(n, 0, -1))
        vr = geometry.subdivision_volume_check(s)
        r.add("cell volumes sum to vol(P_n)", vr.total == vr.polytope_volume,
              {"total": str(vr.total), "polytope": str(vr.polytope_volume), "cells": len(vr.cell_volumes)})
        r.add("top cells have disjoint interiors", not vr.overlapping_pairs, None,
              [(a.encoding, b.encoding) for a, b in vr.overlapping_pairs[:3]])
        bad = [t.encoding for t in trees.T_sigma(s)
               if geometry.cell_hull_f_vector(t) != geometry.product_simplex_f_vector(t.arities())]
        r.add("cell hulls are products of simplices", not bad, None, bad[:3])
    return r


RUNNERS = {
    "poset": suite_poset,
    "trees": suite_trees,
    "cover": suite_cover,
    "chainmap": suite_chainmap,
    "homology": suite_homology,
    "operad": suite_operad,
    "geometry": suite_geometry,
}


def run_suite(name: str, n: int, seed: int = 0, allow_large: bool = False) -> SuiteResult:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    fn = RUNNERS[name]
    if name in ("chainmap", "homology"):
        return fn(n, seed, allow_large=allow_large)
    return fn(n, seed)
