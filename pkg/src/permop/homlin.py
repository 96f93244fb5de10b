"""Exact linear algebra for chain complexes.

Integer matrices are sparse ``{(row, col): value}`` maps with Python ints, so
there is no overflow. GF(2) matrices are lists of column bitsets: bit ``i`` of
column ``j`` is the ``(i, j)`` entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence


class NotAComplexError(ValueError):
    """Raised when consecutive boundary maps do not compose to zero."""


class NotAChainMapError(ValueError):
    """Raised when a graded map does not commute with the boundaries."""


@dataclass
class IntMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {(int(i), int(j)): int(v) for (i, j), v in self.entries.items() if v}

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return IntMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


# ------------------------------------------------------------ Smith form


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Unit pivots are eliminated sparsely first (fewest-entries row first); the
    remaining block has no unit entries and is reduced densely by pivoting on
    the smallest nonzero absolute value.
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_dense(m)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    units = 0
    while True:
        best = None
        for i, r in rows.items():
            if best is not None and len(r) >= len(rows[best[0]]):
                continue
            for j, v in r.items():
                if v in (1, -1):
                    best = (i, j)
                    break
        if best is None:
            break
        pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols.get(pj, ())):
            r = rows[i]
            f = r[pj] * pv  # pv = +-1, so pv^-1 = pv
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        cols.setdefault(j, set()).add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    cols[j].discard(i)
            if not r:
                del rows[i]
        cols.pop(pj, None)
        units += 1

    rest = [i for i in rows if rows[i]]
    if not rest:
        return [1] * units
    col_ids = sorted({j for i in rest for j in rows[i]})
    cindex = {j: k for k, j in enumerate(col_ids)}
    dense = [[0] * len(col_ids) for _ in rest]
    for a, i in enumerate(rest):
        for j, v in rows[i].items():
            dense[a][cindex[j]] = v
    return [1] * units + _dense_snf(dense)


def _dense_snf(a: list[list[int]]) -> list[int]:
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (piv is None or abs(v) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, nr):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                # pull a non-divisible entry into the pivot row
                for j in range(t, nc):
                    a[t][j] += a[bad[0]][j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i1, j1 = min(cands)
            a[t], a[i1] = a[i1], a[t]
            for row in a:
                row[t], row[j1] = row[j1], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return _normalize_factors(diag)


def _normalize_factors(diag: list[int]) -> list[int]:
    d = [x for x in diag if x]
    # enforce the divisibility chain: (a, b) -> (gcd, lcm) until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
    return sorted(d)


def int_rank(m: IntMatrix) -> int:
    return len(smith_normal_form(m))


# ------------------------------------------------------------------ GF(2)


class GF2Reducer:
    """Incremental GF(2) row-echelon basis keyed by leading bit."""

    def __init__(self, vectors: Sequence[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        piv = self.pivots
        while v:
            p = v.bit_length() - 1
            w = piv.get(p)
            if w is None:
                return v
            v ^= w
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True iff it was independent."""
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def __len__(self):
        return len(self.pivots)


def gf2_rank(columns: Sequence[int]) -> int:
    return len(GF2Reducer(columns))


def gf2_apply(columns: Sequence[int], v: int) -> int:
    """Multiply a column-bitset matrix by the bit vector ``v``."""
    out = 0
    j = 0
    while v:
        if v & 1:
            out ^= columns[j]
        v >>= 1
        j += 1
    return out


def gf2_kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel, as bit vectors over the column indices."""
    piv: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v, combo = col, 1 << j
        while v:
            p = v.bit_length() - 1
            hit = piv.get(p)
            if hit is None:
                piv[p] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        else:
            kernel.append(combo)
    return kernel


def int_to_gf2(m: IntMatrix) -> list[int]:
    cols = [0] * m.cols
    for (i, j), v in m.entries.items():
        if v & 1:
            cols[j] ^= 1 << i
    return cols


# ---------------------------------------------------------------- homology


@dataclass
class ChainComplex:
    """Free chain complex: ``sizes[d]`` generators in degree ``d`` and boundary
    maps ``boundaries[d]: C_d -> C_{d-1}`` for ``d >= 1``.

    ``ring`` is ``"Z"`` (IntMatrix boundaries) or ``"GF2"`` (column bitsets).
    """

    sizes: list[int]
    boundaries: dict
    ring: str = "Z"

    def boundary(self, d: int):
        if self.ring == "Z":
            return self.boundaries.get(
                d, IntMatrix(self.sizes[d - 1] if d >= 1 else 0, self.sizes[d] if d < len(self.sizes) else 0)
            )
        return self.boundaries.get(d, [0] * (self.sizes[d] if 0 <= d < len(self.sizes) else 0))

    def check(self) -> None:
        top = len(self.sizes) - 1
        for d in range(2, top + 1):
            if self.ring == "Z":
                if not self.boundary(d - 1).matmul(self.boundary(d)).is_zero():
                    raise NotAComplexError(f"boundary squared nonzero in degree {d}")
            else:
                lower = self.boundary(d - 1)
                for c in self.boundary(d):
                    if gf2_apply(lower, c):
                        raise NotAComplexError(f"boundary squared nonzero in degree {d} over GF(2)")

    def to_gf2(self) -> "ChainComplex":
        if self.ring == "GF2":
            return self
        return ChainComplex(self.sizes, {d: int_to_gf2(m) for d, m in self.boundaries.items()}, "GF2")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * s for d, s in enumerate(self.sizes))


@dataclass
class HomologySummary:
    betti: list[int]
    torsion: list[list[int]]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def homology(c: ChainComplex, check: bool = True) -> HomologySummary:
    """Betti numbers (and torsion over Z) of a finite free chain complex."""
    if check:
        c.check()
    top = len(c.sizes) - 1
    ranks = [0] * (top + 2)
    factors: list[list[int]] = [[] for _ in range(top + 2)]
    for d in range(1, top + 1):
        if c.ring == "Z":
            f = smith_normal_form(c.boundary(d))
            ranks[d] = len(f)
            factors[d] = [x for x in f if x > 1]
        else:
            ranks[d] = gf2_rank(c.boundary(d))
    betti = [c.sizes[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]
    torsion = [factors[d + 1] for d in range(top + 1)]
    return HomologySummary(betti, torsion)


# ------------------------------------------------------ induced homology map


@dataclass
class InducedMapReport:
    source_betti: list[int]
    target_betti: list[int]
    ranks: list[int]

    @property
    def iso(self) -> list[bool]:
        return [r == s == t for r, s, t in zip(self.ranks, self.source_betti, self.target_betti)]

    @property
    def quasi_isomorphism(self) -> bool:
        return all(self.iso)


def check_chain_map(maps: Mapping[int, Sequence[int]], source: ChainComplex, target: ChainComplex) -> None:
    """Raise unless ``d_target o f = f o d_source`` in every degree (GF(2))."""
    top = len(source.sizes) - 1
    for d in range(1, top + 1):
        f_d, f_lo = maps[d], maps[d - 1]
        ds, dt = source.boundary(d), target.boundary(d)
        for j in range(source.sizes[d]):
            if gf2_apply(dt, f_d[j]) != gf2_apply(f_lo, ds[j]):
                raise NotAChainMapError(f"chain map identity fails in degree {d} at source cell {j}")


def induced_iso_check(maps: Mapping[int, Sequence[int]], source: ChainComplex, target: ChainComplex) -> InducedMapReport:
    """Rank of the map induced on GF(2) homology in every degree.

    ``maps[d]`` is the GF(2) matrix of the degree-``d`` component (columns are
    source cells, bits index target cells).
    """
    source, target = source.to_gf2(), target.to_gf2()
    check_chain_map(maps, source, target)
    top = len(source.sizes) - 1
    sb, tb, ranks = [], [], []
    for d in range(top + 1):
        cycles = gf2_kernel(source.boundary(d)) if d >= 1 else [1 << j for j in range(source.sizes[0])]
        src_bd = GF2Reducer(source.boundary(d + 1) if d + 1 <= top else [])
        reps = [z for z in cycles if src_bd.add(z)]
        sb.append(len(reps))
        t_top = len(target.sizes) - 1
        t_cycles = gf2_kernel(target.boundary(d)) if d >= 1 else [1 << j for j in range(target.sizes[0])]
        tgt_bd = GF2Reducer(target.boundary(d + 1) if d + 1 <= t_top else [])
        tb.append(sum(1 for z in t_cycles if tgt_bd.add(z)))
        tgt_bd = GF2Reducer(target.boundary(d + 1) if d + 1 <= t_top else [])
        ranks.append(sum(1 for z in reps if tgt_bd.add(gf2_apply(maps[d], z))))
    return InducedMapReport(sb, tb, ranks)
