"""Regular CW data for Milgram's complex F(n) and the cacti complex C(n).

Both complexes are built from their index posets: cells of F(n) are the
unshuffles in J(n), cells of C(n) are the b/w trees in T_n. Boundaries are
taken mod 2. Integral homology goes through the order complex (barycentric
subdivision) of the face poset, which carries canonical simplex orientations.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from math import comb
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .homlin import ChainComplex, IntMatrix, gf2_apply
from .seqcomb import FinitePoset, NrSequence, Unshuffle, all_unshuffles, build_J_n, down_covers, remove_first
from .trees import (
    BWTree,
    T_sigma,
    b_plus_black,
    caterpillar,
    collapses,
    decomposition,
    enumerate_trees,
    piece,
    piece_closure,
)

MAX_MILGRAM_N = 5
MAX_CACT_N = 4


def _encode(cell) -> str:
    return cell.encoding if isinstance(cell, BWTree) else str(cell)


@dataclass
class RegularityReport:
    repeated_faces: list = field(default_factory=list)
    column_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.repeated_faces and not self.column_mismatches


class CellComplex:
    """Graded cells with mod-2 boundary columns and the face poset.

    ``boundary2[d][j]`` is a bitset over the ``(d-1)``-cells for the ``j``-th
    ``d``-cell.
    """

    def __init__(self, cells: Sequence[Hashable], dims: Sequence[int], faces: Callable, name: str = ""):
        self.name = name
        top = max(dims) if dims else -1
        self.cells: list[list] = [[] for _ in range(top + 1)]
        for c, d in sorted(zip(cells, dims), key=lambda cd: (cd[1], _encode(cd[0]))):
            self.cells[d].append(c)
        self.position = {c: (d, i) for d, row in enumerate(self.cells) for i, c in enumerate(row)}
        self.face_lists: dict = {c: list(faces(c)) for c in self.position}
        self.boundary2: dict[int, list[int]] = {}
        for d in range(1, top + 1):
            cols = []
            for c in self.cells[d]:
                v = 0
                for f in self.face_lists[c]:
                    fd, fi = self.position[f]
                    if fd != d - 1:
                        raise ValueError(f"face {f} of {c} has dimension {fd}, expected {d - 1}")
                    v ^= 1 << fi
                cols.append(v)
            self.boundary2[d] = cols
        self._poset: FinitePoset | None = None

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def f_vector(self) -> list[int]:
        return [len(row) for row in self.cells]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * k for d, k in enumerate(self.f_vector()))

    def all_cells(self) -> list:
        return [c for row in self.cells for c in row]

    @property
    def face_poset(self) -> FinitePoset:
        if self._poset is None:
            cells = self.all_cells()
            index = {c: i for i, c in enumerate(cells)}
            covers = {(index[f], index[c]) for c in cells for f in self.face_lists[c]}
            self._poset = FinitePoset(cells, covers, [self.position[c][0] for c in cells])
        return self._poset

    def chain_complex(self) -> ChainComplex:
        return ChainComplex(self.f_vector(), dict(self.boundary2), "GF2")

    def boundary_squared_zero(self) -> bool:
        for d in range(2, self.dim + 1):
            lower = self.boundary2[d - 1]
            if any(gf2_apply(lower, col) for col in self.boundary2[d]):
                return False
        return True

    def regularity(self, covered: Callable | None = None) -> RegularityReport:
        """Each boundary column must be the indicator of the covered cells.

        ``covered(cell)`` gives the lower covers from an independent source;
        without it the face poset built from the face lists is used, which
        still detects repeated faces.
        """
        rep = RegularityReport()
        for c, fl in self.face_lists.items():
            if len(set(fl)) != len(fl):
                rep.repeated_faces.append(c)
            d, i = self.position[c]
            if d == 0:
                continue
            lower = set(covered(c)) if covered else set(fl)
            want = 0
            for f in lower:
                want |= 1 << self.position[f][1]
            if want != self.boundary2[d][i]:
                rep.column_mismatches.append(c)
        return rep

    def to_dict(self) -> dict:
        cells = [
            {"id": i, "dim": d, "encoding": _encode(c)}
            for d, row in enumerate(self.cells)
            for i, c in enumerate(row)
        ]
        boundary = {}
        for d, cols in self.boundary2.items():
            trip = []
            for j, v in enumerate(cols):
                i = 0
                while v:
                    if v & 1:
                        trip.append([i, j, 1])
                    v >>= 1
                    i += 1
            boundary[str(d)] = trip
        return {"name": self.name, "f_vector": self.f_vector(), "cells": cells, "boundary_mod2": boundary}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dim", "id", "encoding", "faces"])
        for d, row in enumerate(self.cells):
            for i, c in enumerate(row):
                faces = " ".join(str(self.position[f][1]) for f in self.face_lists[c])
                w.writerow([d, i, _encode(c), faces])
        return buf.getvalue()


def build_milgram(n: int) -> CellComplex:
    """F(n): cells are unshuffles of [n]; faces split one block in two."""
    if not 1 <= n <= MAX_MILGRAM_N:
        raise ValueError(f"build_milgram supports 1 <= n <= {MAX_MILGRAM_N}")
    cells = build_J_n(n).elements
    return CellComplex(cells, [a.degree for a in cells], down_covers, name=f"F({n})")


def build_cact(n: int, allow_large: bool = False) -> CellComplex:
    """C(n) = Cact^1(n): cells are b/w trees; faces are angle collapses."""
    limit = 5 if allow_large else MAX_CACT_N
    if not 1 <= n <= limit:
        raise ValueError(f"build_cact supports 1 <= n <= {limit} (n = 5 needs allow_large)")
    cells = enumerate_trees(range(1, n + 1))
    return CellComplex(cells, [t.degree for t in cells], collapses, name=f"C({n})")


# ------------------------------------------------------------ order complex


class SimplicialComplex:
    """Simplices are ascending tuples of vertex indices, grouped by dimension."""

    def __init__(self, vertices: Sequence, simplices: dict[int, list[tuple[int, ...]]]):
        self.vertices = list(vertices)
        self.simplices = {d: sorted(set(s)) for d, s in simplices.items() if s}

    @property
    def dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def f_vector(self) -> list[int]:
        return [len(self.simplices.get(d, [])) for d in range(self.dim + 1)]

    def is_closed(self) -> bool:
        for d in range(1, self.dim + 1):
            lower = set(self.simplices[d - 1])
            for s in self.simplices[d]:
                for i in range(len(s)):
                    if s[:i] + s[i + 1:] not in lower:
                        return False
        return True

    def chain_complex(self) -> ChainComplex:
        sizes = self.f_vector()
        bd = {}
        for d in range(1, self.dim + 1):
            index = {s: i for i, s in enumerate(self.simplices[d - 1])}
            entries = {}
            for j, s in enumerate(self.simplices[d]):
                for i in range(len(s)):
                    entries[(index[s[:i] + s[i + 1:]], j)] = -1 if i % 2 else 1
            bd[d] = IntMatrix(sizes[d - 1], sizes[d], entries)
        return ChainComplex(sizes, bd, "Z")


def order_complex(p: FinitePoset) -> SimplicialComplex:
    """Simplicial complex of strict chains of ``p``."""
    order = sorted(range(len(p)), key=lambda i: (p.grades[i], i))
    rank = {v: r for r, v in enumerate(order)}
    above = {v: sorted((rank[u] for u in p.upset(v) if u != v)) for v in order}
    simplices: dict[int, list[tuple[int, ...]]] = {}

    def extend(chain):
        simplices.setdefault(len(chain) - 1, []).append(chain)
        for r in above[order[chain[-1]]]:
            extend(chain + (r,))

    for r in range(len(order)):
        extend((r,))
    return SimplicialComplex([p.elements[v] for v in order], simplices)


# ------------------------------------------------------------- chain map I


def I_image(a: Unshuffle) -> list[BWTree]:
    """Trees ``t1|...|tk`` with each ``ti`` top-dimensional and compatible with block ``li``."""
    choices = [T_sigma(NrSequence(b), len(b) - 1) for b in a.blocks]
    return [b_plus_black(combo) for combo in itertools.product(*choices)]


def chain_map_I(n: int, milgram: CellComplex | None = None, cact: CellComplex | None = None) -> dict[int, list[int]]:
    """GF(2) matrices of the cellular map CC(F(n)) -> CC(C(n)), by degree."""
    F = milgram or build_milgram(n)
    C = cact or build_cact(n)
    maps = {}
    for d, row in enumerate(F.cells):
        cols = []
        for a in row:
            v = 0
            for t in I_image(a):
                td, ti = C.position[t]
                if td != d:
                    raise ValueError(f"I({a}) contains {t} of dimension {td} != {d}")
                v ^= 1 << ti
            cols.append(v)
        maps[d] = cols
    return maps


# -------------------------------------------------------- permutahedral cover


@dataclass
class CoverReport:
    n: int
    cells_by_sigma: dict[NrSequence, frozenset]
    multiplicity: dict[BWTree, list[NrSequence]]

    @property
    def copies(self) -> int:
        return len(self.cells_by_sigma)

    @property
    def covers_all(self) -> bool:
        return all(self.multiplicity.values())

    @property
    def unglued_cells(self) -> list[BWTree]:
        return sorted(t for t, s in self.multiplicity.items() if len(s) == 1)

    def caterpillars_unglued(self) -> bool:
        """Cells lying in exactly one copy are exactly the caterpillars, one per copy."""
        expected = {caterpillar(s): [s] for s in self.cells_by_sigma}
        found = {t: s for t, s in self.multiplicity.items() if len(s) == 1}
        return found == expected


def permutahedral_cover(n: int, cact: CellComplex | None = None) -> CoverReport:
    """For every permutation, the cells of C(n) forming its copy of P_n."""
    C = cact or build_cact(n)
    by_sigma = {}
    mult: dict[BWTree, list[NrSequence]] = {t: [] for t in C.all_cells()}
    for perm in itertools.permutations(range(1, n + 1)):
        s = NrSequence(perm)
        cells = frozenset(T_sigma(s))
        by_sigma[s] = cells
        for t in cells:
            mult[t].append(s)
    return CoverReport(n, by_sigma, mult)


def is_down_closed(cells: set, complex_: CellComplex) -> bool:
    return all(f in cells for c in cells for f in complex_.face_lists[c])


# ------------------------------------------------------------ decomposition


def simplex_f_vector(k: int) -> list[int]:
    return [comb(k + 1, j + 1) for j in range(k + 1)]


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def f_vector_of(trees) -> list[int]:
    trees = list(trees)
    top = max(t.degree for t in trees)
    return [sum(1 for t in trees if t.degree == d) for d in range(top + 1)]


@dataclass
class PieceCheck:
    sigma: NrSequence
    l: Unshuffle
    f_vector: list[int]
    expected: list[int]

    @property
    def ok(self) -> bool:
        return self.f_vector == self.expected


def piece_checks(sigma) -> list[PieceCheck]:
    """Compare ``T_sigma[l]`` with the product cell structure of its factors.

    Each factor ``P_{m_i}`` carries its own cactus subdivision (the cells of
    ``T_{l_i}``); the last factor is the simplex at the white root.
    """
    sigma = NrSequence.parse(sigma) if not isinstance(sigma, NrSequence) else sigma
    out = []
    for l in all_unshuffles(remove_first(sigma)):
        expected = simplex_f_vector(len(l))
        for b in l.blocks:
            expected = convolve(expected, f_vector_of(T_sigma(NrSequence(b))))
        out.append(PieceCheck(sigma, l, f_vector_of(piece_closure(sigma, l)), expected))
    return out


def pieces_partition_top(sigma) -> bool:
    """The pieces ``T^{n-1}_sigma[l]`` are disjoint and exhaust ``T^{n-1}_sigma``."""
    sigma = NrSequence.parse(sigma) if not isinstance(sigma, NrSequence) else sigma
    seen: list[BWTree] = []
    for pieces in decomposition(sigma).values():
        for ts in pieces.values():
            seen.extend(ts)
    direct = [t for l in all_unshuffles(remove_first(sigma)) for t in piece(sigma, l)]
    top = T_sigma(sigma, len(sigma) - 1)
    return (
        len(seen) == len(set(seen)) == len(top)
        and set(seen) == set(top)
        and sorted(direct) == sorted(top)
    )
