"""Exact-rational realization of permutahedra and their cactus subdivisions.

Everything runs on ``fractions.Fraction`` with no floating point. Polytopes are
given by vertex lists. Facets come from brute force over affinely independent
vertex subsets, which is fine in the dimensions used here (at most 3).

Volumes of top cells are measured after dropping the last coordinate. That
projection maps the hyperplane ``x1 + ... + xn = n(n+1)/2`` onto R^(n-1) and
scales (n-1)-volume by the constant ``1/sqrt(n)``, so the values stay rational
and sums can be compared exactly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .seqcomb import NrSequence, Unshuffle, as_sequence, build_J_sigma, vertex_sequences
from .trees import BWTree, T_sigma, compatible, down_closure

Point = tuple  # tuple[Fraction, ...]


def vertex(sigma) -> tuple[int, ...]:
    """``v_phi``: the position of the i-th smallest letter, for each i."""
    phi = as_sequence(sigma)
    pos = {x: i + 1 for i, x in enumerate(phi.letters)}
    return tuple(pos[x] for x in sorted(phi.letters))


def _pt(p) -> Point:
    return tuple(Fraction(x) for x in p)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def affine_dim(points: Sequence) -> int:
    points = [_pt(p) for p in points]
    if not points:
        return -1
    diffs = [_sub(p, points[0]) for p in points[1:]]
    if not diffs:
        return 0
    return len(rref(diffs)[1])


def local_coordinates(points: Sequence) -> list[Point]:
    """Coordinates of the points in an affine frame of their hull."""
    points = [_pt(p) for p in points]
    diffs = [_sub(p, points[0]) for p in points]
    basis, pivots = rref(diffs[1:]) if len(points) > 1 else ([], [])
    return [tuple(d[c] for c in pivots) for d in diffs]


def _nullvector(rows: list[Point], dim: int) -> Point:
    """A nonzero vector orthogonal to ``rows`` (which have rank dim - 1)."""
    if not rows:
        return (Fraction(1),) + (Fraction(0),) * (dim - 1)
    red, pivots = rref(rows)
    free = next(c for c in range(dim) if c not in pivots)
    v = [Fraction(0)] * dim
    v[free] = Fraction(1)
    for row, c in zip(red, pivots):
        v[c] = -row[free]
    return tuple(v)


def facets(points: Sequence) -> list[tuple[frozenset, Point, Fraction]]:
    """Facets of the convex hull of full-dimensional points in local coordinates.

    Each facet is ``(vertex indices, outward normal a, offset b)`` with
    ``a . x <= b`` on the hull.
    """
    pts = [_pt(p) for p in points]
    d = len(pts[0]) if pts else 0
    if d == 0:
        return []
    found: dict[frozenset, tuple] = {}
    for combo in itertools.combinations(range(len(pts)), d):
        base = pts[combo[0]]
        rows = [_sub(pts[i], base) for i in combo[1:]]
        if rows and len(rref(rows)[1]) != d - 1:
            continue
        a = _nullvector(rows, d)
        vals = [_dot(a, _sub(p, base)) for p in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a = tuple(-x for x in a)
            vals = [-v for v in vals]
        else:
            continue
        on = frozenset(i for i, v in enumerate(vals) if v == 0)
        if on not in found:
            found[on] = (on, a, _dot(a, base))
    return sorted(found.values(), key=lambda f: sorted(f[0]))


def face_lattice(points: Sequence) -> dict[frozenset, int]:
    """All nonempty faces of the hull as ``{vertex index set: dimension}``.

    Indices refer to ``points``; duplicate points are not allowed.
    """
    pts = [_pt(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate vertices")
    out: dict[frozenset, int] = {}

    def walk(idx: frozenset):
        if idx in out:
            return
        order = sorted(idx)
        local = local_coordinates([pts[i] for i in order])
        dim = len(local[0]) if local else 0
        out[idx] = dim
        if dim == 0:
            return
        for on, _, _ in facets(local):
            walk(frozenset(order[i] for i in on))

    walk(frozenset(range(len(pts))))
    return out


def f_vector_of_lattice(lattice: dict[frozenset, int]) -> list[int]:
    top = max(lattice.values())
    return [sum(1 for d in lattice.values() if d == k) for k in range(top + 1)]


def project(p) -> Point:
    """Drop the last coordinate (affine chart of the sum hyperplane)."""
    return _pt(p)[:-1]


def triangulate(points: Sequence, lattice: dict[frozenset, int] | None = None) -> list[tuple[int, ...]]:
    """Pulling triangulation of the hull into simplices (tuples of point indices)."""
    lattice = lattice if lattice is not None else face_lattice(points)

    @lru_cache(maxsize=None)
    def tri(face: frozenset) -> tuple:
        dim = lattice[face]
        if dim == 0:
            return (tuple(face),)
        apex = min(face)
        out = []
        for g, gd in lattice.items():
            if gd == dim - 1 and g < face and apex not in g:
                out.extend((apex,) + s for s in tri(g))
        return tuple(out)

    top = max(lattice, key=lambda f: (lattice[f], len(f)))
    return list(tri(top))


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def simplex_volume(points: Sequence) -> Fraction:
    pts = [_pt(p) for p in points]
    d = len(pts) - 1
    return abs(_det([list(_sub(p, pts[0])) for p in pts[1:]])) / factorial(d)


def volume(points: Sequence) -> Fraction:
    """Exact volume of the hull of full-dimensional points."""
    pts = [_pt(p) for p in points]
    if affine_dim(pts) != len(pts[0]):
        raise ValueError("volume() needs full-dimensional points; project first")
    return sum((simplex_volume([pts[i] for i in s]) for s in triangulate(pts)), Fraction(0))


def h_representation(points: Sequence) -> list[tuple[Point, Fraction]]:
    return [(a, b) for _, a, b in facets(points)]


def interiors_disjoint(p: Sequence, q: Sequence) -> bool:
    """Whether two full-dimensional convex hulls have disjoint interiors.

    A facet hyperplane of either polytope that weakly separates them settles
    it. Otherwise the vertices of the intersection are enumerated exactly and
    its dimension is compared with the ambient one.
    """
    P, Q = [_pt(x) for x in p], [_pt(x) for x in q]
    d = len(P[0])
    hp, hq = h_representation(P), h_representation(Q)
    for (a, b), other in [(f, Q) for f in hp] + [(f, P) for f in hq]:
        if all(_dot(a, x) >= b for x in other):
            return True
    ineqs = hp + hq
    verts = set()
    for combo in itertools.combinations(ineqs, d):
        rows = [list(a) + [b] for a, b in combo]
        red, pivots = rref(rows)
        if pivots != list(range(d)):
            continue
        x = tuple(red[i][d] for i in range(d))
        if all(_dot(a, x) <= b for a, b in ineqs):
            verts.add(x)
    return len(verts) <= d or affine_dim(list(verts)) < d


# ------------------------------------------------------- permutahedron faces


@dataclass(frozen=True)
class FaceRealization:
    vertices: tuple[tuple[int, ...], ...]
    sequences: tuple[tuple[int, ...], ...]
    affine_dim: int


def realize_face(a: Unshuffle) -> FaceRealization:
    """Hull of ``v_phi`` over degree-0 elements ``phi`` below ``a``."""
    seqs = vertex_sequences(a)
    verts = tuple(vertex(NrSequence(s)) for s in seqs)
    return FaceRealization(verts, tuple(seqs), affine_dim(verts))


def permutahedron_vertices(n: int) -> list[tuple[int, ...]]:
    return sorted(vertex(NrSequence(p)) for p in itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def permutahedron_lattice(n: int) -> dict[frozenset, int]:
    """Face lattice of P_n on the indices of ``permutahedron_vertices(n)``."""
    if n == 1:
        return {frozenset([0]): 0}
    return face_lattice(local_coordinates(permutahedron_vertices(n)))


@dataclass
class FaceLatticeCheck:
    sigma: NrSequence
    bijective: bool
    dims_match: bool
    order_iso: bool
    edge_lengths_ok: bool
    on_hyperplane: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.dims_match and self.order_iso and self.edge_lengths_ok and self.on_hyperplane


def check_face_lattice(sigma) -> FaceLatticeCheck:
    """Compare the geometric face lattice of P_n with the poset ``J_sigma``."""
    sigma = as_sequence(sigma)
    n = len(sigma)
    verts = permutahedron_vertices(n)
    index = {v: i for i, v in enumerate(verts)}
    target = n * (n + 1) // 2
    on_plane = all(sum(v) == target for v in verts)
    lattice = permutahedron_lattice(n)
    J = build_J_sigma(sigma)
    image = {}
    dims_ok = True
    for a in J.elements:
        fr = realize_face(a)
        key = frozenset(index[v] for v in fr.vertices)
        image[a] = key
        dims_ok &= fr.affine_dim == a.degree == lattice.get(key, -1)
    bij = len(set(image.values())) == len(image) and set(image.values()) == set(lattice)
    iso = all(
        J.leq(a, b) == (image[a] <= image[b]) for a in J.elements for b in J.elements
    )
    edges_ok = all(
        sum((x - y) ** 2 for x, y in zip(verts[i], verts[j])) == 2
        for face, d in lattice.items()
        if d == 1
        for i, j in [tuple(sorted(face))]
    )
    return FaceLatticeCheck(sigma, bij, dims_ok, iso, edges_ok, on_plane)


# ---------------------------------------------------------- cactus cells


def cact_cell_sequences(tau: BWTree) -> list[tuple[int, ...]]:
    """Orders ``nu`` with ``scc(nu)`` in the collapse closure of ``tau``."""
    return sorted(tuple(w[0] for w in t.root) for t in down_closure([tau]) if t.degree == 0)


def realize_cact_cell(tau: BWTree, sigma) -> list[tuple[int, ...]]:
    """Vertices ``v_nu`` of the cactus cell of ``tau`` inside the copy of P_n for ``sigma``."""
    sigma = as_sequence(sigma)
    if not compatible(tau, sigma):
        raise ValueError(f"{tau} is not in T_{sigma}")
    return [vertex(NrSequence(s)) for s in cact_cell_sequences(tau)]


def product_simplex_f_vector(arities) -> list[int]:
    """f-vector of a product of simplices of the given dimensions (dict values allowed)."""
    if isinstance(arities, dict):
        arities = list(arities.values())
    f = [1]
    for w in arities:
        g = [comb(w + 1, j + 1) for j in range(w + 1)]
        f = [sum(f[i] * g[k - i] for i in range(len(f)) if 0 <= k - i < len(g)) for k in range(len(f) + len(g) - 1)]
    return f


def cell_hull_f_vector(tau: BWTree) -> list[int]:
    verts = [vertex(NrSequence(s)) for s in cact_cell_sequences(tau)]
    if len(verts) == 1:
        return [1]
    return f_vector_of_lattice(face_lattice(local_coordinates(verts)))


@dataclass
class SubdivisionReport:
    sigma: NrSequence
    cell_volumes: dict[BWTree, Fraction]
    polytope_volume: Fraction
    disjoint_pairs: int
    overlapping_pairs: list

    @property
    def total(self) -> Fraction:
        return sum(self.cell_volumes.values(), Fraction(0))

    @property
    def ok(self) -> bool:
        return self.total == self.polytope_volume and not self.overlapping_pairs


def subdivision(sigma) -> list[tuple[BWTree, list[tuple[int, ...]]]]:
    """Top cactus cells of the copy of P_n for ``sigma`` with their vertices."""
    sigma = as_sequence(sigma)
    return [(t, realize_cact_cell(t, sigma)) for t in T_sigma(sigma, len(sigma) - 1)]


def subdivision_volume_check(sigma) -> SubdivisionReport:
    """Exact volumes of the top cactus cells against the volume of P_n."""
    sigma = as_sequence(sigma)
    n = len(sigma)
    if n < 2:
        raise ValueError("needs |sigma| >= 2")
    cells = subdivision(sigma)
    projected = {t: [project(v) for v in vs] for t, vs in cells}
    vols = {t: volume(ps) for t, ps in projected.items()}
    whole = volume([project(v) for v in permutahedron_vertices(n)])
    overlaps = []
    good = 0
    for (s, ps), (t, qs) in itertools.combinations(projected.items(), 2):
        if interiors_disjoint(ps, qs):
            good += 1
        else:
            overlaps.append((s, t))
    return SubdivisionReport(sigma, vols, whole, good, overlaps)


def decomposition_key(sigma) -> frozenset:
    """The subdivision of P_n for ``sigma`` as a set of top-cell vertex sets."""
    sigma = as_sequence(sigma)
    return frozenset(
        frozenset(cact_cell_sequences(t)) for t in T_sigma(sigma, len(sigma) - 1)
    )


# ------------------------------------------------------------------ export


def _polygon_cycle(face: frozenset, lattice: dict[frozenset, int]) -> list[int]:
    edges = [tuple(sorted(g)) for g, d in lattice.items() if d == 1 and g <= face]
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(face)
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = min(x for x in adj[cur] if x != prev) if prev is None else next(x for x in adj[cur] if x != prev)
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
    return cycle


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def export_off(sigma=None, n: int | None = None) -> str:
    """OFF text for P_n (``n`` given) or its cactus subdivision (``sigma`` given).

    Coordinates are 3D: the raw vertex for n <= 3 (padded), the projected
    vertex for n = 4. Faces are the distinct 2-dimensional faces of the cells.
    """
    if sigma is not None:
        sigma = as_sequence(sigma)
        n = len(sigma)
    if n is None or not 1 <= n <= 4:
        raise ValueError("OFF export supports 1 <= n <= 4")
    verts = permutahedron_vertices(n)
    index = {v: i for i, v in enumerate(verts)}
    if sigma is None:
        cells = [list(range(len(verts)))]
    else:
        cells = [sorted(index[v] for v in vs) for _, vs in subdivision(sigma)]
    polygons = []
    seen = set()
    for cell in cells:
        pts = [verts[i] for i in cell]
        if affine_dim(pts) < 2:
            continue
        lat = face_lattice(local_coordinates(pts))
        for face, d in sorted(lat.items(), key=lambda fd: sorted(fd[0])):
            if d != 2:
                continue
            glob = frozenset(cell[i] for i in face)
            if glob in seen:
                continue
            seen.add(glob)
            polygons.append([cell[i] for i in _polygon_cycle(face, lat)])
    coords = [list(v) + [0] * (3 - len(v)) if n <= 3 else list(v[:3]) for v in verts]
    lines = ["OFF", f"{len(coords)} {len(polygons)} 0"]
    lines += [" ".join(_fmt(x) for x in c) for c in coords]
    lines += [" ".join([str(len(p))] + [str(i) for i in p]) for p in polygons]
    return "\n".join(lines) + "\n"


def export_json(sigma) -> str:
    """JSON description of the cactus subdivision of P_n for ``sigma``."""
    sigma = as_sequence(sigma)
    n = len(sigma)
    if n > 4:
        raise ValueError("geometric export supports n <= 4")
    verts = permutahedron_vertices(n)
    index = {v: i for i, v in enumerate(verts)}
    cells = []
    for i, t in enumerate(T_sigma(sigma)):
        vs = sorted(index[v] for v in realize_cact_cell(t, sigma))
        entry = {"id": i, "encoding": t.encoding, "dim": t.degree, "vertex_ids": vs}
        if t.degree == n - 1 and n >= 2:
            entry["volume_projected"] = _fmt(volume([project(verts[j]) for j in vs]))
        cells.append(entry)
    doc = {
        "n": n,
        "sigma": list(sigma.letters),
        "vertices": [list(v) for v in verts],
        "top_cells": sum(1 for c in cells if c["dim"] == n - 1),
        "cells": cells,
    }
    return json.dumps(doc, indent=1)


def export_geometry(obj, fmt: str = "json") -> str:
    """Serialize P_n (``obj`` an int), a subdivision (``obj`` a permutation)
    or a cell complex (anything with ``to_json``/``to_csv``)."""
    if hasattr(obj, "to_json"):
        if fmt == "json":
            return obj.to_json()
        if fmt == "csv":
            return obj.to_csv()
        raise ValueError("cell complexes export as json or csv")
    if isinstance(obj, int):
        if fmt != "off":
            raise ValueError("a bare polytope exports as off")
        return export_off(n=obj)
    if fmt == "off":
        return export_off(obj)
    if fmt == "json":
        return export_json(obj)
    raise ValueError(f"unknown format {fmt!r}")
