import itertools
from fractions import Fraction

import pytest

from permop.geometry import (
    affine_dim,
    cell_hull_f_vector,
    check_face_lattice,
    decomposition_key,
    export_geometry,
    export_json,
    export_off,
    face_lattice,
    interiors_disjoint,
    permutahedron_vertices,
    product_simplex_f_vector,
    project,
    realize_cact_cell,
    realize_face,
    subdivision_volume_check,
    vertex,
    volume,
)
from permop.cellcx import build_cact
from permop.seqcomb import Unshuffle
from permop.trees import T_sigma, caterpillar, scc


def test_vertex():
    assert vertex("3241") == (4, 2, 1, 3)
    assert vertex("1234") == (1, 2, 3, 4)
    assert vertex("21") == (2, 1)


def test_realize_face():
    hexagon = realize_face(Unshuffle.parse("321"))
    assert len(hexagon.vertices) == 6 and hexagon.affine_dim == 2
    pt = realize_face(Unshuffle.parse("2|1|3"))
    assert len(pt.vertices) == 1 and pt.affine_dim == 0
    sq = realize_face(Unshuffle.parse("13|24"))
    assert len(sq.vertices) == 4 and sq.affine_dim == 2


def test_square_and_cube_volumes():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert volume(square) == 1
    cube = list(itertools.product([0, 2], repeat=3))
    assert volume(cube) == 8
    assert volume([(0, 0), (3, 0), (0, 1)]) == Fraction(3, 2)
    with pytest.raises(ValueError):
        volume([(0, 0), (1, 1), (2, 2)])


def test_face_lattice_of_cube():
    cube = list(itertools.product([0, 1], repeat=3))
    lat = face_lattice(cube)
    counts = [sum(1 for d in lat.values() if d == k) for k in range(4)]
    assert counts == [8, 12, 6, 1]


def test_interiors_disjoint():
    a = [(0, 0), (1, 0), (0, 1), (1, 1)]
    b = [(1, 0), (2, 0), (1, 1), (2, 1)]
    c = [(Fraction(1, 2), 0), (2, 0), (Fraction(1, 2), 1), (2, 1)]
    assert interiors_disjoint(a, b)
    assert not interiors_disjoint(a, c)
    # two tetrahedra touching only along an edge need the exact fallback
    t1 = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    t2 = [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 1, -1)]
    assert interiors_disjoint(t1, t2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_face_lattice_matches_poset(n):
    sigma = tuple(range(n, 0, -1))
    assert check_face_lattice(sigma).ok


def test_realize_cact_cell():
    assert realize_cact_cell(scc("312"), "312") == [vertex("312")]
    cat = realize_cact_cell(caterpillar("123"), "123")
    assert len(cat) == 4 and affine_dim(cat) == 2
    assert len(realize_cact_cell(caterpillar("1234"), "1234")) == 8
    with pytest.raises(ValueError):
        realize_cact_cell(caterpillar("123"), "132")


@pytest.mark.parametrize("sigma", ["321", "4321", "1342"])
def test_hulls_are_products_of_simplices(sigma):
    for t in T_sigma(sigma):
        assert cell_hull_f_vector(t) == product_simplex_f_vector(t.arities())


@pytest.mark.parametrize("sigma,total", [("21", 1), ("321", 3), ("4321", 16), ("2143", 16)])
def test_volume_partition(sigma, total):
    rep = subdivision_volume_check(sigma)
    assert rep.polytope_volume == total  # n^(n-2) in the projected chart
    assert rep.ok
    assert len(rep.cell_volumes) == {2: 1, 3: 3, 4: 15}[len(sigma)]


def test_n3_cell_shapes():
    rep = subdivision_volume_check("321")
    vols = sorted(rep.cell_volumes.values())
    # square of area 2*sqrt(3) and two triangles of area sqrt(3)/2, divided by sqrt(3)
    assert vols == [Fraction(1, 2), Fraction(1, 2), Fraction(2)]


@pytest.mark.parametrize("n", [3, 4])
def test_half_factorial_decompositions(n):
    keys = {decomposition_key(p) for p in itertools.permutations(range(1, n + 1))}
    assert len(keys) == {3: 3, 4: 12}[n]


def test_off_export():
    text = export_off(n=3)
    lines = text.splitlines()
    assert lines[0] == "OFF" and lines[1] == "6 1 0"
    assert lines[-1].startswith("6 ")
    assert export_off("4321") == export_off("4321")


def test_json_export():
    import json

    doc = json.loads(export_json("4321"))
    assert doc["top_cells"] == 15
    assert len(doc["vertices"]) == 24
    assert export_geometry(build_cact(3)).count('"dim"') == 36
    assert export_geometry(3, "off") == export_off(n=3)


def test_vertices_on_hyperplane():
    for v in permutahedron_vertices(4):
        assert sum(v) == 10
    assert project((1, 2, 3)) == (1, 2)
