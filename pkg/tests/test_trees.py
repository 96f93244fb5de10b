import itertools
from math import comb, factorial

import pytest

from permop.operadcalc import sequence_to_tree, tree_to_sequence
from permop.seqcomb import NrSequence, Unshuffle, all_unshuffles, remove_first
from permop.trees import (
    BWTree,
    LabelOrder,
    T_sigma,
    b_minus_black,
    b_minus_white,
    b_plus_black,
    b_plus_s,
    caterpillar,
    collapse_kinds,
    collapses,
    compatible,
    decomposition,
    double_factorial,
    enumerate_trees,
    face_top_bijection,
    filtration,
    partial_order,
    piece,
    scc,
    trees_by_degree,
)


def T(s):
    return BWTree.parse(s)


def cells_formula(n, d):
    # n! times the number of planar forests with the right shape
    return factorial(n) * comb(n - 1 + d, d) * comb(n - 1, d) // (d + 1)


def test_parse_and_encoding():
    t = T("[1[3][2]]")
    assert t.encoding == "[1[3][2]]"
    assert t.degree == 2 and t.n == 3
    assert t.is_white_rooted() and t.initial_branching == 2
    assert scc("12") == T("[1,2]")
    for bad in ["[1,1]", "[]", "[1[]]", "[1"]:
        with pytest.raises(ValueError):
            T(bad)


def test_small_enumerations():
    assert enumerate_trees([1]) == [scc("1")]
    two = trees_by_degree([1, 2])
    assert len(two[0]) == 2 and len(two[1]) == 2
    three = trees_by_degree([1, 2, 3])
    assert len(three[0]) == 6 and len(three[2]) == 12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_counts_match_closed_form(n):
    by_deg = trees_by_degree(range(1, n + 1))
    assert [len(by_deg[d]) for d in range(n)] == [cells_formula(n, d) for d in range(n)]


def test_enumeration_matches_word_oracle():
    # Every word without equal neighbours that parses back is a tree, and vice versa.
    n = 3
    found = set()
    for length in range(n, 2 * n):
        for w in itertools.product(range(1, n + 1), repeat=length):
            if set(w) != set(range(1, n + 1)) or any(a == b for a, b in zip(w, w[1:])):
                continue
            try:
                found.add(sequence_to_tree(w))
            except ValueError:
                pass
    assert found == set(enumerate_trees(range(1, n + 1)))


def test_enumerate_rejects_duplicates():
    with pytest.raises(ValueError):
        enumerate_trees([1, 1])


def _deletion_oracle(t):
    w = tree_to_sequence(t).word
    out = set()
    for j, x in enumerate(w):
        if w.count(x) > 1:
            try:
                out.add(sequence_to_tree(w[:j] + w[j + 1:]))
            except ValueError:
                pass
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_collapses_match_letter_deletion(n):
    for t in enumerate_trees(range(1, n + 1)):
        got = collapses(t)
        assert len(got) == len(set(got)), t
        assert set(got) == _deletion_oracle(t), t
        assert all(c.degree == t.degree - 1 for c in got)


def test_collapse_examples():
    assert collapses(scc("123")) == []
    assert set(collapses(T("[1[2]]"))) == {scc("12"), scc("21")}
    kinds = {k for _, k in collapse_kinds(T("[1[2][3]]"))}
    assert kinds == {"outer", "inner"}


@pytest.mark.parametrize("n", [3, 4])
def test_collapse_coarsens_order(n):
    for t in enumerate_trees(range(1, n + 1)):
        po = partial_order(t)
        assert po.is_strict_partial_order()
        for c in collapses(t):
            assert partial_order(c).coarser_than(po)


def test_partial_order_examples():
    assert partial_order(scc("312")).relation == frozenset()
    assert partial_order(caterpillar("123")) == LabelOrder.total("123")
    assert partial_order(T("[1[3][2]]")).relation == {(1, 3), (1, 2)}


def test_compatible():
    assert compatible(scc("312"), "123")
    assert not compatible(caterpillar("123"), "132")
    assert compatible(caterpillar("123"), "123")
    with pytest.raises(ValueError):
        compatible(scc("12"), "123")


def test_compatible_equals_order_extension():
    for t in enumerate_trees([1, 2, 3, 4]):
        for p in itertools.permutations([1, 2, 3, 4]):
            assert compatible(t, p) == partial_order(t).compatible_with(p)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_top_cells_double_factorial(n):
    sizes = {len(T_sigma(p, n - 1)) for p in itertools.islice(itertools.permutations(range(1, n + 1)), 10)}
    assert sizes == {double_factorial(2 * n - 3)}


def test_T_sigma_known_counts():
    assert len(T_sigma("4321", 3)) == 15
    assert len(T_sigma("54321", 4)) == 105
    assert all(len(T_sigma(p, 2)) == 3 for p in itertools.permutations([1, 2, 3]))


@pytest.mark.parametrize("sigma", ["123", "2413", "4321"])
def test_T_sigma_is_filtered_enumeration(sigma):
    labels = sorted(int(c) for c in sigma)
    want = sorted(t for t in enumerate_trees(labels) if compatible(t, sigma))
    assert T_sigma(sigma) == want


def test_b_operators():
    assert b_minus_black(scc("12")) == [scc("1"), scc("2")]
    assert b_plus_s(1, [scc("2")]) == caterpillar("12")
    assert b_minus_black(T("[1[2]]")) == [T("[1[2]]")]
    for t in enumerate_trees([1, 2, 3]):
        assert b_plus_black(b_minus_black(t)) == t
        if t.is_white_rooted():
            s, forest = b_minus_white(t)
            assert b_plus_s(s, forest) == t
    with pytest.raises(ValueError):
        b_plus_s(1, [scc("12")])
    with pytest.raises(ValueError):
        b_minus_white(scc("12"))


def test_b_minus_white_lands_in_product():
    sigma = NrSequence.parse("4213")
    for t in T_sigma(sigma, 3):
        s, forest = b_minus_white(t)
        assert s == sigma[0]
        rest = remove_first(sigma)
        blocks = [tuple(x for x in rest if x in f.labels) for f in forest]
        assert Unshuffle(tuple(blocks)) in all_unshuffles(rest)
        assert all(compatible(f, b) for f, b in zip(forest, blocks))


def test_decomposition_sizes():
    dec = decomposition("4321")
    assert sum(len(ts) for pieces in dec.values() for ts in pieces.values()) == 15
    for pieces in dec.values():
        for l, ts in pieces.items():
            assert sorted(ts) == piece("4321", l)


def test_filtration_is_increasing():
    prev = set()
    for k in range(1, 4):
        cur = set(filtration("4321", k))
        assert prev <= cur
        prev = cur
    assert prev == set(T_sigma("4321"))


def test_face_top_bijection():
    rep = face_top_bijection("54321")
    assert rep.domain_sizes == {1: 15, 2: 30, 3: 36, 4: 24}
    assert rep.bijective
    rep3 = face_top_bijection("321")
    assert rep3.domain_sizes == {1: 1, 2: 2} and rep3.bijective
    rep2 = face_top_bijection("21")
    assert len(rep2.mapping) == 1 and rep2.bijective
