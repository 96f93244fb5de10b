import itertools

import pytest
from hypothesis import given, settings, strategies as st

from permop.operadcalc import (
    CONVENTION,
    DISJOINT,
    OVERLAPPING,
    CactSequence,
    FormalSum,
    associativity_defects,
    compose,
    degree_additivity_violations,
    dyer_lashof_left,
    dyer_lashof_right,
    equivariance_holds,
    has_crossing,
    top_cell_check,
    random_equivariance_checks,
    sequence_to_tree,
    transport_check,
    tree_to_sequence,
    validate_convention,
)
from permop.trees import BWTree, T_sigma, b_plus_s, caterpillar, enumerate_trees, scc


def test_word_examples():
    assert str(tree_to_sequence(scc("3142"))) == "3142"
    assert str(tree_to_sequence(b_plus_s(1, [scc("2")]))) == "121"
    assert str(tree_to_sequence(caterpillar("123"))) == "12321"
    assert str(tree_to_sequence(BWTree.parse("[1[3][2]]"))) == "13121"


def test_cact_sequence_invariants():
    s = CactSequence.parse("12131")
    assert s.degree == 2 and s.arity == 3
    with pytest.raises(ValueError):
        CactSequence.parse("1221")
    with pytest.raises(ValueError):
        CactSequence.parse("13")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip(n):
    for t in enumerate_trees(range(1, n + 1)):
        s = tree_to_sequence(t)
        assert len(s) == t.degree + n
        assert sequence_to_tree(s) == t
        assert has_crossing(s) is None


def test_sequence_to_tree_rejects():
    for w in ["1212", "12132"]:
        with pytest.raises(ValueError):
            sequence_to_tree(w)


def test_compose_examples():
    assert compose("121", 2, "121").to_dict() == {"12321": 1}
    assert compose("121", 1, "121").to_dict() == {"12131": 1, "12321": 1, "13121": 1}
    assert compose("12", 1, "21").to_dict() == {"213": 1}
    with pytest.raises(ValueError):
        compose("121", 3, "121")


def test_convention_is_validated():
    v = validate_convention(4)
    assert CONVENTION == OVERLAPPING
    assert v[OVERLAPPING] and not v[DISJOINT]
    assert all(top_cell_check(i) for i in range(1, 5))


@pytest.mark.parametrize("n,size", [(2, 1), (3, 3), (4, 15), (5, 105)])
def test_right_iterate(n, size):
    rep = dyer_lashof_right(n)
    assert rep.ok and len(rep.chain) == size
    assert {sequence_to_tree(w) for w in rep.chain.support} == set(T_sigma(range(1, n + 1), n - 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_left_iterate(n):
    rep = dyer_lashof_left(n)
    assert rep.ok
    (w,) = rep.chain.support
    assert sequence_to_tree(w) == caterpillar(range(1, n + 1))


def test_formal_sum():
    a = FormalSum({CactSequence.parse("121"): 2})
    b = FormalSum({CactSequence.parse("121"): -2, CactSequence.parse("12"): 1})
    assert (a + b).to_dict() == {"12": 1}
    assert FormalSum({CactSequence.parse("21"): 1, CactSequence.parse("12"): 3}).lines() == ["3 × 12", "1 × 21"]
    assert len(FormalSum({CactSequence.parse("12"): 0})) == 0


def test_degree_additivity():
    assert degree_additivity_violations(3) == []


def test_equivariance_random():
    assert random_equivariance_checks(100, seed=7) == []


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_equivariance_property(data):
    pool = [tree_to_sequence(t) for t in enumerate_trees([1, 2, 3])]
    u = data.draw(st.sampled_from(pool))
    v = data.draw(st.sampled_from(pool[:20]))
    i = data.draw(st.integers(1, 3))
    pi = dict(zip([1, 2, 3], data.draw(st.permutations([1, 2, 3]))))
    rho = dict(zip([1, 2, 3], data.draw(st.permutations([1, 2, 3]))))
    assert equivariance_holds(u, i, v, pi, rho)


def test_transport():
    for i in range(1, 5):
        assert transport_check(i) == []


def test_associativity_is_only_measured():
    assert isinstance(associativity_defects(2), list)
