import pytest

from lie2ops.basis import (
    bidegree_counts,
    count_B,
    count_p2_basis,
    enumerate_B,
    enumerate_p2_basis,
    format_p2,
    set_partitions,
    verify_independence,
)
from lie2ops.freealg import build_quotient, canonicalize, format_tree, leaves


def test_small_families():
    assert enumerate_B([1]) == [1]
    assert [format_tree(t) for t in enumerate_B([1, 2])] == ["{a1,a2}_1", "{a1,a2}_2"]
    assert len(enumerate_B([1, 2, 3])) == 9


def test_arbitrary_labels():
    B = enumerate_B([3, 7, 10])
    assert all(sorted(leaves(t)) == [3, 7, 10] for t in B)
    with pytest.raises(ValueError):
        enumerate_B([2, 1])
    with pytest.raises(ValueError):
        enumerate_B([])


@pytest.mark.parametrize("n", range(1, 8))
def test_counts(n):
    assert count_B(n) == n ** (n - 1)
    assert count_p2_basis(n) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_elements_are_canonical_and_distinct(n):
    B = enumerate_B(range(1, n + 1))
    assert len(set(B)) == len(B) == n ** (n - 1)
    for t in B:
        assert canonicalize(t) == (t, 1)
        assert sorted(leaves(t)) == list(range(1, n + 1))


def test_p2_examples():
    assert [format_p2(e) for e in enumerate_p2_basis([1])] == ["a1"]
    assert sorted(format_p2(e) for e in enumerate_p2_basis([1, 2])) == ["a1*a2", "{a1,a2}_1", "{a1,a2}_2"]
    assert len(enumerate_p2_basis([1, 2, 3, 4])) == 125
    assert len(list(set_partitions(range(4)))) == 15


@pytest.mark.parametrize("n", range(1, 6))
def test_independence(n):
    rep = verify_independence(range(1, n + 1))
    assert rep.passed and rep.rank == n ** (n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_bidegree_refinement(n):
    assert bidegree_counts(range(1, n + 1)) == build_quotient(n).bidegree_dims()


@pytest.mark.slow
def test_independence_arity_six():
    assert verify_independence(range(1, 7)).passed
