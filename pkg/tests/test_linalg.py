import random
from fractions import Fraction

from hypothesis import given, strategies as st

from lie2ops.linalg import SparseEchelon, rank_mod_p, rank_of

rows = st.lists(
    st.dictionaries(st.integers(0, 7), st.integers(-3, 3).filter(bool), max_size=5),
    max_size=8,
)


def test_rank_simple():
    assert rank_of([{0: 1, 1: 1}, {0: 2, 1: 2}, {1: 1}]) == 2
    assert rank_of([]) == 0


def test_reduce_yields_free_columns_only():
    ech = SparseEchelon()
    ech.add({0: 1, 1: -1})
    ech.add({1: 1, 2: -1})
    # e_0 = e_1 = e_2 modulo the rows
    assert ech.reduce({0: 1}) == {2: Fraction(1)}
    assert ech.free_columns(range(3)) == [2]


@given(rows)
def test_rank_matches_modular_rank(rs):
    # small integer entries: a rank drop mod a large prime would need a huge minor
    assert rank_of(rs) == rank_mod_p(rs)


@given(rows, st.dictionaries(st.integers(0, 7), st.integers(-3, 3), max_size=5))
def test_reduction_is_canonical(rs, vec):
    ech = SparseEchelon()
    for r in rs:
        ech.add(r)
    red = ech.reduce(vec)
    assert not set(red) & set(ech.pivots)
    assert ech.reduce(red) == red
    # adding a relation to the vector does not change its normal form
    if rs:
        shifted = dict(vec)
        for j, x in rs[0].items():
            shifted[j] = shifted.get(j, 0) + 3 * x
        assert ech.reduce(shifted) == red


@given(rows)
def test_back_substitution_keeps_normal_forms(rs):
    a, b = SparseEchelon(), SparseEchelon()
    for r in rs:
        a.add(r)
        b.add(r)
    b.back_substitute()
    rng = random.Random(0)
    for _ in range(5):
        vec = {j: rng.randint(-2, 2) for j in range(8)}
        assert a.reduce(vec) == b.reduce(vec)
    for c, row in b.pivots.items():
        assert row[c] == 1
        assert not (set(row) - {c}) & set(b.pivots)
