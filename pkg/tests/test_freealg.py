import random
from fractions import Fraction

import pytest

from lie2ops.charlib import f_lie2_char, identity_qchar_product
from lie2ops.freealg import (
    ArityLimitError,
    bidegree,
    brute_series,
    build_quotient,
    canonicalize,
    character_on,
    cycle_type_of,
    enumerate_monomials,
    format_tree,
    full_character,
    jacobi_terms,
    parse_tree,
    permutation_of_type,
    random_conjugate,
    relation_vectors,
    six_term_terms,
)
from lie2ops.rings import Q, QINV, LaurentPoly
from lie2ops.symfunc import LAURENT, SymFunc, cycle_types


def test_monomial_counts():
    assert [len(enumerate_monomials(n)) for n in (1, 2, 3)] == [1, 2, 12]
    with pytest.raises(ArityLimitError):
        enumerate_monomials(8)


def test_canonicalize():
    assert canonicalize((1, 2, 1)) == ((1, 1, 2), -1)
    t = (1, 1, (2, 2, 3))
    assert canonicalize(t) == (t, 1)
    assert canonicalize((1, (2, 3, 2), 1)) == ((1, 1, (2, 2, 3)), 1)


def test_format_roundtrip():
    t = (1, 1, (2, 2, 3))
    assert format_tree(t) == "{a1,{a2,a3}_2}_1"
    assert parse_tree(format_tree(t)) == t


def test_relation_shapes():
    jac = jacobi_terms(1, 2, 3, 1)
    assert len(jac) == 3 and all(bidegree(t) == (2, 0) for t, _ in jac)
    six = six_term_terms(1, 2, 3)
    assert len(six) == 6 and all(bidegree(t) == (1, 1) for t, _ in six)


def test_relations_are_bihomogeneous():
    for n in (3, 4):
        for rel in relation_vectors(n):
            assert len({bidegree(m) for m in rel}) == 1


def test_small_quotients():
    m2 = build_quotient(2)
    assert m2.dimension == 2 and m2.bidegree_dims() == {(1, 0): 1, (0, 1): 1}
    m3 = build_quotient(3)
    assert m3.dimension == 9
    assert m3.bidegree_dims() == {(2, 0): 2, (1, 1): 5, (0, 2): 2}
    assert m3.torus_character() == LaurentPoly({2: 2, 0: 5, -2: 2})
    assert len(enumerate_monomials(3)) - m3.dimension == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_dimensions(n):
    M = build_quotient(n)
    assert M.dimension == n ** (n - 1)
    ident = {i: i for i in range(1, n + 1)}
    assert character_on(M, ident) == identity_qchar_product("lie2", n)
    assert character_on(M, ident).at_one() == n ** (n - 1)


def test_character_examples():
    assert character_on(build_quotient(2), {1: 2, 2: 1}) == -(Q + QINV)
    assert character_on(build_quotient(3), {1: 2, 2: 3, 3: 1}) == -LaurentPoly({2: 1, 0: 1, -2: 1})


def test_full_character_small():
    F2 = full_character(2)
    assert F2.coeff((2,)) == (Q + QINV) / 2
    assert F2.coeff((0, 1)) == -(Q + QINV) / 2
    assert full_character(1) == SymFunc.p(1, 1, LAURENT)
    assert full_character(3) == f_lie2_char(3).slice(3)


@pytest.mark.parametrize("n", range(2, 6))
def test_class_function_and_palindromic(n):
    M = build_quotient(n)
    rng = random.Random(n)
    for rho in cycle_types(n):
        sigma = permutation_of_type(rho)
        assert cycle_type_of(sigma) == rho
        val = character_on(M, sigma)
        assert val.bar() == val
        for _ in range(20):
            assert character_on(M, random_conjugate(sigma, rng)) == val


@pytest.mark.parametrize("n", range(3, 6))
def test_reduction_kills_relations(n):
    M = build_quotient(n)
    for rel in relation_vectors(n)[:200]:
        assert M.reduce({m: Fraction(c) for m, c in rel.items()}) == {}
    for m in enumerate_monomials(n)[:50]:
        r = M.reduce({m: Fraction(1)})
        assert M.reduce(r) == r


def test_brute_series_matches_closed_form():
    assert brute_series(5) == f_lie2_char(5)


@pytest.mark.slow
def test_arity_six():
    M = build_quotient(6)
    assert M.dimension == 6 ** 5
    assert full_character(6) == f_lie2_char(6).slice(6)
