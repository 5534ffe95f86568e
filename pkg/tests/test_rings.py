from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lie2ops.rings import (
    ONE,
    Q,
    QINV,
    ZERO,
    LaurentPoly,
    NotExactError,
    laurent_arith,
    laurent_eval_at_one,
    laurent_q_power_substitute,
    sl2_irreducible_char,
)
from strategies import laurents


def test_difference_of_squares():
    assert laurent_arith(Q + QINV, Q - QINV, "mul") == LaurentPoly({2: 1, -2: -1})


def test_zero_is_additive_identity():
    x = LaurentPoly({3: 2, -1: Fraction(1, 2)})
    assert laurent_arith(ZERO, x, "add") == x


def test_polynomial_product():
    assert laurent_arith(Q + 1, Q - 1, "mul") == LaurentPoly({2: 1, 0: -1})


def test_unknown_op():
    with pytest.raises(ValueError):
        laurent_arith(Q, Q, "div")


def test_q_power_substitute():
    assert laurent_q_power_substitute(Q + QINV, 2) == LaurentPoly({2: 1, -2: 1})
    x = LaurentPoly({0: 3, 1: 1})
    assert laurent_q_power_substitute(x, 1) == x
    assert laurent_q_power_substitute(x, 3) == LaurentPoly({0: 3, 3: 1})
    with pytest.raises(ValueError):
        laurent_q_power_substitute(x, 0)


def test_eval_at_one():
    assert laurent_eval_at_one(Q + QINV) == 2
    assert laurent_eval_at_one(ZERO) == 0
    assert laurent_eval_at_one(LaurentPoly({2: 2, 0: 5, -2: 2})) == 9


def test_sl2_irreducibles():
    assert sl2_irreducible_char(1) == ONE
    assert sl2_irreducible_char(2) == Q + QINV
    assert sl2_irreducible_char(4) == LaurentPoly({3: 1, 1: 1, -1: 1, -3: 1})
    with pytest.raises(ValueError):
        sl2_irreducible_char(0)


@pytest.mark.parametrize("n", range(1, 21))
def test_sl2_character_symmetric_with_dimension_n(n):
    chi = sl2_irreducible_char(n)
    assert chi.is_palindromic()
    assert chi.at_one() == n


def test_exact_division():
    num = LaurentPoly({3: 1, -3: -1})
    assert num.exact_div(Q - QINV) == LaurentPoly({2: 1, 0: 1, -2: 1})
    with pytest.raises(NotExactError):
        (Q + 1).exact_div(Q - 1)
    with pytest.raises(ZeroDivisionError):
        Q.exact_div(ZERO)


def test_negative_power_and_bar():
    assert (2 * Q) ** -2 == LaurentPoly({-2: Fraction(1, 4)})
    assert LaurentPoly({2: 1, -1: 3}).bar() == LaurentPoly({-2: 1, 1: 3})
    with pytest.raises(NotExactError):
        (Q + 1) ** -1


def test_string_and_json():
    x = LaurentPoly({2: 2, 0: 5, -2: 2})
    assert str(x) == "2*q^2 + 5 + 2*q^-2"
    assert str(-(Q + QINV)) == "-q - q^-1"
    assert LaurentPoly.from_json(x.to_json()) == x
    assert (Q + QINV).to_json() == {"-1": "1", "1": "1"}


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(laurents, st.integers(1, 5), st.integers(1, 5))
def test_q_power_composes(a, j, k):
    assert a.q_power(j).q_power(k) == a.q_power(j * k)


@given(laurents, laurents)
def test_exact_division_recovers_factor(a, b):
    if not b.is_zero():
        assert (a * b).exact_div(b) == a
