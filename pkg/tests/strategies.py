"""Hypothesis strategies for truncated symmetric functions."""

from fractions import Fraction

from hypothesis import strategies as st

from lie2ops.rings import LaurentPoly
from lie2ops.symfunc import LAURENT, RATIONAL, SymFunc, cycle_types

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))

laurents = st.dictionaries(st.integers(-3, 3), rationals, max_size=3).map(LaurentPoly)


@st.composite
def symfuncs(draw, N, kind=RATIONAL, min_degree=1, max_terms=4):
    coeffs = rationals if kind == RATIONAL else laurents
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(min_degree, N))
        v = draw(st.sampled_from(cycle_types(d))) if d else ()
        terms[v] = draw(coeffs)
    return SymFunc(N, terms, kind)


def any_kind_symfuncs(N, min_degree=1):
    return st.sampled_from([RATIONAL, LAURENT]).flatmap(lambda k: symfuncs(N, k, min_degree))
