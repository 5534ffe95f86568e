"""Koszul functional-equation solvers.

For a Koszul operad Q with dual Q!, the dimension series satisfy
f_Q(-f_{Q!}(-x)) = x and the character series satisfy
eps(F_Q) o eps(F_{Q!}) = p_1.  Both equations are solved degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .rings import LaurentPoly
from .symfunc import SymFunc, epsilon, plethysm, unit_vector


class InconsistentSystemError(ArithmeticError):
    pass


class UnivariateSeries:
    """Truncated power series sum_{n=1}^N c_n x^n without constant term."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        # coeffs[i] is the coefficient of x^(i+1)
        self.coeffs = [c if isinstance(c, LaurentPoly) else Fraction(c) for c in coeffs]

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        """Coefficient of x^n."""
        if n < 1 or n > self.N:
            raise IndexError(n)
        return self.coeffs[n - 1]

    def __eq__(self, other):
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"UnivariateSeries({[str(c) for c in self.coeffs]})"

    def negate_argument(self) -> "UnivariateSeries":
        """x -> -x."""
        return UnivariateSeries([c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs, start=1)])

    def __neg__(self):
        return UnivariateSeries([-c for c in self.coeffs])

    @classmethod
    def from_symfunc(cls, F: SymFunc, at_q_one: bool = True) -> "UnivariateSeries":
        """Specialize p_1 = x, p_k = 0 (k > 1), and optionally q = 1."""
        if at_q_one:
            F = F.at_q_one()
        return cls([F.coeff(unit_vector(1, n)) for n in range(1, F.N + 1)])

    @classmethod
    def egf(cls, values: Sequence) -> "UnivariateSeries":
        """sum values[n-1] x^n / n!."""
        out = []
        fact = 1
        for n, v in enumerate(values, start=1):
            fact *= n
            out.append(v * Fraction(1, fact))
        return cls(out)

    def egf_values(self) -> List:
        """n! times the coefficient of x^n."""
        out = []
        fact = 1
        for n, c in enumerate(self.coeffs, start=1):
            fact *= n
            out.append(c * fact)
        return out


def _mul(a: List, b: List, N: int) -> List:
    # index i is the coefficient of x^i; lists of length N+1
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(0, N + 1 - i):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def compose_univariate(f: UnivariateSeries, g: UnivariateSeries) -> UnivariateSeries:
    """f(g(x)) truncated at min(N_f, N_g)."""
    N = min(f.N, g.N)
    gl = [0] + list(g.coeffs[:N])
    power = [1] + [0] * N
    out = [0] * (N + 1)
    for n in range(1, N + 1):
        power = _mul(power, gl, N)
        c = f[n]
        for i in range(N + 1):
            if power[i]:
                out[i] = out[i] + c * power[i]
    return UnivariateSeries(out[1:])


def invert_univariate(f: UnivariateSeries) -> UnivariateSeries:
    """Solve f(-g(-x)) = x for g.

    The inner series h(x) = -g(-x) is the compositional inverse of f and is
    built one degree at a time: the degree-n coefficient of f(h) is
    h_n + (terms in h_1..h_{n-1}).
    """
    if f.N < 1 or f[1] != 1:
        raise ValueError("the linear coefficient must be 1")
    N = f.N
    hcoeffs = [Fraction(1)] + [Fraction(0)] * (N - 1)
    for n in range(2, N + 1):
        trial = compose_univariate(UnivariateSeries(f.coeffs[:n]), UnivariateSeries(hcoeffs[:n]))
        hcoeffs[n - 1] = hcoeffs[n - 1] - trial[n]
    inner = UnivariateSeries(hcoeffs)
    check = compose_univariate(f, inner)
    if any(check[n] != (1 if n == 1 else 0) for n in range(1, N + 1)):
        raise InconsistentSystemError("univariate inversion did not close")
    return -inner.negate_argument()


def invert_plethystic(F: SymFunc) -> SymFunc:
    """Solve eps(F) o eps(G) = p_1 for G.

    Writing eps(F) = -p_1 + R, the degree-n slice of eps(G) equals the
    degree-n slice of R o eps(G_{<n}), because every monomial of R has degree
    at least 2.  Each step is one plethysm truncated at degree n.
    """
    N = F.N
    kind = F.kind
    p1 = SymFunc.p(1, N, kind)
    if F.constant_term() or not F.slice(1) == p1.slice(1):
        raise ValueError("the degree-1 part must be exactly p_1 with no constant term")
    eF = epsilon(F)
    R = eF + p1  # eps(F) = -p1 + R
    eG = (-p1).truncate(1)
    for n in range(2, N + 1):
        step = plethysm(R.truncate(n), eG.with_truncation(n))
        eG = eG.with_truncation(n) + step.slice(n)
    G = epsilon(eG)
    residual = plethysm(eF, epsilon(G)) - p1
    if not residual.is_zero():
        raise InconsistentSystemError(f"residual {residual} after plethystic inversion")
    return G


def compose_characters(F: SymFunc, G: SymFunc) -> SymFunc:
    """Character of the composition of S-modules: F_V o F_W."""
    return plethysm(F, G)


def koszul_residual(F: SymFunc, G: SymFunc) -> SymFunc:
    """eps(F) o eps(G) - p_1."""
    out = plethysm(epsilon(F), epsilon(G))
    return out - SymFunc.p(1, out.N, out.kind)


def dims_from_series(F: SymFunc, N: int) -> List:
    """dim V(n) for n = 1..N from a character series (q = 1)."""
    f = UnivariateSeries.from_symfunc(F.truncate(N))
    return [int(x) if Fraction(x).denominator == 1 else x for x in f.egf_values()]
