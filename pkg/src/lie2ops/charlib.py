"""Closed-form S_n x SL2 character series for Com, Lie, Com2, Lie2 and P2.

The authoritative Lie2 character is the coefficient formula for the auxiliary
series H together with F_Lie2 = sum_k a_k(q) p_k o H; the P2 character is the
plethysm F_Com o F_Lie2.  The per-class product formulas (``mt_*``) and the
diagonal-harmonics formula are evaluators checked against those.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .rings import (
    LaurentPoly,
    NotExactError,
    ONE,
    Q,
    QINV,
    ZERO,
    q_bracket,
    sl2_irreducible_char,
)
from .symfunc import (
    LAURENT,
    RATIONAL,
    ExponentVector,
    SymFunc,
    adams,
    char_value,
    cycle_types,
    degree,
    divisors,
    h,
    h_series,
    hall_inner_product,
    mobius,
    plethysm,
    trim,
    unit_vector,
)


class FormulaDomainError(ArithmeticError):
    """A closed formula hit a zero or non-exact denominator."""


class NotSL2CharacterError(ValueError):
    pass


def _nth(v: ExponentVector, s: int) -> int:
    return v[s - 1] if 0 < s <= len(v) else 0


# helper sequences -----------------------------------------------------------

@lru_cache(maxsize=None)
def helper_a(n: int) -> LaurentPoly:
    """a_n(q) = mu_n (q^n - q^-n) / (n (q - q^-1))."""
    if n < 1:
        raise ValueError("a_n needs n >= 1")
    num = q_bracket(n) * mobius(n)
    try:
        quot = num.exact_div(q_bracket(1))
    except NotExactError as exc:  # pragma: no cover - would be an arithmetic bug
        raise AssertionError(f"q - 1/q does not divide the numerator of a_{n}") from exc
    return quot * Fraction(1, n)


@lru_cache(maxsize=None)
def helper_c(n: int) -> LaurentPoly:
    """c_n(q) = sum_{d | n} (q^d / d) a_{n/d}(q^d)."""
    out = ZERO
    for d in divisors(n):
        out = out + LaurentPoly.monomial(d, Fraction(1, d)) * helper_a(n // d).q_power(d)
    return out


@lru_cache(maxsize=None)
def helper_d(n: int) -> LaurentPoly:
    """d_n(q) = sum_{d | n} (1/d) a_{n/d}(q^d)."""
    out = ZERO
    for d in divisors(n):
        out = out + helper_a(n // d).q_power(d) * Fraction(1, d)
    return out


def _c_sum(v: ExponentVector, s: int, proper: bool, step: int = 1) -> LaurentPoly:
    """sum over d | s (d != s if proper, step | d) of n_d c_{s/d}(q^d)."""
    out = ZERO
    for d in divisors(s):
        if proper and d == s:
            continue
        if d % step:
            continue
        nd = _nth(v, d)
        if nd:
            out = out + helper_c(s // d).q_power(d) * nd
    return out


# classical series -------------------------------------------------------------

def f_com_char(N: int) -> SymFunc:
    return h_series(N)


def f_lie_char(N: int) -> SymFunc:
    """sum_n (1/n) sum_{k | n} mu_k p_k^{n/k}."""
    if N < 1:
        raise ValueError("N >= 1 required")
    terms = {}
    for n in range(1, N + 1):
        for k in divisors(n):
            mu = mobius(k)
            if mu:
                terms[unit_vector(k, n // k)] = Fraction(mu, n)
    return SymFunc(N, terms, RATIONAL)


def f_com2_char(N: int) -> SymFunc:
    """sum_n [n]_q h_n with [n]_q the character of the n-dimensional SL2 irreducible."""
    hs = h_series(N)
    terms = {v: sl2_irreducible_char(degree(v)) * c for v, c in hs.items()}
    return SymFunc(N, terms, LAURENT)


# the auxiliary series H and the Lie2 / P2 characters ---------------------------

def ll1_coefficient(v: ExponentVector) -> LaurentPoly:
    """Coefficient of p^v in H; zero unless n_1 > 0."""
    v = trim(v)
    n1 = _nth(v, 1)
    if n1 == 0:
        return ZERO
    denom = 1
    for m in v:
        denom *= factorial(m)
    out = LaurentPoly.const(Fraction(1, denom))
    for l in range(1, n1):
        out = out * LaurentPoly({1: n1 - l, -1: l})
    for s in range(2, len(v) + 1):
        ns = _nth(v, s)
        full = _c_sum(v, s, proper=False)
        proper = _c_sum(v, s, proper=True)
        b = q_bracket(s)
        num = proper
        for l in range(1, ns + 1):
            num = num * (full - b * l)
        den = proper + LaurentPoly.monomial(-s, ns)
        if ns == 0 and den.is_zero():
            # empty residue factor; the ratio is 1 by convention
            continue
        try:
            factor = num.exact_div(den)
        except (NotExactError, ZeroDivisionError) as exc:
            raise FormulaDomainError(f"fraction factor of the H coefficient at {v}, s={s}: {exc}") from exc
        out = out * factor
    return out


@lru_cache(maxsize=None)
def h_series_ll1(N: int) -> SymFunc:
    terms = {}
    for n in range(1, N + 1):
        for v in cycle_types(n):
            if _nth(v, 1):
                c = ll1_coefficient(v)
                if c:
                    terms[v] = c
    return SymFunc(N, terms, LAURENT)


@lru_cache(maxsize=None)
def f_lie2_char(N: int) -> SymFunc:
    """F_Lie2 = sum_k a_k(q) p_k o H."""
    H = h_series_ll1(N)
    out = SymFunc.zero(N, LAURENT)
    for k in range(1, N + 1):
        a = helper_a(k)
        if a:
            out = out + adams(H, k).scale(a)
    return out


@lru_cache(maxsize=None)
def f_p2_char(N: int) -> SymFunc:
    return plethysm(f_com_char(N), f_lie2_char(N))


def series_for(operad: str, N: int) -> SymFunc:
    if operad == "lie2":
        return f_lie2_char(N)
    if operad == "p2":
        return f_p2_char(N)
    if operad == "com2":
        return f_com2_char(N)
    if operad == "lie":
        return f_lie_char(N)
    if operad == "com":
        return f_com_char(N)
    raise ValueError(f"unknown operad {operad!r}")


def dimension(series: SymFunc, n: int) -> Fraction:
    """dim of the arity-n component: value at the identity, q = 1."""
    val = char_value(series, (n,))
    if isinstance(val, LaurentPoly):
        return val.at_one()
    return val


# per-class product formulas -----------------------------------------------------

@dataclass
class MTEvaluation:
    """Printed and calibrated evaluations of a per-class product formula."""

    rho: ExponentVector
    calibrated: Optional[LaurentPoly]
    printed: Optional[LaurentPoly]
    printed_error: Optional[str] = None


def _safe_div(num: LaurentPoly, den: LaurentPoly, where: str) -> LaurentPoly:
    try:
        return num.exact_div(den)
    except ZeroDivisionError as exc:
        raise FormulaDomainError(f"zero denominator in {where}") from exc
    except NotExactError as exc:
        raise FormulaDomainError(f"non-exact division in {where}: {exc}") from exc


def _p2_value(v: ExponentVector, fraction_from: int) -> LaurentPoly:
    # numerator and denominator are accumulated separately; only the whole
    # product has to divide exactly
    n = degree(v)
    num_total = ONE
    den_total = ONE
    for s in range(1, len(v) + 1):
        ns = _nth(v, s)
        if not ns:
            continue
        base = _c_sum(v, s, proper=False) * s + helper_d(s) * s
        b = q_bracket(s)
        for m in range(1, ns + 1):
            num_total = num_total * (base - b * (s * m))
    for s in range(fraction_from, n + 1):
        ns = _nth(v, s)
        num = _c_sum(v, s, proper=True) + helper_d(s)
        den = num + LaurentPoly.monomial(-s, ns)
        if ns == 0:
            # X / X
            continue
        if den.is_zero():
            raise FormulaDomainError(f"zero denominator in P2 fraction at s={s}")
        num_total = num_total * num
        den_total = den_total * den
    return _safe_div(num_total, den_total, f"P2 product formula at {v}")


def mt_p2_value(rho: Iterable[int], convention: str = "calibrated") -> LaurentPoly:
    """Per-class P2 character from the product formula.

    ``convention="calibrated"`` takes the fraction product over s >= 1;
    ``"printed"`` starts it at s = 2.
    """
    v = _check_class(rho)
    if convention == "calibrated":
        return _p2_value(v, 1)
    if convention == "printed":
        return _p2_value(v, 2)
    raise ValueError(f"unknown convention {convention!r}")


def mt_lie2_value(rho: Iterable[int], convention: str = "calibrated") -> LaurentPoly:
    """Per-class Lie2 character from the product formula.

    The calibrated form skips s = k in the second product and multiplies by
    k^{n_k}; the printed form keeps s = k (where the trailing sum is empty).
    """
    v = _check_class(rho)
    k = next(i for i, m in enumerate(v, start=1) if m)
    if any(m and s % k for s, m in enumerate(v, start=1)):
        return ZERO
    nk = v[k - 1]
    out = helper_a(k)
    for j in range(1, nk):
        out = out * LaurentPoly({k: nk - j, -k: j})
    if convention == "calibrated":
        out = out * (k ** nk)
    elif convention != "printed":
        raise ValueError(f"unknown convention {convention!r}")
    for s in range(2, len(v) + 1):
        ns = _nth(v, s)
        if not ns:
            continue
        if s == k and convention == "calibrated":
            continue
        full = _c_sum(v, s, proper=False, step=k) * s
        b = q_bracket(s)
        for m in range(1, ns):
            out = out * (full - b * (s * m))
        out = out * (_c_sum(v, s, proper=True, step=k) * s)
    return out


def mt_evaluate(operad: str, rho: Iterable[int]) -> MTEvaluation:
    fn = {"lie2": mt_lie2_value, "p2": mt_p2_value}[operad]
    v = _check_class(rho)
    calibrated = fn(v, "calibrated")
    try:
        printed, err = fn(v, "printed"), None
    except FormulaDomainError as exc:
        printed, err = None, str(exc)
    return MTEvaluation(v, calibrated, printed, err)


def _check_class(rho: Iterable[int]) -> ExponentVector:
    v = trim(rho)
    if not v or degree(v) < 1:
        raise ValueError("a cycle type needs at least one cycle")
    return v


# diagonal harmonics -------------------------------------------------------------

def diag_harmonics_value(rho: Iterable[int]) -> Union[LaurentPoly, Tuple[LaurentPoly, LaurentPoly]]:
    """Character of diagonal harmonics on the class rho.

    Returns a Laurent polynomial when the quotient is exact, otherwise the
    pair (numerator, denominator).
    """
    v = _check_class(rho)
    n = degree(v)
    sign = (-1) ** sum((m - 1) * nm for m, nm in enumerate(v, start=1))
    num = LaurentPoly.monomial(-(n * (n - 1) // 2), sign)
    for m, nm in enumerate(v, start=1):
        if nm:
            geom = LaurentPoly({m * j: 1 for j in range(n + 1)})
            num = num * geom ** nm
    den = LaurentPoly({j: 1 for j in range(n + 1)})
    try:
        return num.exact_div(den)
    except NotExactError:
        return num, den


# identity characters ---------------------------------------------------------------

def identity_qchar_product(operad: str, n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("n >= 1 required")
    out = ONE
    for k in range(1, n):
        if operad == "lie2":
            out = out * LaurentPoly({1: k, -1: n - k})
        elif operad == "p2":
            out = out * LaurentPoly({1: k, 0: 1, -1: n - k})
        else:
            raise ValueError(f"unknown operad {operad!r}")
    return out


# SL2 decomposition -------------------------------------------------------------------

def sl2_decompose(chi: LaurentPoly) -> Dict[int, int]:
    """Multiplicities {dimension: multiplicity} of SL2 irreducibles in chi."""
    chi = LaurentPoly.lift(chi)
    if not chi.is_palindromic():
        raise NotSL2CharacterError(f"{chi} is not symmetric under q -> 1/q")
    for e, c in chi.items():
        if c.denominator != 1:
            raise NotSL2CharacterError(f"non-integer coefficient {c} at q^{e}")
    out = {}
    if chi.is_zero():
        return out
    for w in range(chi.max_exp(), -1, -1):
        m = chi.coeff(w) - chi.coeff(w + 2)
        if m < 0:
            raise NotSL2CharacterError(f"negative multiplicity at weight {w}")
        if m:
            out[w + 1] = int(m)
    return out


# multiplicities ------------------------------------------------------------------------

@dataclass
class MultiplicityCheck:
    name: str
    expected: object
    actual: object
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return (not self.applicable) or self.expected == self.actual


@dataclass
class MultiplicityReport:
    operad: str
    n: int
    checks: List[MultiplicityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _standard_rep(n: int) -> SymFunc:
    return h(n - 1, n) * h(1, n) - h(n, n)


def multiplicity_report(operad: str, n: int, series: Optional[SymFunc] = None) -> MultiplicityReport:
    """Compare isotypic components of the arity-n piece with their expected values."""
    if n < 2:
        raise ValueError("multiplicity checks need n >= 2")
    if operad not in ("lie2", "p2"):
        raise ValueError(f"unknown operad {operad!r}")
    F = (series if series is not None else series_for(operad, n)).slice(n).truncate(n)
    rep = MultiplicityReport(operad, n)
    sym = Q + QINV

    triv = hall_inner_product(F, h(n, n), n)
    rep.checks.append(MultiplicityCheck("trivial", ZERO if operad == "lie2" else ONE, triv))

    std = hall_inner_product(F, _standard_rep(n), n)
    if operad == "lie2":
        expected = sym ** (n - 1)
    else:
        expected = ZERO
        for j in range(1, n):
            expected = expected + sym ** j
    rep.checks.append(MultiplicityCheck("standard", expected, std))

    lie_n = f_lie_char(n).slice(n)
    top = F.q_coefficient_slice(n - 1)
    rep.checks.append(MultiplicityCheck("top_weight", lie_n, top))

    if operad == "lie2":
        nxt = F.q_coefficient_slice(n - 3) - top
        expected = SymFunc.zero(n, RATIONAL)
        FL = f_lie_char(n)
        for k in range(2, n):
            expected = expected + SymFunc.p(1, n) ** (n - k) * FL.slice(k)
        rep.checks.append(MultiplicityCheck("next_weight", expected.slice(n), nxt))
    else:
        rep.checks.append(MultiplicityCheck("next_weight", None, None, applicable=False))
    return rep


# residues ----------------------------------------------------------------------------------

def residue_lemma(a, b, n: int) -> Fraction:
    """res exp(az)/(exp(bz)-1)^n dz = (a-b)(a-2b)...(a-(n-1)b) / (b^n (n-1)!)."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    if n < 1:
        raise ValueError("n >= 1 required")
    num = Fraction(1)
    for j in range(1, n):
        num *= a - j * b
    return num / (b ** n * factorial(n - 1))


def residue_series(a, b, n: int) -> Fraction:
    """Same residue by expanding the Laurent series in z."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    if n < 1:
        raise ValueError("n >= 1 required")
    M = n  # need the coefficient of z^(n-1) in exp(az) * u(z)^-n
    # u(z) = (exp(bz) - 1)/(bz) = sum b^j z^j / (j+1)!
    u = [b ** j / factorial(j + 1) for j in range(M)]
    # reciprocal of u
    inv = [Fraction(0)] * M
    inv[0] = 1 / u[0]
    for k in range(1, M):
        inv[k] = -sum(u[j] * inv[k - j] for j in range(1, k + 1)) / u[0]
    power = [Fraction(1)] + [Fraction(0)] * (M - 1)
    for _ in range(n):
        power = [sum(power[i] * inv[k - i] for i in range(k + 1)) for k in range(M)]
    ex = [a ** j / factorial(j) for j in range(M)]
    coeff = sum(ex[i] * power[n - 1 - i] for i in range(n))
    return coeff / b ** n
