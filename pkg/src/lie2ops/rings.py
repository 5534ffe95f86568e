"""Exact coefficient arithmetic: rationals and Laurent polynomials in q.

Rationals are plain :class:`fractions.Fraction`.  ``LaurentPoly`` is an
immutable sparse map exponent -> Fraction; it mixes freely with ints and
Fractions, which act as constant polynomials.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]


class NotExactError(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def rational_to_str(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


class LaurentPoly:
    """Laurent polynomial in one variable ``q`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def lift(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(as_fraction(x))

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def min_exp(self) -> int:
        return min(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_palindromic(self) -> bool:
        """Invariant under q -> 1/q."""
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentPoly.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        return self + (-LaurentPoly.lift(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return LaurentPoly.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise NotExactError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly({e * k: Fraction(1) / c ** -k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_fraction(other))
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return LaurentPoly.const(other).exact_div(self)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises :class:`NotExactError` on remainder."""
        other = LaurentPoly.lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return self
        # long division on exponents from the top
        rem = dict(self._terms)
        dtop = other.max_exp()
        dlow = other.min_exp()
        lead = other._terms[dtop]
        quot: Dict[int, Fraction] = {}
        low_bound = min(rem) - dlow
        while rem:
            top = max(rem)
            shift = top - dtop
            if shift < low_bound:
                raise NotExactError(f"{self} is not divisible by {other}")
            c = rem[top] / lead
            quot[shift] = c
            for e, d in other._terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(quot)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            LaurentPoly.lift(other).exact_div(self)
        except NotExactError:
            return False
        return True

    # substitutions --------------------------------------------------------

    def q_power(self, k: int) -> "LaurentPoly":
        """Substitute q -> q**k for k >= 1."""
        if k < 1:
            raise ValueError(f"q-power substitution needs k >= 1, got {k}")
        if k == 1:
            return self
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def __call__(self, q):
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * Fraction(q) ** e
        return total

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # display / serialization ----------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = rational_to_str(a)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if a == 1 else f"{rational_to_str(a)}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> Dict[str, str]:
        return {str(e): rational_to_str(c) for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): Fraction(c) for e, c in obj.items()})

    def dumps(self) -> str:
        return json.dumps(self.to_json())


Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)
ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def laurent_q_power_substitute(a: LaurentPoly, k: int) -> LaurentPoly:
    return a.q_power(k)


def laurent_eval_at_one(a: LaurentPoly) -> Fraction:
    return a.at_one()


def sl2_irreducible_char(n: int) -> LaurentPoly:
    """Character of the n-dimensional irreducible SL2-module, q^(n-1) + ... + q^(1-n)."""
    if n < 1:
        raise ValueError("SL2 irreducibles have dimension >= 1")
    return LaurentPoly._raw({e: Fraction(1) for e in range(1 - n, n, 2)})


def q_bracket(k: int) -> LaurentPoly:
    """q^k - q^-k."""
    return LaurentPoly({k: 1, -k: -1})


def qsub(c, k: int):
    """q -> q^k on a coefficient of either kind; rationals are fixed."""
    if isinstance(c, LaurentPoly):
        return c.q_power(k)
    return c
