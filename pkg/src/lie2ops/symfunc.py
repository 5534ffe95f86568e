"""Truncated symmetric functions in the power-sum basis.

An element is a finite sum of monomials p_1^{n_1} ... p_k^{n_k}, each indexed
by its exponent vector ``(n_1, ..., n_k)`` (trailing zeros trimmed; the empty
tuple is the constant monomial).  An exponent vector doubles as the cycle type
of a permutation.

Coefficients are either all rationals (``kind == "rational"``) or all
:class:`~lie2ops.rings.LaurentPoly` (``kind == "laurent"``, i.e. values in the
character ring of SL2).  Every value carries a truncation degree and all
operations respect it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .rings import LaurentPoly, as_fraction, qsub, rational_to_str, sl2_irreducible_char

ExponentVector = Tuple[int, ...]

RATIONAL = "rational"
LAURENT = "laurent"


class TruncationError(ValueError):
    pass


class KindMismatchError(TypeError):
    pass


# exponent vectors -----------------------------------------------------------

def trim(v: Iterable[int]) -> ExponentVector:
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    if any(x < 0 for x in v):
        raise ValueError(f"negative multiplicity in {v}")
    return tuple(v)


@lru_cache(maxsize=None)
def degree(v: ExponentVector) -> int:
    return sum((i + 1) * m for i, m in enumerate(v))


@lru_cache(maxsize=None)
def z_factor(v: ExponentVector) -> int:
    """Centralizer order prod i^{n_i} n_i! of a permutation of cycle type v."""
    out = 1
    for i, m in enumerate(v, start=1):
        out *= i ** m * factorial(m)
    return out


def vec_add(v: ExponentVector, w: ExponentVector) -> ExponentVector:
    if len(v) < len(w):
        v, w = w, v
    return tuple(a + (w[i] if i < len(w) else 0) for i, a in enumerate(v))


def vec_scale_index(v: ExponentVector, k: int) -> ExponentVector:
    """Exponent vector of p_k o p^v, i.e. each p_i becomes p_{ik}."""
    if k == 1 or not v:
        return v
    out = [0] * (len(v) * k)
    for i, m in enumerate(v, start=1):
        out[i * k - 1] = m
    return tuple(out)


def sort_key(v: ExponentVector):
    return (degree(v), tuple(-m for m in v))


def unit_vector(i: int, m: int = 1) -> ExponentVector:
    return tuple([0] * (i - 1) + [m])


@lru_cache(maxsize=None)
def cycle_types(n: int) -> Tuple[ExponentVector, ...]:
    """All exponent vectors of degree n (conjugacy classes of S_n), sorted."""
    out: List[ExponentVector] = []

    def rec(remaining: int, largest: int, acc: Dict[int, int]):
        if remaining == 0:
            v = [0] * (max(acc) if acc else 0)
            for i, m in acc.items():
                v[i - 1] = m
            out.append(tuple(v))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc[part] = acc.get(part, 0) + 1
            rec(remaining - part, part, acc)
            acc[part] -= 1
            if not acc[part]:
                del acc[part]

    rec(n, n, {})
    return tuple(sorted(out, key=sort_key))


def parse_cycle_type(text: str) -> ExponentVector:
    return trim(int(x) for x in text.replace(" ", "").split(",") if x != "")


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# the ring -------------------------------------------------------------------

def _zero_coeff(kind: str):
    return LaurentPoly() if kind == LAURENT else Fraction(0)


def _coerce(c, kind: str):
    if kind == LAURENT:
        return LaurentPoly.lift(c)
    if isinstance(c, LaurentPoly):
        if not c.is_constant():
            raise KindMismatchError("Laurent coefficient in a rational symmetric function")
        return c.coeff(0)
    return as_fraction(c)


class SymFunc:
    """Immutable truncated symmetric function."""

    __slots__ = ("N", "kind", "_terms")

    def __init__(self, N: int, terms: Optional[Mapping] = None, kind: str = RATIONAL):
        if N < 0:
            raise TruncationError("truncation degree must be nonnegative")
        if kind not in (RATIONAL, LAURENT):
            raise ValueError(f"unknown coefficient kind {kind!r}")
        self.N = N
        self.kind = kind
        clean = {}
        for v, c in (terms or {}).items():
            v = trim(v)
            if degree(v) > N:
                continue
            c = _coerce(c, kind)
            if c:
                clean[v] = clean.get(v, _zero_coeff(kind)) + c
                if not clean[v]:
                    del clean[v]
        self._terms: Dict[ExponentVector, object] = clean

    @classmethod
    def _raw(cls, N, terms, kind):
        obj = cls.__new__(cls)
        obj.N = N
        obj.kind = kind
        obj._terms = terms
        return obj

    @classmethod
    def p(cls, i: int, N: int, kind: str = RATIONAL, coeff=1) -> "SymFunc":
        return cls(N, {unit_vector(i): coeff}, kind)

    @classmethod
    def const(cls, c, N: int, kind: str = RATIONAL) -> "SymFunc":
        return cls(N, {(): c}, kind)

    @classmethod
    def zero(cls, N: int, kind: str = RATIONAL) -> "SymFunc":
        return cls._raw(N, {}, kind)

    # access -----------------------------------------------------------------

    def coeff(self, v: Iterable[int]):
        return self._terms.get(trim(v), _zero_coeff(self.kind))

    def items(self) -> List[Tuple[ExponentVector, object]]:
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def keys(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> Optional[int]:
        if not self._terms:
            return None
        return min(degree(v) for v in self._terms)

    def constant_term(self):
        return self.coeff(())

    def slice(self, n: int) -> "SymFunc":
        """Homogeneous degree-n part."""
        return SymFunc._raw(self.N, {v: c for v, c in self._terms.items() if degree(v) == n}, self.kind)

    def truncate(self, M: int) -> "SymFunc":
        M = min(M, self.N)
        return SymFunc._raw(M, {v: c for v, c in self._terms.items() if degree(v) <= M}, self.kind)

    def with_truncation(self, M: int) -> "SymFunc":
        """Relabel with truncation degree M; only allowed if nothing is lost."""
        if any(degree(v) > M for v in self._terms):
            raise TruncationError("terms above the requested truncation degree")
        return SymFunc._raw(M, dict(self._terms), self.kind)

    def to_laurent(self) -> "SymFunc":
        if self.kind == LAURENT:
            return self
        return SymFunc._raw(self.N, {v: LaurentPoly.const(c) for v, c in self._terms.items()}, LAURENT)

    def to_rational(self) -> "SymFunc":
        if self.kind == RATIONAL:
            return self
        return SymFunc(self.N, {v: _coerce(c, RATIONAL) for v, c in self._terms.items()}, RATIONAL)

    def at_q_one(self) -> "SymFunc":
        """Specialize q = 1 (identity on rational values)."""
        if self.kind == RATIONAL:
            return self
        return SymFunc(self.N, {v: c.at_one() for v, c in self._terms.items()}, RATIONAL)

    def map_coeffs(self, fn: Callable, kind: Optional[str] = None) -> "SymFunc":
        return SymFunc(self.N, {v: fn(c) for v, c in self._terms.items()}, kind or self.kind)

    def q_coefficient_slice(self, e: int) -> "SymFunc":
        """Rational symmetric function formed by the q^e coefficients."""
        if self.kind != LAURENT:
            raise KindMismatchError("q-slices need Laurent coefficients")
        return SymFunc(self.N, {v: c.coeff(e) for v, c in self._terms.items()}, RATIONAL)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "SymFunc"):
        if not isinstance(other, SymFunc):
            raise TypeError(f"expected SymFunc, got {type(other).__name__}")
        if self.kind != other.kind:
            raise KindMismatchError(f"cannot combine {self.kind} with {other.kind} coefficients")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        self._check(other)
        N = min(self.N, other.N)
        out = {v: c for v, c in self._terms.items() if degree(v) <= N}
        for v, c in other._terms.items():
            if degree(v) > N:
                continue
            s = out[v] + c if v in out else c
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        return SymFunc._raw(N, out, self.kind)

    def __neg__(self):
        return SymFunc._raw(self.N, {v: -c for v, c in self._terms.items()}, self.kind)

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = _coerce(c, self.kind)
        if not c:
            return SymFunc.zero(self.N, self.kind)
        out = {}
        for v, d in self._terms.items():
            x = d * c
            if x:
                out[v] = x
        return SymFunc._raw(self.N, out, self.kind)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        self._check(other)
        N = min(self.N, other.N)
        out: Dict[ExponentVector, object] = {}
        right = [(w, degree(w), d) for w, d in other._terms.items()]
        for v, c in self._terms.items():
            dv = degree(v)
            if dv > N:
                continue
            for w, dw, d in right:
                if dv + dw > N:
                    continue
                key = vec_add(v, w)
                x = c * d
                if key in out:
                    x = out[key] + x
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
        return SymFunc._raw(N, out, self.kind)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, m: int) -> "SymFunc":
        out = SymFunc.const(1, self.N, self.kind)
        for _ in range(m):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.kind == other.kind and self._terms == other._terms

    def equal_upto(self, other: "SymFunc", n: int) -> bool:
        """Agreement of all homogeneous parts of degree <= n."""
        a = {v: c for v, c in self._terms.items() if degree(v) <= n}
        b = {v: c for v, c in other._terms.items() if degree(v) <= n}
        return a == b

    def __hash__(self):
        return hash((self.N, self.kind, frozenset(self._terms.items())))

    def __repr__(self):
        return f"SymFunc(N={self.N}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for v, c in self.items():
            mono = "*".join(f"p{i}" + (f"^{m}" if m > 1 else "") for i, m in enumerate(v, start=1) if m)
            cs = str(c) if self.kind == RATIONAL else f"({c})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for v, c in self.items():
            coeff = c.to_json() if self.kind == LAURENT else rational_to_str(c)
            terms.append({"exponents": list(v), "coeff": coeff})
        return {"truncation": self.N, "kind": self.kind, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymFunc":
        kind = obj["kind"]
        terms = {}
        for t in obj["terms"]:
            c = LaurentPoly.from_json(t["coeff"]) if kind == LAURENT else Fraction(t["coeff"])
            terms[tuple(t["exponents"])] = c
        return cls(int(obj["truncation"]), terms, kind)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def sym_add(a: SymFunc, b: SymFunc) -> SymFunc:
    return a + b


def sym_mul(a: SymFunc, b: SymFunc) -> SymFunc:
    return a * b


def _unify(f: SymFunc, h: SymFunc) -> Tuple[SymFunc, SymFunc]:
    # rationals embed in the character ring as constants
    if f.kind != h.kind:
        return f.to_laurent(), h.to_laurent()
    return f, h


# plethysm -------------------------------------------------------------------

def adams(h: SymFunc, k: int, N: Optional[int] = None) -> SymFunc:
    """p_k o h: every p_i becomes p_{ik} and q becomes q^k."""
    if k < 1:
        raise ValueError("p_k needs k >= 1")
    N = h.N if N is None else N
    out = {}
    for v, c in h._terms.items():
        if degree(v) * k <= N:
            out[vec_scale_index(v, k)] = qsub(c, k)
    return SymFunc._raw(N, out, h.kind)


def plethysm(f: SymFunc, h: SymFunc) -> SymFunc:
    """f o h, the ring map p_n -> h(p_n, p_2n, ...; q^n) applied to f.

    The outer coefficients of ``f`` are scalars of the character ring and are
    not substituted.  ``h`` must have zero constant term.
    """
    f, h = _unify(f, h)
    if h.constant_term():
        raise ValueError("plethysm needs an inner series with zero constant term")
    N = min(f.N, h.N)
    kind = f.kind
    powers: Dict[int, SymFunc] = {}
    for i in range(1, N + 1):
        powers[i] = adams(h, i, N)

    memo: Dict[ExponentVector, SymFunc] = {(): SymFunc.const(1, N, kind)}

    def monomial(v: ExponentVector) -> SymFunc:
        if v in memo:
            return memo[v]
        i = len(v)
        rest = list(v)
        rest[-1] -= 1
        val = monomial(trim(rest)) * powers[i]
        memo[v] = val
        return val

    acc: Dict[ExponentVector, object] = {}
    for v, c in f._terms.items():
        if degree(v) > N:
            continue
        for w, d in monomial(v)._terms.items():
            x = c * d
            if w in acc:
                x = acc[w] + x
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return SymFunc._raw(N, acc, kind)


def epsilon(f: SymFunc) -> SymFunc:
    """The involution p_n -> -p_n."""
    return SymFunc._raw(f.N, {v: (-c if sum(v) % 2 else c) for v, c in f._terms.items()}, f.kind)


def char_value(f: SymFunc, rho: Iterable[int]):
    """Character value on the class rho of the degree-|rho| part of f."""
    rho = trim(rho)
    if degree(rho) > f.N:
        raise TruncationError(f"class of degree {degree(rho)} exceeds truncation {f.N}")
    return f.coeff(rho) * z_factor(rho)


def from_class_values(n: int, values: Mapping[ExponentVector, object], N: Optional[int] = None,
                      kind: str = LAURENT) -> SymFunc:
    """Degree-n symmetric function whose character values are ``values``."""
    N = n if N is None else N
    terms = {}
    for rho, val in values.items():
        c = val * Fraction(1, z_factor(trim(rho)))
        terms[trim(rho)] = c
    return SymFunc(N, terms, kind)


def hall_inner_product(f: SymFunc, g: SymFunc, n: int):
    f, g = _unify(f, g)
    if min(f.N, g.N) < n:
        raise TruncationError("inner product above the truncation degree")
    total = _zero_coeff(f.kind)
    for rho in cycle_types(n):
        c, d = f._terms.get(rho), g._terms.get(rho)
        if c is not None and d is not None:
            total = total + c * d * z_factor(rho)
    return total


def exp_series(s: SymFunc) -> SymFunc:
    """exp(s) for s with zero constant term."""
    if s.constant_term():
        raise ValueError("exp needs zero constant term")
    N = s.N
    out = SymFunc.const(1, N, s.kind)
    term = SymFunc.const(1, N, s.kind)
    for m in range(1, N + 1):
        term = (term * s).scale(Fraction(1, m))
        if term.is_zero():
            break
        out = out + term
    return out


def log_one_minus(s: SymFunc) -> SymFunc:
    """-ln(1 - s) = sum s^m/m for s with zero constant term."""
    if s.constant_term():
        raise ValueError("log needs zero constant term")
    out = SymFunc.zero(s.N, s.kind)
    power = SymFunc.const(1, s.N, s.kind)
    for m in range(1, s.N + 1):
        power = power * s
        out = out + power.scale(Fraction(1, m))
    return out


def h_series(N: int) -> SymFunc:
    """sum_{k>=1} h_k = exp(sum p_k/k) - 1, truncated at degree N."""
    if N < 1:
        raise TruncationError("h_series needs N >= 1")
    s = SymFunc(N, {unit_vector(k): Fraction(1, k) for k in range(1, N + 1)})
    return exp_series(s) - SymFunc.const(1, N)


def h(n: int, N: Optional[int] = None) -> SymFunc:
    """Complete symmetric function h_n (h_0 = 1)."""
    N = n if N is None else N
    if n == 0:
        return SymFunc.const(1, N)
    return h_series(max(n, N)).slice(n).truncate(N)


# Moebius inversion ------------------------------------------------------------

Weight = Callable[[int], object]


def unit_weight(k: int):
    return Fraction(1)


def harmonic_weight(k: int):
    return Fraction(1, k)


def q_weight(k: int):
    """(q^k - q^-k) / (k (q - q^-1))."""
    return sl2_irreducible_char(k) * Fraction(1, k)


def moebius_forward(b: SymFunc, weight: Weight = unit_weight) -> SymFunc:
    """A = sum_k w_k p_k o B."""
    if b.constant_term():
        raise ValueError("Moebius transform needs zero constant term")
    kind = b.kind
    out = SymFunc.zero(b.N, kind)
    for k in range(1, b.N + 1):
        out = out + adams(b, k).scale(weight(k))
    return out


def moebius_invert(a: SymFunc, weight: Weight = unit_weight) -> SymFunc:
    """B = sum_k mu_k w_k p_k o A, inverse of :func:`moebius_forward`.

    Valid for weights with w_1 = 1 and w_k(q) w_l(q^k) = w_{kl}(q); the unit,
    harmonic (1/k) and q-analogue weights all qualify.
    """
    if a.constant_term():
        raise ValueError("Moebius transform needs zero constant term")
    kind = a.kind
    out = SymFunc.zero(a.N, kind)
    for k in range(1, a.N + 1):
        mu = mobius(k)
        if mu:
            out = out + adams(a, k).scale(_coerce(weight(k), kind) * mu)
    return out


def q_moebius_forward(b: SymFunc) -> SymFunc:
    return moebius_forward(b.to_laurent(), q_weight)


def q_moebius_invert(a: SymFunc) -> SymFunc:
    return moebius_invert(a.to_laurent(), q_weight)


def iter_degree(f: SymFunc, n: int) -> Iterator[Tuple[ExponentVector, object]]:
    for v, c in f.items():
        if degree(v) == n:
            yield v, c
