"""Brute-force model of Lie2(n), the multilinear part of the free algebra with
two compatible brackets.

A monomial is a binary tree: a leaf is an ``int`` label, an internal node is a
tuple ``(t, left, right)`` with bracket type ``t`` in {1, 2}.  Canonical
orientation puts the subtree with the smaller minimal leaf on the left; every
flip costs a sign since both brackets are skew.

Lie2(n) is the span of canonical monomials modulo all instances of the two
Jacobi identities and the six-term compatibility relation.  Relations are
bihomogeneous in (number of type-1 brackets, number of type-2 brackets), so
the quotient is computed block by block.
"""

from __future__ import annotations

import hashlib
import logging
import os
import pickle
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import SparseEchelon
from .rings import LaurentPoly
from .symfunc import LAURENT, ExponentVector, SymFunc, cycle_types, from_class_values, trim

log = logging.getLogger(__name__)

Tree = Union[int, tuple]
Bidegree = Tuple[int, int]

MAX_ARITY = 6
CACHE_ENV = "LIE2OPS_CACHE_DIR"


class ArityLimitError(ValueError):
    pass


# trees ---------------------------------------------------------------------------

def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def min_leaf(t: Tree) -> int:
    while not is_leaf(t):
        t = t[1]
    return t


def leaves(t: Tree) -> List[int]:
    if is_leaf(t):
        return [t]
    return leaves(t[1]) + leaves(t[2])


def bracket(t: int, x: Tree, y: Tree) -> tuple:
    return (t, x, y)


def canonicalize(t: Tree) -> Tuple[Tree, int]:
    """Flip nodes into canonical orientation; returns (tree, (-1)^flips)."""
    if is_leaf(t):
        return t, 1
    typ, x, y = t
    x, sx = canonicalize(x)
    y, sy = canonicalize(y)
    sign = sx * sy
    if min_leaf(x) > min_leaf(y):
        x, y = y, x
        sign = -sign
    return (typ, x, y), sign


def bidegree(t: Tree) -> Bidegree:
    if is_leaf(t):
        return (0, 0)
    a = bidegree(t[1])
    b = bidegree(t[2])
    return (a[0] + b[0] + (t[0] == 1), a[1] + b[1] + (t[0] == 2))


def weight(bd: Bidegree) -> int:
    """Torus weight of a bidegree."""
    return bd[0] - bd[1]


def relabel(t: Tree, sigma: Mapping[int, int]) -> Tree:
    if is_leaf(t):
        return sigma[t]
    return (t[0], relabel(t[1], sigma), relabel(t[2], sigma))


def format_tree(t: Tree, prefix: str = "a") -> str:
    if is_leaf(t):
        return f"{prefix}{t}"
    return "{" + format_tree(t[1], prefix) + "," + format_tree(t[2], prefix) + "}_" + str(t[0])


def parse_tree(text: str, prefix: str = "a") -> Tree:
    """Inverse of :func:`format_tree`."""
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if text[pos] == "{":
            pos += 1
            left = parse()
            assert text[pos] == ","
            pos += 1
            right = parse()
            assert text[pos:pos + 2] == "}_"
            pos += 2
            typ = int(text[pos])
            pos += 1
            return (typ, left, right)
        assert text.startswith(prefix, pos)
        pos += len(prefix)
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        return int(text[start:pos])

    out = parse()
    if pos != len(text):
        raise ValueError(f"trailing text in {text!r}")
    return out


@lru_cache(maxsize=None)
def _trees_on(labels: Tuple[int, ...]) -> Tuple[Tree, ...]:
    if len(labels) == 1:
        return (labels[0],)
    first, rest = labels[0], labels[1:]
    out = []
    for r in range(0, len(rest)):
        for extra in combinations(rest, r):
            left_set = (first,) + extra
            right_set = tuple(x for x in rest if x not in extra)
            for x in _trees_on(left_set):
                for y in _trees_on(right_set):
                    out.append((1, x, y))
                    out.append((2, x, y))
    return tuple(out)


def _check_arity(n: int):
    if n < 1:
        raise ValueError("arity must be >= 1")
    if n > MAX_ARITY:
        raise ArityLimitError(f"arity {n} exceeds the brute-force limit {MAX_ARITY}")


def enumerate_monomials(n: int, labels: Optional[Sequence[int]] = None) -> List[Tree]:
    """All canonical monomials on n distinct labels (default 1..n)."""
    _check_arity(n)
    labels = tuple(sorted(labels)) if labels is not None else tuple(range(1, n + 1))
    return list(_trees_on(labels))


# relations -----------------------------------------------------------------------

HOLE = None


def _subtree(t: Tree, path: Tuple[int, ...]) -> Tree:
    for step in path:
        t = t[1 + step]
    return t


def _replace(t: Tree, path: Tuple[int, ...], new: Tree) -> Tree:
    if not path:
        return new
    typ, x, y = t
    if path[0] == 0:
        return (typ, _replace(x, path[1:], new), y)
    return (typ, x, _replace(y, path[1:], new))


def _internal_paths(t: Tree, path=()) -> Iterator[Tuple[int, ...]]:
    if is_leaf(t):
        return
    yield path
    yield from _internal_paths(t[1], path + (0,))
    yield from _internal_paths(t[2], path + (1,))


def jacobi_terms(x: Tree, y: Tree, z: Tree, t: int) -> List[Tuple[Tree, int]]:
    """{x,{y,z}_t}_t + {y,{z,x}_t}_t + {z,{x,y}_t}_t."""
    return [((t, a, (t, b, c)), 1) for a, b, c in ((x, y, z), (y, z, x), (z, x, y))]


def six_term_terms(x: Tree, y: Tree, z: Tree) -> List[Tuple[Tree, int]]:
    out = []
    for outer, inner in ((2, 1), (1, 2)):
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            out.append(((outer, a, (inner, b, c)), 1))
    return out


def relation_vectors(n: int, monomials: Optional[List[Tree]] = None) -> List[Dict[Tree, int]]:
    """Spanning set of the arity-n part of the ideal.

    For every monomial and every node with an internal child, the pattern
    {X,{Y,Z}} in its context yields the Jacobi-1, Jacobi-2 and six-term
    instances on (X, Y, Z).  Duplicate patterns are emitted once.
    """
    if n < 3:
        return []
    monomials = monomials if monomials is not None else enumerate_monomials(n)
    seen = set()
    out = []
    for m in monomials:
        for path in _internal_paths(m):
            node = _subtree(m, path)
            for side in (0, 1):
                child = node[1 + side]
                if is_leaf(child):
                    continue
                x = node[2 - side]
                y, z = child[1], child[2]
                context = _replace(m, path, HOLE)
                key = (context, frozenset((x, y, z)))
                if key in seen:
                    continue
                seen.add(key)
                for terms in (jacobi_terms(x, y, z, 1), jacobi_terms(x, y, z, 2), six_term_terms(x, y, z)):
                    vec: Dict[Tree, int] = {}
                    for sub, coeff in terms:
                        csub, sign = canonicalize(sub)
                        full = _replace(m, path, csub)
                        vec[full] = vec.get(full, 0) + sign * coeff
                    vec = {k: v for k, v in vec.items() if v}
                    if vec:
                        bds = {bidegree(k) for k in vec}
                        assert len(bds) == 1, "relation is not bihomogeneous"
                        out.append(vec)
    return out


# the quotient ---------------------------------------------------------------------

class QuotientModel:
    """Lie2(n) as span(monomials) / span(relations), one echelon form per bidegree."""

    def __init__(self, n: int):
        _check_arity(n)
        self.n = n
        mons = enumerate_monomials(n)
        self.blocks: Dict[Bidegree, List[Tree]] = {}
        for m in mons:
            self.blocks.setdefault(bidegree(m), []).append(m)
        if n == 1:
            self.blocks = {(0, 0): mons}
        self.index: Dict[Tree, Tuple[Bidegree, int]] = {}
        for bd, ms in self.blocks.items():
            for i, m in enumerate(ms):
                self.index[m] = (bd, i)
        self.echelons: Dict[Bidegree, SparseEchelon] = {bd: SparseEchelon() for bd in self.blocks}
        self.relation_count = 0
        for rel in relation_vectors(n, mons):
            bd = bidegree(next(iter(rel)))
            row = {self.index[m][1]: c for m, c in rel.items()}
            self.echelons[bd].add(row)
            self.relation_count += 1
        for ech in self.echelons.values():
            ech.back_substitute()
        self.basis: Dict[Bidegree, List[int]] = {
            bd: self.echelons[bd].free_columns(range(len(ms))) for bd, ms in self.blocks.items()
        }

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def bidegree_dims(self) -> Dict[Bidegree, int]:
        return {bd: len(b) for bd, b in sorted(self.basis.items(), reverse=True)}

    def basis_monomials(self) -> List[Tree]:
        out = []
        for bd in sorted(self.basis, reverse=True):
            out.extend(self.blocks[bd][i] for i in self.basis[bd])
        return out

    def torus_character(self) -> LaurentPoly:
        return LaurentPoly({weight(bd): len(b) for bd, b in self.basis.items()})

    def reduce(self, vec: Mapping[Tree, Fraction]) -> Dict[Tree, Fraction]:
        """Normal form of a combination of canonical monomials (free monomials only)."""
        rows: Dict[Bidegree, Dict[int, Fraction]] = {}
        for m, c in vec.items():
            bd, i = self.index[m]
            row = rows.setdefault(bd, {})
            row[i] = row.get(i, 0) + c
        out: Dict[Tree, Fraction] = {}
        for bd, row in rows.items():
            for i, c in self.echelons[bd].reduce(row).items():
                out[self.blocks[bd][i]] = c
        return out

    def reduce_tree(self, t: Tree) -> Dict[Tree, Fraction]:
        """Normal form of an arbitrary (not necessarily canonical) monomial."""
        ct, sign = canonicalize(t)
        return self.reduce({ct: Fraction(sign)})

    def coordinates(self, vec: Mapping[Tree, Fraction]) -> Dict[Tree, Fraction]:
        return self.reduce(vec)


def _schema_hash() -> str:
    src = Path(__file__).read_bytes()
    return hashlib.sha256(src).hexdigest()[:16]


def _cache_path(n: int) -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"lie2_quotient_n{n}_{_schema_hash()}.pickle"


@lru_cache(maxsize=None)
def build_quotient(n: int) -> QuotientModel:
    path = _cache_path(n)
    if path is not None and path.exists():
        with path.open("rb") as fh:
            return pickle.load(fh)
    log.info("building Lie2(%d) quotient", n)
    model = QuotientModel(n)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("wb") as fh:
            pickle.dump(model, fh)
    return model


# characters ---------------------------------------------------------------------

def permutation_of_type(rho: ExponentVector) -> Dict[int, int]:
    """A permutation of 1..n with cycle type rho, as a dict i -> sigma(i)."""
    sigma = {}
    nxt = 1
    for length, count in enumerate(trim(rho), start=1):
        for _ in range(count):
            cyc = list(range(nxt, nxt + length))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                sigma[a] = b
            nxt += length
    return sigma


def cycle_type_of(sigma: Mapping[int, int]) -> ExponentVector:
    seen = set()
    counts: Dict[int, int] = {}
    for start in sigma:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = sigma[x]
            length += 1
        counts[length] = counts.get(length, 0) + 1
    v = [0] * max(counts)
    for length, c in counts.items():
        v[length - 1] = c
    return tuple(v)


def as_mapping(sigma) -> Dict[int, int]:
    if isinstance(sigma, Mapping):
        return dict(sigma)
    return {i: int(s) for i, s in enumerate(sigma, start=1)}


def character_on(model: QuotientModel, sigma) -> LaurentPoly:
    """Trace of sigma on Lie2(n), graded by torus weight."""
    sigma = as_mapping(sigma)
    if sorted(sigma) != list(range(1, model.n + 1)) or sorted(sigma.values()) != list(range(1, model.n + 1)):
        raise ValueError(f"not a permutation of 1..{model.n}")
    traces: Dict[int, Fraction] = {}
    for bd, cols in model.basis.items():
        block = model.blocks[bd]
        ech = model.echelons[bd]
        total = Fraction(0)
        for i in cols:
            image, sign = canonicalize(relabel(block[i], sigma))
            j = model.index[image][1]
            reduced = ech.reduce({j: sign})
            total += reduced.get(i, 0)
        if total:
            w = weight(bd)
            traces[w] = traces.get(w, 0) + total
    return LaurentPoly(traces)


def class_values(n: int) -> Dict[ExponentVector, LaurentPoly]:
    model = build_quotient(n)
    return {rho: character_on(model, permutation_of_type(rho)) for rho in cycle_types(n)}


def full_character(n: int, N: Optional[int] = None) -> SymFunc:
    """Degree-n slice of the Lie2 character series, computed from traces."""
    return from_class_values(n, class_values(n), N=N, kind=LAURENT)


def brute_series(N: int) -> SymFunc:
    """Sum of full_character(n) for n = 1..N."""
    out = SymFunc.zero(N, LAURENT)
    for n in range(1, N + 1):
        out = out + full_character(n, N)
    return out


def random_conjugate(sigma: Mapping[int, int], rng: random.Random) -> Dict[int, int]:
    """tau sigma tau^-1 for a random tau."""
    pts = sorted(sigma)
    img = pts[:]
    rng.shuffle(img)
    tau = dict(zip(pts, img))
    return {tau[i]: tau[sigma[i]] for i in pts}
