"""Recursive monomial basis B(A) of Lie2 and the induced basis of P2.

For A = {a_1 < ... < a_n}, B(A) consists of

* {a_i, b'}_1 with i < n and b' in B(A minus a_i), and
* {b_1, b_2}_2 with A = A_1 + A_2, a_n in A_2, b_1 in B(A_1) whose root is a
  generator or a type-1 bracket, and b_2 in B(A_2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from .freealg import Tree, bidegree, build_quotient, canonicalize, format_tree, is_leaf, relabel
from .linalg import rank_of


def _ordered(A: Sequence[int]) -> Tuple[int, ...]:
    labels = tuple(A)
    if not labels:
        raise ValueError("the generator set must be nonempty")
    if any(x >= y for x, y in zip(labels, labels[1:])):
        raise ValueError(f"generators must be strictly increasing: {labels}")
    return labels


@lru_cache(maxsize=None)
def _standard_B(n: int) -> Tuple[Tree, ...]:
    """B({1, ..., n}) with raw (uncanonicalized) orientation."""
    return tuple(_build(tuple(range(1, n + 1))))


def _B_of(labels: Tuple[int, ...]) -> List[Tree]:
    std = _standard_B(len(labels))
    mapping = {i: a for i, a in enumerate(labels, start=1)}
    return [relabel(t, mapping) for t in std]


def _build(A: Tuple[int, ...]) -> List[Tree]:
    n = len(A)
    if n == 1:
        return [A[0]]
    out: List[Tree] = []
    for i in range(n - 1):
        rest = A[:i] + A[i + 1:]
        for b in _B_of(rest):
            out.append((1, A[i], b))
    head = A[:-1]
    for r in range(1, n):
        for A1 in combinations(head, r):
            A2 = tuple(x for x in A if x not in A1)
            left = [b for b in _B_of(A1) if is_leaf(b) or b[0] == 1]
            right = _B_of(A2)
            for b1 in left:
                for b2 in right:
                    out.append((2, b1, b2))
    return out


def enumerate_B(A: Sequence[int]) -> List[Tree]:
    """The family B(A), as canonical monomials."""
    labels = _ordered(A)
    return [canonicalize(t)[0] for t in _B_of(labels)]


def count_B(n: int) -> int:
    return len(_standard_B(n))


@dataclass
class IndependenceReport:
    n: int
    size: int
    rank: int
    dimension: int

    @property
    def passed(self) -> bool:
        return self.size == self.rank == self.dimension


def verify_independence(A: Sequence[int]) -> IndependenceReport:
    """Rank of the images of B(A) in the quotient model of Lie2(|A|)."""
    labels = _ordered(A)
    n = len(labels)
    model = build_quotient(n)
    to_std = {a: i for i, a in enumerate(labels, start=1)}
    col: Dict[Tree, int] = {}
    rows = []
    for t in _B_of(labels):
        coords = model.reduce_tree(relabel(t, to_std))
        row = {}
        for m, c in coords.items():
            row[col.setdefault(m, len(col))] = c
        rows.append(row)
    return IndependenceReport(n, len(rows), rank_of(rows), model.dimension)


def bidegree_counts(A: Sequence[int]) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for t in enumerate_B(A):
        bd = bidegree(t)
        out[bd] = out.get(bd, 0) + 1
    return out


# P2 ------------------------------------------------------------------------------

def set_partitions(items: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Set partitions with blocks ordered by their smallest element."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            block = (first,) + extra
            remaining = [x for x in rest if x not in extra]
            for tail in set_partitions(remaining):
                yield [block] + tail


def enumerate_p2_basis(A: Sequence[int]) -> List[Tuple[Tree, ...]]:
    """Products b_1 * ... * b_k, b_j in B(A_j), over set partitions of A."""
    labels = _ordered(A)
    out = []
    for blocks in set_partitions(labels):
        factors = [enumerate_B(b) for b in blocks]
        acc: List[Tuple[Tree, ...]] = [()]
        for f in factors:
            acc = [prefix + (b,) for prefix in acc for b in f]
        out.extend(acc)
    return out


def count_p2_basis(n: int) -> int:
    total = 0
    for blocks in set_partitions(range(1, n + 1)):
        prod = 1
        for b in blocks:
            prod *= count_B(len(b))
        total += prod
    return total


def format_p2(element: Tuple[Tree, ...], prefix: str = "a") -> str:
    return "*".join(format_tree(t, prefix) for t in element)
