"""Operadic partition posets Pi_n(Com2) and their order complexes.

An element is a set partition of {1..n} with one Com2 monomial per block.  A
Com2 monomial on a block B is determined by the number t of first-type
products it uses, 0 <= t <= |B| - 1, and composition adds these numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .basis import set_partitions
from .linalg import rank_of

MAX_POSET_N = 5
DEFAULT_CHAIN_BUDGET = 400_000


class BudgetExceeded(RuntimeError):
    pass


class Com2Element(NamedTuple):
    support: Tuple[int, ...]
    label: int


PosetElement = Tuple[Com2Element, ...]


class Com2Operad:
    """Label set and composition of Com2; the poset only talks to this interface."""

    name = "com2"

    def labels(self, size: int) -> range:
        return range(size)

    def compose(self, outer: int, inner: Sequence[int]) -> int:
        return outer + sum(inner)


COM2 = Com2Operad()


def make_element(blocks: Iterable[Tuple[Iterable[int], int]]) -> PosetElement:
    out = []
    for support, label in blocks:
        s = tuple(sorted(support))
        if not s or not 0 <= label <= len(s) - 1:
            raise ValueError(f"invalid label {label} on block {s}")
        out.append(Com2Element(s, label))
    return tuple(sorted(out))


def build_poset(n: int, operad: Com2Operad = COM2) -> List[PosetElement]:
    if not 1 <= n <= MAX_POSET_N:
        raise ValueError(f"n must be in 1..{MAX_POSET_N}, got {n}")
    out = []
    for blocks in set_partitions(range(1, n + 1)):
        for labels in product(*(operad.labels(len(b)) for b in blocks)):
            out.append(tuple(Com2Element(b, t) for b, t in zip(blocks, labels)))
    return out


def _constituents(x: PosetElement, y: PosetElement) -> Optional[List[Tuple[Com2Element, List[Com2Element]]]]:
    # the x-blocks inside each y-block, or None if x does not refine y
    where = {}
    for j, blk in enumerate(y):
        for a in blk.support:
            where[a] = j
    parts: List[List[Com2Element]] = [[] for _ in y]
    for blk in x:
        owners = {where[a] for a in blk.support}
        if len(owners) != 1:
            return None
        parts[owners.pop()].append(blk)
    return list(zip(y, parts))


def less_than(x: PosetElement, y: PosetElement, operad: Com2Operad = COM2) -> bool:
    if x == y:
        return False
    groups = _constituents(x, y)
    if groups is None:
        return False
    for yb, xs in groups:
        inner = [b.label for b in xs]
        if yb.label not in {operad.compose(eta, inner) for eta in operad.labels(len(xs))}:
            return False
    return True


def covers(x: PosetElement, y: PosetElement, operad: Com2Operad = COM2) -> bool:
    """y covers x: two blocks of x merge by a single binary product."""
    if len(y) != len(x) - 1:
        return False
    groups = _constituents(x, y)
    if groups is None:
        return False
    for yb, xs in groups:
        if len(xs) == 1:
            if xs[0] != yb:
                return False
        elif yb.label not in {operad.compose(eta, [b.label for b in xs]) for eta in operad.labels(2)}:
            return False
    return True


def format_element(x: PosetElement) -> str:
    return "".join("{" + ",".join(map(str, b.support)) + f"|{b.label}" + "}" for b in x)


def parse_element(text: str) -> PosetElement:
    blocks = []
    for chunk in text.strip().strip("{}").split("}{"):
        support, label = chunk.split("|")
        blocks.append(([int(a) for a in support.split(",")], int(label)))
    return make_element(blocks)


# finite posets --------------------------------------------------------------------

@dataclass
class FinitePoset:
    """Elements with a strict order given as upward sets of indices."""

    elements: List
    above: List[frozenset]
    _covers: Optional[List[frozenset]] = field(default=None, repr=False)

    @classmethod
    def from_relation(cls, elements: Sequence, lt) -> "FinitePoset":
        els = list(elements)
        above = [frozenset(j for j, b in enumerate(els) if lt(a, b)) for a in els]
        return cls(els, above)

    @classmethod
    def partition_poset(cls, n: int) -> "FinitePoset":
        return cls.from_relation(build_poset(n), less_than)

    def __len__(self):
        return len(self.elements)

    def lt(self, i: int, j: int) -> bool:
        return j in self.above[i]

    @property
    def upper_covers(self) -> List[frozenset]:
        if self._covers is None:
            self._covers = [
                frozenset(j for j in up if not any(j in self.above[k] for k in up))
                for up in self.above
            ]
        return self._covers

    def segment(self, i: int, j: int) -> "FinitePoset":
        """The closed segment [i, j] as a subposet."""
        idx = [k for k in range(len(self)) if k in (i, j) or (self.lt(i, k) and self.lt(k, j))]
        pos = {k: a for a, k in enumerate(idx)}
        above = [frozenset(pos[m] for m in self.above[k] if m in pos) for k in idx]
        return FinitePoset([self.elements[k] for k in idx], above)

    def open_interval(self, i: int, j: int) -> "FinitePoset":
        idx = [k for k in range(len(self)) if self.lt(i, k) and self.lt(k, j)]
        pos = {k: a for a, k in enumerate(idx)}
        above = [frozenset(pos[m] for m in self.above[k] if m in pos) for k in idx]
        return FinitePoset([self.elements[k] for k in idx], above)

    def max_chain_length(self) -> int:
        """Edges in a longest chain."""
        memo: Dict[int, int] = {}
        for i in sorted(range(len(self)), key=lambda k: len(self.above[k])):
            memo[i] = max((memo[j] + 1 for j in self.upper_covers[i]), default=0)
        return max(memo.values(), default=0)

    def maximal_chain_lengths(self) -> set:
        """Edge counts of all maximal chains."""
        minimal = [i for i in range(len(self)) if not any(i in up for up in self.above)]
        memo: Dict[int, set] = {}

        def lengths(i):
            if i not in memo:
                ups = self.upper_covers[i]
                memo[i] = {l + 1 for j in ups for l in lengths(j)} if ups else {0}
            return memo[i]

        out = set()
        for i in minimal:
            out |= lengths(i)
        return out


@dataclass
class SemimodularityVerdict:
    holds: bool
    counterexample: Optional[Tuple] = None


def is_upper_semimodular(P: FinitePoset) -> SemimodularityVerdict:
    """For c covered by distinct a, b there must be d covering both."""
    cov = P.upper_covers
    for c in range(len(P)):
        ups = sorted(cov[c])
        for x, a in enumerate(ups):
            for b in ups[x + 1:]:
                if not cov[a] & cov[b]:
                    return SemimodularityVerdict(False, (P.elements[a], P.elements[b], P.elements[c]))
    return SemimodularityVerdict(True)


def segments_semimodular(P: FinitePoset) -> SemimodularityVerdict:
    """Every segment [x, y] upper semimodular."""
    for i in range(len(P)):
        for j in sorted(P.above[i]):
            v = is_upper_semimodular(P.segment(i, j))
            if not v.holds:
                return SemimodularityVerdict(False, (P.elements[i], P.elements[j]) + v.counterexample)
    return SemimodularityVerdict(True)


# order complex ----------------------------------------------------------------------

@dataclass
class ChainComplex:
    chains: List[List[Tuple[int, ...]]]  # chains[k]: strict chains with k+1 elements

    def __post_init__(self):
        self._index = [{c: i for i, c in enumerate(cs)} for cs in self.chains]
        for k in range(2, len(self.chains)):
            for c in self.chains[k]:
                if self._dd(c):
                    raise AssertionError(f"d o d != 0 on {c}")

    @classmethod
    def of(cls, P: FinitePoset, budget: int = DEFAULT_CHAIN_BUDGET) -> "ChainComplex":
        chains: List[List[Tuple[int, ...]]] = []
        level = [(i,) for i in range(len(P))]
        total = 0
        while level:
            total += len(level)
            if total > budget:
                raise BudgetExceeded(f"order complex has more than {budget} chains")
            chains.append(level)
            level = [c + (j,) for c in level for j in sorted(P.above[c[-1]])]
        return cls(chains)

    @staticmethod
    def _faces(c: Tuple[int, ...]):
        for i in range(len(c)):
            yield c[:i] + c[i + 1:], (-1) ** i

    def _dd(self, c):
        acc: Dict[Tuple[int, ...], int] = {}
        for f, s in self._faces(c):
            for g, t in self._faces(f):
                acc[g] = acc.get(g, 0) + s * t
        return any(acc.values())

    def boundary_rows(self, k: int) -> List[Dict[int, int]]:
        """d_k : C_k -> C_{k-1} as rows indexed by k-chains; d_0 = 0."""
        if k == 0 or k >= len(self.chains):
            return []
        idx = self._index[k - 1]
        return [{idx[f]: s for f, s in self._faces(c)} for c in self.chains[k]]

    def betti(self) -> List[int]:
        ranks = [rank_of(self.boundary_rows(k)) for k in range(len(self.chains))] + [0]
        return [len(self.chains[k]) - ranks[k] - ranks[k + 1] for k in range(len(self.chains))]

    def euler_from_chains(self) -> int:
        return sum((-1) ** k * len(cs) for k, cs in enumerate(self.chains))


def order_complex_homology(P: FinitePoset, budget: int = DEFAULT_CHAIN_BUDGET) -> List[int]:
    """Unreduced rational Betti numbers of the order complex."""
    if not len(P):
        return []
    return ChainComplex.of(P, budget).betti()


@dataclass
class CMVerdict:
    cohen_macaulay: bool
    length: int
    betti: List[int]

    def to_json(self) -> dict:
        return {"cohen_macaulay": self.cohen_macaulay, "length": self.length, "betti": self.betti}


def is_cohen_macaulay(P: FinitePoset, budget: int = DEFAULT_CHAIN_BUDGET) -> CMVerdict:
    """H_i = 0 for every 0 < i < L, L the length of a longest chain."""
    L = P.max_chain_length()
    betti = order_complex_homology(P, budget)
    ok = all(betti[i] == 0 for i in range(1, min(L, len(betti))))
    return CMVerdict(ok, L, betti)


def intervals_cohen_macaulay(P: FinitePoset, budget: int = DEFAULT_CHAIN_BUDGET) -> Tuple[bool, Optional[Tuple]]:
    """Stronger check: every open interval (x, y) whose maximal chains have r
    edges has reduced homology only in degree r - 2."""
    for i in range(len(P)):
        for j in P.above[i]:
            I = P.open_interval(i, j)
            if not len(I):
                continue
            r = P.segment(i, j).max_chain_length()
            betti = order_complex_homology(I, budget)
            reduced = [betti[0] - 1] + betti[1:]
            if any(b for d, b in enumerate(reduced) if d != r - 2):
                return False, (P.elements[i], P.elements[j], betti)
    return True, None


# condition (*) -----------------------------------------------------------------------

def _compositions(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def check_condition_star(n: int, operad: Com2Operad = COM2) -> bool:
    """beta -> beta(alpha_1, ..., alpha_k) is injective for every arity split
    of total at most n and every choice of the alpha's."""
    if not 1 <= n <= MAX_POSET_N:
        raise ValueError(f"n must be in 1..{MAX_POSET_N}, got {n}")
    for total in range(1, n + 1):
        for ms in _compositions(total):
            for alphas in product(*(operad.labels(m) for m in ms)):
                images = [operad.compose(beta, alphas) for beta in operad.labels(len(ms))]
                if len(set(images)) != len(images):
                    return False
    return True


def cover_edges(P: FinitePoset) -> List[str]:
    lines = []
    for i in range(len(P)):
        for j in sorted(P.upper_covers[i]):
            lines.append(f"{format_element(P.elements[i])} < {format_element(P.elements[j])}")
    return sorted(lines)
