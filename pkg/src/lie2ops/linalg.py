"""Exact sparse row echelon forms over Q.

Rows are dicts column -> Fraction.  Columns are integers; the pivot of a row is
its smallest column, so reducing a vector against the echelon rows in
increasing column order terminates.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping

Row = Dict[int, Fraction]


class SparseEchelon:
    """Incrementally built echelon basis of a row space.

    Pivot rows have leading coefficient 1 and only columns >= their pivot.
    :meth:`reduce` clears every pivot column in increasing order, which yields
    the unique representative of a vector supported on free columns.
    """

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce_leading(self, row: Row) -> Row:
        # eliminate pivot columns until the smallest column is free
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                break
            f = row[c]
            for j, x in p.items():
                v = row.get(j, 0) - f * x
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        return row

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert a row; returns True if it increased the rank."""
        r = self._reduce_leading({j: Fraction(x) for j, x in row.items() if x})
        if not r:
            return False
        c = min(r)
        lead = r[c]
        if lead != 1:
            inv = 1 / lead
            r = {j: x * inv for j, x in r.items()}
        self.pivots[c] = r
        return True

    def reduce(self, row: Mapping[int, Fraction]) -> Row:
        """Canonical remainder of ``row`` modulo the row space (only free columns)."""
        row = {j: Fraction(x) for j, x in row.items() if x}
        heap = [j for j in row if j in self.pivots]
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            f = row.get(c)
            if not f:
                continue
            for j, x in self.pivots[c].items():
                v = row.get(j, 0) - f * x
                if v:
                    row[j] = v
                    if j in self.pivots and j not in seen:
                        heapq.heappush(heap, j)
                else:
                    row.pop(j, None)
        return row

    def back_substitute(self) -> None:
        """Clear every pivot column above its pivot row (reduced echelon form).

        Afterwards each pivot row is e_c plus free columns only, so
        :meth:`reduce` takes one step per pivot column in its input.
        """
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            for j in sorted(j for j in row if j != c and j in self.pivots):
                f = row.pop(j)
                for k, x in self.pivots[j].items():
                    if k == j:
                        continue
                    v = row.get(k, 0) - f * x
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)

    def free_columns(self, columns: Iterable[int]) -> List[int]:
        return [c for c in columns if c not in self.pivots]


def rank_of(rows: Iterable[Mapping[int, Fraction]]) -> int:
    """Rank of a sparse matrix given by rows."""
    ech = SparseEchelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def rank_mod_p(rows: Iterable[Mapping[int, int]], p: int = 2_147_483_647) -> int:
    """Rank over F_p of an integer matrix; a cross-check only, never a source of truth."""
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        r = {j: int(x) % p for j, x in row.items() if int(x) % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], p - 2, p)
                pivots[c] = {j: x * inv % p for j, x in r.items()}
                break
            f = r[c]
            for j, x in piv.items():
                v = (r.get(j, 0) - f * x) % p
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
    return len(pivots)
