"""Exact sparse elimination over the rationals.

Vectors are plain ``dict`` objects mapping hashable column keys to
``Fraction`` coefficients.  Columns are totally ordered by a rank
function; the pivot of a relation is always its highest-ranked column,
so low-ranked columns are the ones that survive as quotient basis
elements.  Reduction of a vector therefore writes it in terms of the
lowest-ranked columns available.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping


def add_into(acc: dict, vec: Mapping, scale=1) -> dict:
    """``acc += scale * vec`` in place, dropping zeros."""
    for k, c in vec.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


class ResourceError(RuntimeError):
    """A configured combinatorial budget was exceeded."""


class SparseEliminator:
    """Incremental row reduction with a fixed column order.

    ``rank`` maps a column key to a sortable value; larger rank means the
    column is eliminated first.
    """

    def __init__(self, rank: Callable[[Hashable], object] | None = None):
        self._rank_fn = rank or (lambda k: k)
        self._rank_cache: dict = {}
        self.pivots: dict = {}
        self.n_relations = 0

    def rank(self, key):
        r = self._rank_cache.get(key)
        if r is None:
            r = self._rank_fn(key)
            self._rank_cache[key] = r
        return r

    def reduce(self, vec: Mapping) -> dict:
        """Return the normal form of ``vec`` modulo all added relations."""
        out = {k: Fraction(c) for k, c in vec.items() if c}
        heap = [(_neg(self.rank(k)), i, k) for i, k in enumerate(out) if k in self.pivots]
        heapq.heapify(heap)
        tick = len(heap)
        while heap:
            _, _, k = heapq.heappop(heap)
            c = out.pop(k, 0)
            if not c:
                continue
            for k2, c2 in self.pivots[k].items():
                if k2 == k:
                    continue
                v = out.get(k2, 0) - c * c2
                if v:
                    if k2 not in out and k2 in self.pivots:
                        tick += 1
                        heapq.heappush(heap, (_neg(self.rank(k2)), tick, k2))
                    out[k2] = v
                else:
                    out.pop(k2, None)
        return out

    def add(self, row: Mapping) -> bool:
        """Add a relation ``row == 0``; return True if it was independent."""
        self.n_relations += 1
        r = self.reduce(row)
        if not r:
            return False
        p = max(r, key=self.rank)
        inv = 1 / r[p]
        self.pivots[p] = {k: c * inv for k, c in r.items()}
        return True

    def add_many(self, rows: Iterable[Mapping]) -> int:
        return sum(1 for r in rows if self.add(r))

    def is_zero(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


class _Neg:
    """Order-reversing wrapper so heapq pops the largest rank first."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v > other.v

    def __eq__(self, other):
        return self.v == other.v


def _neg(v):
    return _Neg(v)


def dense_rank(rows: list[Mapping], columns: list) -> int:
    """Rank of the relation matrix by a dense route (sympy), for cross-checks."""
    import sympy

    if not rows:
        return 0
    idx = {k: i for i, k in enumerate(columns)}
    M = sympy.zeros(len(rows), len(columns))
    for i, r in enumerate(rows):
        for k, c in r.items():
            M[i, idx[k]] = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
    return M.rank()


def solve_affine(equations: list[tuple[dict, Fraction]], unknowns: list) -> dict:
    """Solve ``sum_k e[k] x_k = rhs`` exactly.

    Free unknowns are set to zero.  Raises ``ValueError`` when inconsistent.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    elim = SparseEliminator(rank=lambda k: -1 if k == "__rhs__" else order[k])
    for coeffs, rhs in equations:
        row = dict(coeffs)
        if rhs:
            row["__rhs__"] = -Fraction(rhs)
        elim.add(row)
    if "__rhs__" in elim.pivots:
        raise ValueError("inconsistent linear system")
    sol = {}
    for u in unknowns:
        r = elim.reduce({u: 1})
        # the constant column stands for 1; free unknowns vanish
        sol[u] = r.get("__rhs__", Fraction(0)) if u in elim.pivots else Fraction(0)
    return sol
