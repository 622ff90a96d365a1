"""Formal sums of canonical diagrams with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .diagrams import (EMPTY_SUPPORT, Diagram, DiagramError, Support,
                       canonical_form, empty_diagram)

INF = float("inf")


class GradedSum:
    """Immutable element of a diagram space, truncated above ``cap``.

    Terms are stored on canonical diagrams, so AS is applied on entry and
    AS-self-negating diagrams vanish.
    """

    __slots__ = ("support", "cap", "terms")

    def __init__(self, support: Support = EMPTY_SUPPORT, terms: Mapping | None = None,
                 cap: int = 10**9, canonical: bool = False):
        self.support = support
        self.cap = cap
        acc: dict[Diagram, Fraction] = {}
        for d, c in (terms or {}).items():
            if not c:
                continue
            if d.support != support:
                raise DiagramError("term support differs from the declared support")
            if d.degree > cap:
                continue
            if canonical:
                key, s = d, 1
            else:
                key, s = canonical_form(d)
            if s == 0:
                continue
            v = acc.get(key, 0) + s * Fraction(c)
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        self.terms = acc

    # -- constructors ---------------------------------------------------------
    @classmethod
    def one(cls, support: Support = EMPTY_SUPPORT, cap: int = 10**9) -> "GradedSum":
        return cls(support, {empty_diagram(support): 1}, cap)

    @classmethod
    def zero(cls, support: Support = EMPTY_SUPPORT, cap: int = 10**9) -> "GradedSum":
        return cls(support, {}, cap)

    @classmethod
    def of(cls, d: Diagram, coef=1, cap: int = 10**9) -> "GradedSum":
        return cls(d.support, {d: coef}, cap)

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "GradedSum"):
        if self.support != other.support:
            raise DiagramError("supports differ")

    def __add__(self, other: "GradedSum") -> "GradedSum":
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            v = terms.get(d, 0) + c
            if v:
                terms[d] = v
            else:
                terms.pop(d, None)
        return GradedSum(self.support, terms, min(self.cap, other.cap), canonical=True)

    def __neg__(self) -> "GradedSum":
        return self.scale(-1)

    def __sub__(self, other: "GradedSum") -> "GradedSum":
        return self + (-other)

    def scale(self, a) -> "GradedSum":
        a = Fraction(a)
        return GradedSum(self.support, {d: a * c for d, c in self.terms.items()}, self.cap,
                         canonical=True)

    def __rmul__(self, a) -> "GradedSum":
        return self.scale(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSum):
            return NotImplemented
        return self.support == other.support and self.terms == other.terms

    def __hash__(self):
        return hash((self.support, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[Diagram, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: _sort_key(t[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"GradedSum({len(self.terms)} terms, cap={self.cap})"

    # -- grading -------------------------------------------------------------------
    def grad(self, n: int) -> "GradedSum":
        return GradedSum(self.support, {d: c for d, c in self.terms.items() if d.degree == n},
                         self.cap, canonical=True)

    def truncate(self, n: int) -> "GradedSum":
        return GradedSum(self.support, self.terms, min(self.cap, n), canonical=True)

    def coefficient(self, d: Diagram) -> Fraction:
        key, s = canonical_form(d)
        return s * self.terms.get(key, Fraction(0)) if s else Fraction(0)

    def scalar_part(self) -> Fraction:
        return self.terms.get(empty_diagram(self.support), Fraction(0))


def _sort_key(d: Diagram):
    return (d.degree, d.n_internal, d.legs, d.verts, d.mate, d.loops)


def from_terms(support: Support, pairs: Iterable[tuple[Diagram, object]], cap=10**9) -> GradedSum:
    """Sum possibly repeated ``(diagram, coefficient)`` pairs."""
    acc: dict = {}
    for d, c in pairs:
        key, s = canonical_form(d)
        if s:
            acc[key] = acc.get(key, 0) + s * Fraction(c)
    return GradedSum(support, acc, cap, canonical=True)
