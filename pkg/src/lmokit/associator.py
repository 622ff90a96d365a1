"""Horizontal chord algebras and an even rational associator.

``HorizontalAlgebra(k)`` is the algebra generated by chords ``t_ij`` between
``k`` vertical strands subject to the 4T relations.  It splits as the
universal enveloping algebra of a free Lie algebra on ``x_a = t_ak``
(``a < k``) tensored with the same algebra on ``k - 1`` strands, and the
lower chords act on the ``x`` by the derivations

    [t_ij, x_i] = [x_i, x_j],   [t_ij, x_j] = [x_j, x_i],   [t_ij, x_a] = 0.

Normal words list the top-level letters first and then recurse, which
gives a unique representative for every element.  Words are read top
first: the first letter is the highest chord.
"""

from __future__ import annotations

import json
import hashlib
from fractions import Fraction
from functools import lru_cache

from .linalg import add_into, solve_affine

Word = tuple  # tuple of (i, j) with i < j, 1-based strands


def _level(letter) -> int:
    return letter[1]


class HorizontalAlgebra:
    def __init__(self, k: int, cap: int):
        self.k, self.cap = k, cap

    # -- normal form multiplication --------------------------------------------------
    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                if len(w1) + len(w2) > self.cap:
                    continue
                for w, c in _mul_words(w1, w2, self.k, self.cap).items():
                    add_into(out, {w: c1 * c2 * c})
        return out

    def add(self, *xs: dict) -> dict:
        out: dict = {}
        for x in xs:
            add_into(out, x)
        return out

    def scale(self, x: dict, a) -> dict:
        return {w: a * c for w, c in x.items() if a * c}

    def one(self) -> dict:
        return {(): Fraction(1)}

    def gen(self, i: int, j: int) -> dict:
        if i > j:
            i, j = j, i
        return {((i, j),): Fraction(1)}

    def chords(self, group_a, group_b) -> dict:
        """Sum of chords between two disjoint groups of strands."""
        out: dict = {}
        for a in group_a:
            for b in group_b:
                add_into(out, self.gen(a, b))
        return out

    def exp(self, x: dict) -> dict:
        out, term = self.one(), self.one()
        for m in range(1, self.cap + 1):
            term = self.scale(self.mul(term, x), Fraction(1, m))
            if not term:
                break
            out = self.add(out, term)
        return out

    def grad(self, x: dict, d: int) -> dict:
        return {w: c for w, c in x.items() if len(w) == d}

    def substitute(self, poly: dict, A: dict, B: dict) -> dict:
        """Evaluate a noncommutative polynomial in letters 'A', 'B'."""
        out: dict = {}
        cache = {"A": A, "B": B}
        for word, c in poly.items():
            if len(word) > self.cap:
                continue
            val = self.one()
            for ch in word:
                val = self.mul(val, cache[ch])
            add_into(out, self.scale(val, c))
        return out


def _split(w: Word, k: int):
    i = 0
    while i < len(w) and w[i][1] == k:
        i += 1
    return w[:i], w[i:]


def _derive(letter, xword: Word, k: int) -> dict:
    """Action of the lower chord ``letter`` on a word in the x-letters of level k."""
    i, j = letter
    out: dict = {}
    for p, x in enumerate(xword):
        a = x[0]
        if a == i:
            other = (j, k)
            sgn = 1
        elif a == j:
            other = (i, k)
            sgn = 1
        else:
            continue
        # [t_ij, x_a] = x_a x_b - x_b x_a with b the other end
        pre, post = xword[:p], xword[p + 1:]
        add_into(out, {pre + (x, other) + post: Fraction(sgn)})
        add_into(out, {pre + (other, x) + post: Fraction(-sgn)})
    return out


@lru_cache(maxsize=None)
def _mul_words_cached(w1: Word, w2: Word, k: int, cap: int):
    return tuple(_mul_words_raw(w1, w2, k, cap).items())


def _mul_words(w1: Word, w2: Word, k: int, cap: int) -> dict:
    return dict(_mul_words_cached(w1, w2, k, cap))


def _mul_words_raw(w1: Word, w2: Word, k: int, cap: int) -> dict:
    if k <= 1 or not w2:
        return {w1 + w2: Fraction(1)} if len(w1) + len(w2) <= cap else {}
    if not w1:
        return {w2: Fraction(1)}
    X1, u1 = _split(w1, k)
    X2, u2 = _split(w2, k)
    # move u1 past X2: u1 X2 = sum X' u'
    mixed = _commute(u1, X2, k, cap - len(X1) - len(u2))
    out: dict = {}
    for (Xp, up), c in mixed.items():
        for w, c2 in _mul_words(up, u2, k - 1, cap - len(X1) - len(Xp)).items():
            if len(X1) + len(Xp) + len(w) <= cap:
                add_into(out, {X1 + Xp + w: c * c2})
    return out


@lru_cache(maxsize=None)
def _commute_cached(u: Word, X: Word, k: int, cap: int):
    return tuple(_commute_raw(u, X, k, cap).items())


def _commute(u: Word, X: Word, k: int, cap: int) -> dict:
    return dict(_commute_cached(u, X, k, cap))


def _commute_raw(u: Word, X: Word, k: int, cap: int) -> dict:
    """``u X`` rewritten as a sum of ``(X', u')`` with u' a lower normal word."""
    if len(u) + len(X) > cap:
        return {}
    if not u:
        return {(X, ()): Fraction(1)}
    # peel the last letter of u: u = v g, g X = X g + D_g(X)
    v, g = u[:-1], u[-1]
    out: dict = {}
    stage: dict = {(X, (g,)): Fraction(1)}
    for Xd, c in _derive(g, X, k).items():
        add_into(stage, {(Xd, ()): c})
    for (Xs, us), c in stage.items():
        for (Xp, up), c2 in _commute(v, Xs, k, cap - len(us)).items():
            for w, c3 in _mul_words(up, us, k - 1, cap - len(Xp)).items():
                add_into(out, {(Xp, w): c * c2 * c3})
    return out


# -- free Lie polynomials in A, B ------------------------------------------------------

def bracket(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, c1 in p.items():
        for b, c2 in q.items():
            add_into(out, {a + b: c1 * c2})
            add_into(out, {b + a: -c1 * c2})
    return out


A_ = {"A": Fraction(1)}
B_ = {"B": Fraction(1)}


def lyndon_basis(d: int) -> list[tuple[str, dict]]:
    """Standard bracketings of the Lyndon words of length ``d`` in A < B."""
    words = [w for w in _words(d) if _is_lyndon(w)]
    return [(w, _std_bracket(w)) for w in words]


def _words(d):
    if d == 0:
        yield ""
        return
    for w in _words(d - 1):
        yield w + "A"
        yield w + "B"


def _is_lyndon(w: str) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) and len(w) > 0


def _std_bracket(w: str) -> dict:
    if len(w) == 1:
        return {w: Fraction(1)}
    # split at the longest proper Lyndon suffix
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]) and _is_lyndon(w[:i]):
            return bracket(_std_bracket(w[:i]), _std_bracket(w[i:]))
    raise ValueError(w)


# -- the associator --------------------------------------------------------------------

class Associator:
    """``Phi = exp(phi)`` with ``phi`` a Lie series in ``A = t12`` and ``B = t23``."""

    def __init__(self, lie: dict[int, dict[str, Fraction]], cap: int):
        self.lie = lie  # degree -> {lyndon word: coefficient}
        self.cap = cap
        self.phi = {}
        for d, coeffs in lie.items():
            basis = dict(lyndon_basis(d))
            for w, c in coeffs.items():
                add_into(self.phi, {k: c * v for k, v in basis[w].items()})
        self.words = _exp_poly(self.phi, cap)
        self.inv_words = _exp_poly({w: -c for w, c in self.phi.items()}, cap)

    def value(self, alg: HorizontalAlgebra, A: dict, B: dict, inverse: bool = False) -> dict:
        return alg.substitute(self.inv_words if inverse else self.words, A, B)

    def digest(self) -> str:
        blob = json.dumps({str(d): {w: str(c) for w, c in sorted(v.items())}
                           for d, v in sorted(self.lie.items())}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {"cap": self.cap,
                "lie": {str(d): {w: str(c) for w, c in sorted(v.items())}
                        for d, v in sorted(self.lie.items())}}


def _poly_mul(p: dict, q: dict, cap: int) -> dict:
    out: dict = {}
    for a, c1 in p.items():
        for b, c2 in q.items():
            if len(a) + len(b) <= cap:
                add_into(out, {a + b: c1 * c2})
    return out


def _exp_poly(p: dict, cap: int) -> dict:
    out, term = {"": Fraction(1)}, {"": Fraction(1)}
    for m in range(1, cap + 1):
        term = {w: c / m for w, c in _poly_mul(term, p, cap).items()}
        if not term:
            break
        add_into(out, term)
    return out


def associator_equations(phi: Associator, cap: int) -> dict[str, dict]:
    """Residuals (as normal-form dicts) of the pentagon and both hexagons."""
    out = {}
    a4 = HorizontalAlgebra(4, cap)
    P = lambda A, B, inv=False: phi.value(a4, A, B, inv)
    t = a4.gen
    lhs = a4.mul(P(a4.add(t(1, 3), t(2, 3)), t(3, 4)), P(t(1, 2), a4.add(t(2, 3), t(2, 4))))
    rhs = a4.mul(a4.mul(P(t(1, 2), t(2, 3)), P(a4.add(t(1, 2), t(1, 3)), a4.add(t(2, 4), t(3, 4)))),
                 P(t(2, 3), t(3, 4)))
    out["pentagon"] = a4.add(lhs, a4.scale(rhs, -1))
    a3 = HorizontalAlgebra(3, cap)
    Q = lambda A, B, inv=False: phi.value(a3, A, B, inv)
    t = a3.gen
    half = Fraction(1, 2)
    e = lambda x: a3.exp(a3.scale(x, half))
    lhs = e(a3.add(t(1, 3), t(2, 3)))
    rhs = Q(t(1, 2), t(2, 3))
    for f in (e(t(2, 3)), Q(t(1, 3), t(2, 3), True), e(t(1, 3)), Q(t(1, 3), t(1, 2))):
        rhs = a3.mul(rhs, f)
    out["hexagon1"] = a3.add(lhs, a3.scale(rhs, -1))
    lhs = e(a3.add(t(1, 2), t(1, 3)))
    rhs = Q(t(1, 2), t(2, 3), True)
    for f in (e(t(1, 2)), Q(t(1, 2), t(1, 3)), e(t(1, 3)), Q(t(2, 3), t(1, 3), True)):
        rhs = a3.mul(rhs, f)
    out["hexagon2"] = a3.add(lhs, a3.scale(rhs, -1))
    return out


def solve_associator(cap: int = 4, even: bool = True, pins: dict | None = None) -> Associator:
    """Solve pentagon and hexagons degree by degree.

    Free parameters are set to 0 unless ``pins`` gives a value for
    ``(degree, lyndon_word)``; ``even=False`` leaves odd degrees free.
    """
    pins = pins or {}
    lie: dict[int, dict] = {}
    for d in range(2, cap + 1):
        basis = [w for w, _ in lyndon_basis(d)]
        if even and d % 2:
            trial = Associator(lie, d)
            res = associator_equations(trial, d)
            if any(_grad(r, d) for r in res.values()):
                raise ValueError(f"odd degree {d} is not consistent with an even associator")
            continue
        base = associator_equations(Associator(lie, d), d)
        cols = []
        for w in basis:
            trial = dict(lie)
            trial[d] = {w: Fraction(1)}
            res = associator_equations(Associator(trial, d), d)
            cols.append({name: _diff(_grad(res[name], d), _grad(base[name], d)) for name in res})
        eqs = []
        for name in base:
            keys = set(_grad(base[name], d))
            for col in cols:
                keys |= set(col[name])
            for key in sorted(keys, key=repr):
                coeffs = {basis[i]: cols[i][name].get(key, 0) for i in range(len(basis))}
                coeffs = {u: c for u, c in coeffs.items() if c}
                rhs = -_grad(base[name], d).get(key, 0)
                if coeffs or rhs:
                    eqs.append((coeffs, rhs))
        for (deg, w), val in pins.items():
            if deg == d:
                eqs.append(({w: Fraction(1)}, Fraction(val)))
        sol = solve_affine(eqs, basis)
        lie[d] = {w: c for w, c in sol.items() if c}
    return Associator(lie, cap)


def _grad(x: dict, d: int) -> dict:
    return {w: c for w, c in x.items() if len(w) == d}


def _diff(a: dict, b: dict) -> dict:
    out = dict(a)
    add_into(out, b, -1)
    return out


_DEFAULT: dict = {}


def default_associator(cap: int = 4) -> Associator:
    a = _DEFAULT.get(cap)
    if a is None:
        a = solve_associator(cap)
        _DEFAULT[cap] = a
    return a
