"""The maps iota_n and the 3-manifold invariant Omega_n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .diagrams import CIRCLE, EMPTY_SUPPORT, Diagram, DiagramError, canonical_form
from .gradedsum import GradedSum
from .linalg import add_into
from .kontsevich import TangleWord, fixture, linking_matrix, parse_word, z_check
from .ops import assemble, disjoint_product
from .relations import _pairings, iota_quotient, reduce_closed


def _check_circles(x: GradedSum):
    if any(k != CIRCLE for k in x.support.kinds):
        raise DiagramError("iota needs a support made of circles")


def iota_scale(n: int, l: int) -> Fraction:
    return Fraction((-2) ** n * math.factorial(n)) ** l


def iota_n(x: GradedSum, n: int) -> GradedSum:
    """Project onto the quotient generated by (x_n)^l and rescale."""
    _check_circles(x)
    l = len(x.support)
    if l == 0:
        return reduce_closed(GradedSum(EMPTY_SUPPORT, _loops_out(x.terms, n), x.cap).truncate(n))
    by_deg: dict = {}
    for d, c in x.terms.items():
        if any(len(s) < 2 * n for s in d.legs):
            continue
        if d.degree > n * (l + 1):
            continue
        d0 = Diagram(d.support, d.legs, d.verts, d.mate, 0)
        key, s = canonical_form(d0)
        if s:
            add_into(by_deg.setdefault(d.degree, {}), {key: s * c * Fraction(-2 * n) ** d.loops})
    out: dict = {}
    for deg in sorted(by_deg):
        q = iota_quotient(l, n, deg)
        add_into(out, q.tilde_iota(by_deg[deg]))
    res = GradedSum(EMPTY_SUPPORT, out, n).scale(iota_scale(n, l))
    return reduce_closed(res)


def _loops_out(terms, n):
    acc: dict = {}
    for d, c in terms.items():
        d0 = Diagram(d.support, d.legs, d.verts, d.mate, 0)
        add_into(acc, {d0: c * Fraction(-2 * n) ** d.loops})
    return acc


def iota_n_oracle(x: GradedSum, n: int, truncate: bool = True) -> GradedSum:
    """Substitute the pairing sum T^n_{2n} for every circle.

    No rescaling and no degree cut when ``truncate`` is off.
    """
    _check_circles(x)
    acc: dict = {}
    for d, c in x.terms.items():
        if any(len(s) != 2 * n for s in d.legs):
            raise DiagramError(f"term without exactly {2 * n} legs on every circle")
        for g, coef in _pair_all(d, n, n if truncate else None).items():
            add_into(acc, {g: c * coef})
    res = GradedSum(EMPTY_SUPPORT, acc, n if truncate else 10**9)
    return reduce_closed(res)


def _pair_all(d: Diagram, n: int, cap: int | None = None) -> dict:
    """Sum over pairings of the legs on each circle; loops become ``-2n``."""
    import itertools

    legs = [list(s) for s in d.legs]
    leg_set = {h for s in legs for h in s}
    out: dict = {}
    for choice in itertools.product(*[list(_pairings(s)) for s in legs]):
        inner = {}
        for pairing in choice:
            for a, b in pairing:
                inner[a], inner[b] = b, a
        pairs, seen, loops = [], set(), 0
        for h, m in enumerate(d.mate):
            if h < m and h not in leg_set and m not in leg_set:
                pairs.append((h, m))
        # walk paths that start at a non-leg half-edge mated to a leg
        for h in range(len(d.mate)):
            if h in leg_set or h in seen or d.mate[h] not in leg_set:
                continue
            cur = d.mate[h]
            seen.add(h)
            while True:
                nxt = inner[cur]
                far = d.mate[nxt]
                seen.update((cur, nxt))
                if far not in leg_set:
                    pairs.append((h, far))
                    seen.add(far)
                    break
                cur = far
        for h in sorted(leg_set):
            if h in seen:
                continue
            loops += 1
            cur = h
            while cur not in seen:
                nxt = inner[cur]
                seen.update((cur, nxt))
                cur = d.mate[nxt]
        g = assemble(EMPTY_SUPPORT, [], d.verts, pairs, 0)
        if cap is not None and g.degree > cap:
            continue
        key, s = canonical_form(g)
        if s:
            add_into(out, {key: s * Fraction(-2 * n) ** (loops + d.loops)})
    return out


# -- surgery presentations ----------------------------------------------------------------

def signature(M) -> tuple[int, int]:
    """``(positive, negative)`` inertia of a symmetric rational matrix.

    Exact congruence diagonalisation; a zero pivot is cured by adding a
    later row/column with a nonzero pairing.
    """
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    pos = neg = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                # e_k <- e_k + e_j makes the pivot 2 A[k][j]
                for i in range(n):
                    A[k][i] += A[j][i]
                for i in range(n):
                    A[i][k] += A[i][j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                # congruence by the elementary matrix clearing entry (i, k)
                for j in range(n):
                    A[i][j] -= f * A[k][j]
                for j in range(n):
                    A[j][i] -= f * A[j][k]
        k += 1
    return pos, neg


def determinant(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n, det = len(A), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


@dataclass(frozen=True)
class LinkingData:
    matrix: tuple
    sigma_plus: int
    sigma_minus: int
    d: int


def linking_data(word: TangleWord) -> LinkingData:
    """Linking matrix, signature counts and ``d = |det|`` of a framed link."""
    if not word.is_closed():
        raise DiagramError("a surgery presentation needs a closed word")
    M = linking_matrix(word)
    sp, sm = signature(M)
    return LinkingData(tuple(tuple(r) for r in M), sp, sm, abs(int(determinant(M))))


class FormalCombination:
    """Rational combination of surgery presentations."""

    def __init__(self, terms=()):
        self.terms: list[tuple[Fraction, TangleWord]] = [(Fraction(c), w) for c, w in terms]

    def __add__(self, other: "FormalCombination") -> "FormalCombination":
        return FormalCombination(self.terms + other.terms)

    def scale(self, a) -> "FormalCombination":
        return FormalCombination([(Fraction(a) * c, w) for c, w in self.terms])

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def normalized(self) -> dict:
        """Coefficients keyed by word text, zero entries dropped."""
        acc: dict = {}
        for c, w in self.terms:
            add_into(acc, {w.text(): c})
        return acc

    def to_text(self) -> str:
        rows = []
        for c, w in self.terms:
            rows.append(f"coef {c.numerator}/{c.denominator} ; link {w.text().strip().replace(chr(10), ' | ')}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str, base_dir: str | None = None) -> "FormalCombination":
        """Rows ``coef p/q ; link FILE`` (or an inline word with ``|`` line breaks)."""
        import os

        terms = []
        for ln in text.splitlines():
            ln = ln.split("#")[0].strip()
            if not ln:
                continue
            head, _, tail = ln.partition(";")
            coef = Fraction(head.split()[1])
            target = tail.strip()
            if not target.startswith("link "):
                raise DiagramError(f"bad combination row {ln!r}")
            target = target[5:].strip()
            path = os.path.join(base_dir or ".", target)
            if "|" not in target and os.path.exists(path):
                with open(path) as fh:
                    w = parse_word(fh.read())
            else:
                w = parse_word(target.replace("|", "\n"))
            terms.append((coef, w))
        return cls(terms)


# -- the invariant -------------------------------------------------------------------------

def _closed_mul(x: GradedSum, y: GradedSum, cap: int) -> GradedSum:
    return reduce_closed(disjoint_product(x, y, cap))


def _closed_inverse(x: GradedSum, cap: int) -> GradedSum:
    """Neumann-series inverse of a closed element with invertible scalar part."""
    a0 = x.scalar_part()
    if not a0:
        raise DiagramError("denominator has no scalar part")
    one = GradedSum.one(EMPTY_SUPPORT, cap)
    y = (x.scale(1 / a0) - one).truncate(cap)
    out, power = one, one
    for _ in range(cap):
        power = _closed_mul(power, -y, cap)
        if not power:
            break
        out = out + power
    return out.scale(1 / a0)


def iota_check(word: TangleWord, n: int, phi=None) -> GradedSum:
    """``iota_n`` of ``z_check`` of a framed link."""
    l = len(_components(word))
    if l == 0:
        return GradedSum.one(EMPTY_SUPPORT, n)
    return iota_n(z_check(word, n * (l + 1), phi), n)


def _components(word: TangleWord):
    from .kontsevich import _Sweep

    return _Sweep(word).run().components()


_UNIT: dict = {}


def unit_factor(sign: int, n: int, phi=None) -> GradedSum:
    """``iota_n(z_check(U_sign))``; its scalar part is ``(-sign)^n``."""
    key = (sign, n, None if phi is None else phi.digest())
    if key not in _UNIT:
        _UNIT[key] = iota_check(fixture("unknot", sign), n, phi)
    return _UNIT[key]


def omega_n(p, n: int, phi=None) -> GradedSum:
    """The invariant in ``Grad_{<=n}`` of closed diagrams; linear on combinations."""
    if isinstance(p, FormalCombination):
        out = GradedSum.zero(EMPTY_SUPPORT, n)
        for c, w in p:
            out = out + omega_n(w, n, phi).scale(c)
        return out
    ld = linking_data(p)
    num = iota_check(p, n, phi)
    den = GradedSum.one(EMPTY_SUPPORT, n)
    for sign, k in ((1, ld.sigma_plus), (-1, ld.sigma_minus)):
        for _ in range(k):
            den = _closed_mul(den, unit_factor(sign, n, phi), n)
    return _closed_mul(num, _closed_inverse(den, n), n)


def omega_series(p, N: int, phi=None, check: bool = False) -> GradedSum:
    """``1 + Grad_1 Omega_1 + ... + Grad_N Omega_N``.

    With ``check`` the identity ``Grad_{<=n} Omega_{n+1} = d Omega_n`` is
    asserted along the way.
    """
    out = GradedSum.one(EMPTY_SUPPORT, N)
    prev = None
    d = None if isinstance(p, FormalCombination) else linking_data(p).d
    for n in range(1, N + 1):
        om = omega_n(p, n, phi)
        if check and prev is not None and d is not None:
            if om.truncate(n - 1) != prev.scale(d):
                raise AssertionError(f"degree {n - 1} part of Omega_{n} differs from d * Omega_{n - 1}")
        out = out + om.grad(n)
        prev = om
    return out


def omega_prime(p, N: int, phi=None) -> GradedSum:
    """Each graded piece ``n`` of ``omega_series`` divided by ``d^n``."""
    d = linking_data(p).d
    if d == 0:
        raise DiagramError("d(M) = 0: the first Betti number is positive")
    s = omega_series(p, N, phi)
    acc = {k: c / Fraction(d) ** k.degree for k, c in s.terms.items()}
    return GradedSum(EMPTY_SUPPORT, acc, N, canonical=True)
