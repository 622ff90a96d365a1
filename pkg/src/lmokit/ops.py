"""Structural maps on diagram spaces.

Orientation reversal, doubling of a component, the coproduct splitting
dashed components, connected sum, disjoint and stacked products, the
internal-vertex filtration, and the symmetrisation map from marked
characters to diagrams on strands.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Hashable, Iterable, Sequence

from .diagrams import (CIRCLE, INTERVAL, Diagram, DiagramError,
                       Support, canonical_form)
from .gradedsum import GradedSum

INF = float("inf")


def assemble(support: Support, legs: Sequence[Sequence[Hashable]],
             verts: Sequence[Sequence[Hashable]], pairs: Iterable[tuple[Hashable, Hashable]],
             loops: int = 0) -> Diagram:
    """Build a diagram from arbitrary half-edge names."""
    ids: dict = {}
    for seq in legs:
        for h in seq:
            ids[h] = len(ids)
    for v in verts:
        for h in v:
            ids[h] = len(ids)
    mate = [-1] * len(ids)
    for a, b in pairs:
        mate[ids[a]], mate[ids[b]] = ids[b], ids[a]
    return Diagram(support, tuple(tuple(ids[h] for h in s) for s in legs),
                   tuple(tuple(ids[h] for h in v) for v in verts), tuple(mate), loops)


def _pairs(d: Diagram):
    return [(h, m) for h, m in enumerate(d.mate) if h < m]


def _check_component(x_support: Support, c: int):
    if not (0 <= c < len(x_support)):
        raise DiagramError(f"invalid component index {c + 1}")


# -- diagram level ----------------------------------------------------------------

def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    off = len(d1.mate)
    legs = [list(s) for s in d1.legs] + [[h + off for h in s] for s in d2.legs]
    verts = list(d1.verts) + [tuple(h + off for h in v) for v in d2.verts]
    pairs = _pairs(d1) + [(a + off, b + off) for a, b in _pairs(d2)]
    return assemble(d1.support + d2.support, legs, verts, pairs, d1.loops + d2.loops)


def merge_closed(d: Diagram, closed: Diagram) -> Diagram:
    """Add the dashed graph of an empty-support diagram to ``d``."""
    if len(closed.support):
        raise DiagramError("second factor must have empty support")
    off = len(d.mate)
    verts = list(d.verts) + [tuple(h + off for h in v) for v in closed.verts]
    pairs = _pairs(d) + [(a + off, b + off) for a, b in _pairs(closed)]
    return assemble(d.support, d.legs, verts, pairs, d.loops + closed.loops)


def sub_diagram(d: Diagram, keep: set[int], loops: int) -> Diagram:
    legs = [[h for h in s if h in keep] for s in d.legs]
    verts = [v for v in d.verts if v[0] in keep]
    pairs = [(a, b) for a, b in _pairs(d) if a in keep]
    return assemble(d.support, legs, verts, pairs, loops)


def internal_neighbours_of_component(d: Diagram, c: int) -> bool:
    """True if some internal vertex is joined by one edge to a leg on ``c``."""
    vert_hs = {h for v in d.verts for h in v}
    return any(d.mate[h] in vert_hs for h in d.legs[c])


# -- GradedSum level ---------------------------------------------------------------

def degree(d: Diagram) -> int:
    return d.degree


def i_filter(x: GradedSum):
    """Minimum number of internal vertices over the terms (``inf`` for 0)."""
    return min((d.n_internal for d in x.terms), default=INF)


def reverse_orientation(x: GradedSum, c: int) -> GradedSum:
    _check_component(x.support, c)
    # a circle's orientation is carried by its leg order alone
    sup = x.support if x.support.kinds[c] == CIRCLE else x.support.reversed_at(c)
    out = {}
    for d, coef in x.terms.items():
        legs = list(d.legs)
        legs[c] = tuple(reversed(legs[c]))
        nd = Diagram(sup, tuple(legs), d.verts, d.mate, d.loops)
        out[nd] = out.get(nd, 0) + coef * (-1) ** len(d.legs[c])
    return GradedSum(sup, out, x.cap)


def double_component(x: GradedSum, c: int) -> GradedSum:
    """Replace component ``c`` by two parallel copies (the new one at ``c + 1``)."""
    _check_component(x.support, c)
    s = x.support
    sup = Support(s.kinds[:c + 1] + (s.kinds[c],) + s.kinds[c + 1:],
                  s.orient[:c + 1] + (s.orient[c],) + s.orient[c + 1:])
    acc: dict = {}
    for d, coef in x.terms.items():
        seq = d.legs[c]
        for choice in itertools.product((0, 1), repeat=len(seq)):
            a = tuple(h for h, b in zip(seq, choice) if b == 0)
            b_ = tuple(h for h, b in zip(seq, choice) if b == 1)
            legs = d.legs[:c] + (a, b_) + d.legs[c + 1:]
            nd = assemble(sup, legs, d.verts, _pairs(d), d.loops)
            key, sg = canonical_form(nd)
            if sg:
                acc[key] = acc.get(key, 0) + sg * coef
    return GradedSum(sup, acc, x.cap, canonical=True)


def _components_with_loops(d: Diagram):
    return d.dashed_components()


def coproduct(x: GradedSum) -> dict:
    """Split dashed components in all ways.

    Returns ``{(left_key, right_key): coefficient}`` with canonical keys.
    """
    out: dict = {}
    for d, coef in x.terms.items():
        comps = d.dashed_components()
        L = d.loops
        for mask in itertools.product((0, 1), repeat=len(comps)):
            left = set().union(*[c for c, m in zip(comps, mask) if m == 0]) if comps else set()
            right = set().union(*[c for c, m in zip(comps, mask) if m == 1]) if comps else set()
            for i in range(L + 1):
                dl, sl = canonical_form(sub_diagram(d, left, i))
                dr, sr = canonical_form(sub_diagram(d, right, L - i))
                if sl and sr:
                    k = (dl, dr)
                    v = out.get(k, 0) + coef * sl * sr * comb(L, i)
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
    return out


def tensor_square(x: GradedSum, cap: int | None = None) -> dict:
    """``x ⊗ x`` as a dict over pairs of canonical keys, truncated by total degree."""
    cap = x.cap if cap is None else cap
    out: dict = {}
    for (a, ca), (b, cb) in itertools.product(x.terms.items(), repeat=2):
        if a.degree + b.degree <= cap:
            out[(a, b)] = out.get((a, b), 0) + ca * cb
    return out


def truncate_tensor(t: dict, cap: int) -> dict:
    return {k: v for k, v in t.items() if k[0].degree + k[1].degree <= cap and v}


def is_primitive(x: GradedSum) -> bool:
    """Primitive iff every term has a connected (nonempty) dashed graph."""
    for d in x.terms:
        n = len(d.dashed_components()) + d.loops
        if n != 1:
            return False
    return True


def connected_sum(x: GradedSum, c: int, y: GradedSum) -> GradedSum:
    """Glue ``y`` (on one circle) into circle ``c`` of ``x`` right after its base point."""
    _check_component(x.support, c)
    if x.support.kinds[c] != CIRCLE:
        raise DiagramError("connected sum needs a circle component")
    if len(y.support) != 1 or y.support.kinds[0] != CIRCLE:
        raise DiagramError("second factor must live on a single circle")
    acc: dict = {}
    for (d, a), (e, b) in itertools.product(x.terms.items(), y.terms.items()):
        if d.degree + e.degree > min(x.cap, y.cap):
            continue
        off = len(d.mate)
        legs = [list(s) for s in d.legs]
        legs[c] = [h + off for h in e.legs[0]] + legs[c]
        verts = list(d.verts) + [tuple(h + off for h in v) for v in e.verts]
        pairs = _pairs(d) + [(p + off, q + off) for p, q in _pairs(e)]
        nd = assemble(x.support, legs, verts, pairs, d.loops + e.loops)
        key, s = canonical_form(nd)
        if s:
            acc[key] = acc.get(key, 0) + s * a * b
    return GradedSum(x.support, acc, min(x.cap, y.cap), canonical=True)


def disjoint_product(x: GradedSum, y: GradedSum, cap: int | None = None) -> GradedSum:
    """Bilinear disjoint union; supports are concatenated (``y`` renumbered after ``x``)."""
    cap = min(x.cap, y.cap) if cap is None else cap
    sup = x.support + y.support
    acc: dict = {}
    for (d, a), (e, b) in itertools.product(x.terms.items(), y.terms.items()):
        if d.degree + e.degree > cap:
            continue
        key, s = canonical_form(disjoint_union(d, e))
        if s:
            acc[key] = acc.get(key, 0) + s * a * b
    return GradedSum(sup, acc, cap, canonical=True)


def stack_product(x: GradedSum, y: GradedSum, cap: int | None = None) -> GradedSum:
    """``x`` placed on top of ``y`` on a support of strands."""
    if x.support != y.support:
        raise DiagramError("mismatched boundary")
    if any(k != INTERVAL for k in x.support.kinds):
        raise DiagramError("stacking needs interval components")
    cap = min(x.cap, y.cap) if cap is None else cap
    acc: dict = {}
    for (d, a), (e, b) in itertools.product(x.terms.items(), y.terms.items()):
        if d.degree + e.degree > cap:
            continue
        off = len(d.mate)
        legs = []
        for i, o in enumerate(x.support.orient):
            top, bot = list(d.legs[i]), [h + off for h in e.legs[i]]
            # leg lists run along the orientation; +1 points downward
            legs.append(top + bot if o > 0 else bot + top)
        verts = list(d.verts) + [tuple(h + off for h in v) for v in e.verts]
        pairs = _pairs(d) + [(p + off, q + off) for p, q in _pairs(e)]
        nd = assemble(x.support, legs, verts, pairs, d.loops + e.loops)
        key, s = canonical_form(nd)
        if s:
            acc[key] = acc.get(key, 0) + s * a * b
    return GradedSum(x.support, acc, cap, canonical=True)


def remove_strand(x: GradedSum, c: int) -> GradedSum:
    """Drop component ``c``; terms with a leg on it vanish."""
    _check_component(x.support, c)
    s = x.support
    sup = Support(s.kinds[:c] + s.kinds[c + 1:], s.orient[:c] + s.orient[c + 1:])
    acc = {}
    for d, coef in x.terms.items():
        if d.legs[c]:
            continue
        nd = Diagram(sup, d.legs[:c] + d.legs[c + 1:], d.verts, d.mate, d.loops)
        acc[nd] = acc.get(nd, 0) + coef
    return GradedSum(sup, acc, x.cap)


def is_i_near(x: GradedSum, target: int) -> bool:
    """Every term has an internal vertex one edge away from a leg on ``target``."""
    _check_component(x.support, target)
    return all(internal_neighbours_of_component(d, target) for d in x.terms)


# -- marked characters -------------------------------------------------------------

def character_canonical(d: Diagram) -> tuple[Diagram, int]:
    """Canonical form of a marked character.

    A character is stored as a diagram on interval components whose leg
    order carries no meaning; the form minimises over all orderings.
    """
    best, signs = None, set()
    for perm in itertools.product(*[itertools.permutations(s) for s in d.legs]):
        e = Diagram(d.support, tuple(perm), d.verts, d.mate, d.loops)
        key, s = canonical_form(e)
        if s == 0:
            return d, 0
        k = _order_key(key)
        if best is None or k < best[0]:
            best, signs = (k, key), {s}
        elif k == best[0]:
            signs.add(s)
    if len(signs) > 1:
        return d, 0
    return best[1], signs.pop()


def _order_key(d: Diagram):
    return (d.legs, d.verts, d.mate, d.loops)


class CharacterSum:
    """Formal sum of marked characters keyed by their canonical forms."""

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        self.terms: dict = {}
        for d, c in (terms or {}).items():
            key, s = character_canonical(d)
            if s and c:
                v = self.terms.get(key, 0) + s * Fraction(c)
                if v:
                    self.terms[key] = v
                else:
                    self.terms.pop(key)

    def __eq__(self, other):
        return isinstance(other, CharacterSum) and self.m == other.m and self.terms == other.terms

    def __repr__(self):
        return f"CharacterSum(m={self.m}, {len(self.terms)} terms)"


def chi_symmetrize(ch: Diagram, cap: int = 10**9) -> GradedSum:
    """Sum over all orderings of every marked set on its strand."""
    acc: dict = {}
    for perm in itertools.product(*[itertools.permutations(s) for s in ch.legs]):
        e = Diagram(ch.support, tuple(perm), ch.verts, ch.mate, ch.loops)
        key, s = canonical_form(e)
        if s:
            acc[key] = acc.get(key, 0) + s
    return GradedSum(ch.support, acc, cap, canonical=True)


def chi_sum(x: CharacterSum, cap: int = 10**9) -> GradedSum:
    out = GradedSum.zero(Support.intervals(x.m), cap)
    for d, c in x.terms.items():
        out = out + chi_symmetrize(d, cap).scale(c)
    return out


def is_character_i_near(x: CharacterSum, j: int) -> bool:
    return all(internal_neighbours_of_component(d, j) for d in x.terms)


def _touches_support(d: Diagram) -> bool:
    legs = {h for s in d.legs for h in s}
    return not d.loops and all(c & legs for c in d.dashed_components())


_CHAR_BASIS: dict = {}


def character_basis(m: int, deg: int):
    """Characters of one degree whose symmetrisations are independent mod 4T.

    Characters are scanned with few internal vertices first; each is kept
    iff its image is not already in the span of the kept ones.  Returns
    ``(characters, eliminator over images, images)``.
    """
    from .relations import enumerate_diagrams, reduce_chords
    from .linalg import SparseEliminator
    hit = _CHAR_BASIS.get((m, deg))
    if hit is not None:
        return hit
    sup = Support.intervals(m)
    chars = {}
    for d in enumerate_diagrams(sup, deg):
        if _touches_support(d):
            key, s = character_canonical(d)
            if s:
                chars[key] = None
    kept, images = [], []
    seen = SparseEliminator(rank=_order_key)
    for ch in sorted(chars, key=lambda k: (k.n_internal, _order_key(k))):
        img = reduce_chords(chi_symmetrize(ch)).terms
        if img and not seen.is_zero(img):
            seen.add(dict(img))
            kept.append(ch)
            images.append(img)
    _CHAR_BASIS[(m, deg)] = (kept, images)
    return kept, images


def chi_inverse(x: GradedSum, cap: int | None = None) -> CharacterSum:
    """Marked characters whose symmetrisation equals ``x`` modulo 4T and STU.

    Solved degree by degree against ``character_basis``; exact.
    """
    from .linalg import ResourceError
    from .relations import reduce_chords
    m = len(x.support)
    if any(t != INTERVAL for t in x.support.kinds):
        raise DiagramError("chi_inverse expects a sum on strands")
    y = reduce_chords(x)
    out: dict = {}
    for deg in sorted({d.degree for d in y.terms}):
        if cap is not None and deg > cap:
            raise ResourceError(f"degree {deg} exceeds cap {cap}")
        part = {d: c for d, c in y.terms.items() if d.degree == deg}
        if deg == 0:
            out[Diagram(x.support, tuple(() for _ in range(m)), (), (), 0)] = part[next(iter(part))]
            continue
        kept, images = character_basis(m, deg)
        out.update(_solve(kept, images, part))
    return CharacterSum(m, out)


def _solve(kept, images, target: dict) -> dict:
    from .linalg import solve_affine
    keys = sorted({k for img in images for k in img} | set(target), key=_order_key)
    eqs = [({j: img[k] for j, img in enumerate(images) if k in img}, target.get(k, 0)) for k in keys]
    try:
        sol = solve_affine(eqs, list(range(len(kept))))
    except ValueError:
        raise DiagramError("sum is not in the image of the symmetrisation map") from None
    return {kept[j]: c for j, c in sol.items() if c}
