"""Surgery combinations: alternating sums over sublinks, Kirby pairs,
Borromean graph surgery and lower central series splices."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .diagrams import DiagramError, theta
from .kontsevich import (TangleError, TangleWord, _arc_numbers, _Sweep, delete_components,
                         fixture, free_reduce, gamma, gamma123, inverse_braid, linking_matrix,
                         renumber_components, rotate_word, tensor_word, unlink_component)
from .lmo import FormalCombination, linking_data


def n_components(word: TangleWord) -> int:
    return len(_Sweep(word).run().components())


def normal_word(word: TangleWord) -> str:
    """Text of the freely reduced word, used to compare presentations."""
    return free_reduce(word).text()


def normalized(comb: FormalCombination) -> dict:
    acc: dict = {}
    for c, w in comb:
        k = normal_word(w)
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


# -- alternating sums ---------------------------------------------------------------------------

def sublink(word: TangleWord, keep) -> TangleWord:
    """The sublink on the components in ``keep`` (1-based)."""
    l = n_components(word)
    return delete_components(word, set(range(1, l + 1)) - set(keep))


def delta_sum(p) -> FormalCombination:
    """Sum over sublinks ``L'`` of ``(-1)^|L'|`` times surgery on ``L'``."""
    if isinstance(p, FormalCombination):
        out = FormalCombination()
        for c, w in p:
            out = out + delta_sum(w).scale(c)
        return out
    l = n_components(p)
    terms = []
    for k in range(l + 1):
        for sub in itertools.combinations(range(1, l + 1), k):
            terms.append(((-1) ** k, sublink(p, sub)))
    return FormalCombination(terms)


def trivialize(word: TangleWord, c: int) -> TangleWord:
    """Replace component ``c`` by a distant trivial knot with the same framing.

    The component is first lifted over all others, which keeps its framing
    and splits it off; it is then redrawn as a framed unknot.
    """
    lifted = unlink_component(word, c) if not any(g[0] in ("cap", "cup") for g in word.gens) else word
    f = int(linking_matrix(lifted)[c - 1][c - 1])
    l = n_components(word)
    rest = delete_components(word, {c})
    out = tensor_word(rest, fixture("unknot", f))
    mapping = {k: k if k < c else k + 1 for k in range(1, l)}
    mapping[l] = c
    return renumber_components(out, mapping)


def tilde_delta(word: TangleWord, L2) -> FormalCombination:
    """Sum over ``L2' ⊂ L2`` of ``(-1)^|L2'|`` times ``L`` with ``L2 \\ L2'`` trivialized."""
    L2 = sorted(set(L2))
    l = n_components(word)
    if not L2 or any(not 1 <= c <= l for c in L2):
        raise DiagramError("L2 must be a nonempty set of components")
    terms = []
    for k in range(len(L2) + 1):
        for sub in itertools.combinations(L2, k):
            w = word
            for c in L2:
                if c not in sub:
                    w = trivialize(w, c)
            terms.append(((-1) ** k, w))
    return FormalCombination(terms)


# -- Kirby pairs -----------------------------------------------------------------------------------

def stabilize(base: TangleWord, sign: int = -1) -> tuple[TangleWord, TangleWord]:
    """``(base, base ⊔ U_sign)``."""
    return base, tensor_word(base, fixture("unknot", sign))


# Handle slides are curated: each pair was obtained by sliding the first
# component over the second and checked by equal linking-matrix invariants.
SLIDE_TEMPLATES = {
    # K1 over the 0-framed K2 of a Hopf link: framing 1 -> 1 + 0 + 2 lk
    "hopf-s3": (lambda: fixture("hopf", 1, 0), lambda: fixture("hopf", 3, 0)),
    # K1 over K2 in the (+1, +1) Hopf link with the band reversing K2:
    # framing 1 + 1 - 2 = 0 and the linking drops to 0, giving U_0 ⊔ U_+
    "hopf-11": (lambda: fixture("hopf", 1, 1),
                lambda: tensor_word(fixture("unknot", 0), fixture("unknot", 1))),
}

PAIRS = {
    "stab-basic": lambda: stabilize(fixture("unknot", 1), -1),
    "stab-plus": lambda: stabilize(fixture("unknot", 1), 1),
    "stab-trefoil": lambda: stabilize(fixture("trefoil", 1), 1),
    "slide-hopf-s3": lambda: (SLIDE_TEMPLATES["hopf-s3"][0](), SLIDE_TEMPLATES["hopf-s3"][1]()),
    "slide-hopf-11": lambda: (SLIDE_TEMPLATES["hopf-11"][0](), SLIDE_TEMPLATES["hopf-11"][1]()),
}


def kirby_pair(kind: str, base: TangleWord | None = None, sign: int = -1):
    if kind == "stabilize":
        if base is None:
            raise DiagramError("stabilization needs a base presentation")
        return stabilize(base, sign)
    if kind in SLIDE_TEMPLATES:
        a, b = SLIDE_TEMPLATES[kind]
        if base is not None and normal_word(base) != normal_word(a()):
            raise DiagramError(f"base does not match the {kind!r} template")
        return a(), b()
    if kind in PAIRS:
        return PAIRS[kind]()
    raise DiagramError(f"unknown Kirby pair {kind!r}")


# -- Borromean graph surgery ---------------------------------------------------------------------

def vertex_gadget(borromean: bool) -> TangleWord:
    """Three nested caps ending in three (up, down) pairs.

    Arcs ``(1, 6), (2, 5), (3, 4)`` are opened, the upward ends optionally
    pass through the Borromean box, and the downward ends are interleaved
    so that arc ``k`` ends as the ``k``-th pair from the left.
    """
    gens = [("cap", 1, True), ("cap", 2, True), ("cap", 3, True)]
    if borromean:
        gens += gamma123().gens
    gens += [("x", 1, i) for i in (5, 4, 3, 2, 5, 4)]
    return TangleWord((), gens)


def theta_link(top_borromean: bool, bottom_borromean: bool, framing: int = 0,
               rotated: bool = False) -> TangleWord:
    """Two vertex gadgets joined along the three edges of the planar theta."""
    top = vertex_gadget(top_borromean)
    bottom = rotate_word(vertex_gadget(bottom_borromean))
    w = TangleWord((), top.gens + bottom.gens)
    w = renumber_components(w, {k: k for k in set(_arc_numbers(w))})
    if rotated:
        w = rotate_word(w)
    if framing:
        w.frames = {c: framing for c in range(1, n_components(w) + 1)}
    return w


def beta_gamma(graph: str = "theta", rotated: bool = False) -> FormalCombination:
    """Signed expansion of the product of (Borromean - trivial) gadgets."""
    if graph != "theta":
        raise DiagramError("only the theta graph has a built-in decomposition")
    terms = []
    for a, b in itertools.product((True, False), repeat=2):
        sign = (1 if a else -1) * (1 if b else -1)
        terms.append((sign, theta_link(a, b, 0, rotated)))
    return FormalCombination(terms)


def tilde_beta(graph: str = "theta", rotated: bool = False) -> FormalCombination:
    """``beta_gamma`` with every framing set to +1."""
    out = []
    for c, w in beta_gamma(graph, rotated):
        w = w.copy()
        blackboard = linking_matrix(TangleWord(w.top, w.gens, {}))
        w.frames = {k + 1: 1 - int(blackboard[k][k]) for k in range(len(blackboard))
                    if 1 - int(blackboard[k][k])}
        out.append((c, w))
    return FormalCombination(out)


def graph_diagram(graph: str = "theta"):
    if graph != "theta":
        raise DiagramError("only the theta graph is built in")
    return theta()


# -- lower central series -------------------------------------------------------------------------

def _commutator(x: TangleWord, y: TangleWord) -> TangleWord:
    return x * y * inverse_braid(x) * inverse_braid(y)


def lcs_word(m: int = 3, depth: int = 1) -> TangleWord:
    """Iterated commutator ``[...[[A12, A13], A23], A12]...`` of nesting ``depth``.

    The result lies in the ``(depth + 1)``-th lower central series group.
    """
    if m != 3 or not 1 <= depth <= 4:
        raise DiagramError("lcs_word supports m = 3 and depth 1..4")
    gens = [gamma(1, 2), gamma(1, 3), gamma(2, 3)]
    w = _commutator(gens[0], gens[1])
    for k in range(1, depth):
        w = _commutator(w, gens[(k + 1) % 3])
    return w


def window_unknot(sign: int = 1) -> TangleWord:
    """``U_sign`` drawn with a trivial three-strand window at positions 1..3.

    The window sits right after the generator at index 2 (the two caps).
    """
    gens = [("cap", 1, True), ("cap", 3, True), ("cup", 2, False), ("cup", 1, True)]
    return TangleWord((), gens, {1: sign})


def sn_operation(word: TangleWord, site: int, n: int = 1, position: int = 1,
                 depth: int | None = None) -> TangleWord:
    """Splice the commutator word into a trivial three-strand window.

    ``site`` is the generator index after which the window is cut and
    ``position`` its leftmost strand.  The linking matrix must not change.
    """
    if n != 1 and depth is None:
        raise DiagramError("only n = 1 is committed")
    depth = 2 * n + 2 if depth is None else depth
    sw = _Sweep(word)
    for g in word.gens[:site]:
        sw.step(g)
    if position < 1 or position + 2 > len(sw.pos):
        raise TangleError("window out of range")
    box = lcs_word(3, depth) if depth else TangleWord((1, 1, 1), [])
    shift = position - 1
    spliced = [("x", g[1], g[2] + shift) for g in box.gens]
    out = TangleWord(word.top, word.gens[:site] + spliced + word.gens[site:], dict(word.frames))
    if linking_matrix(out) != linking_matrix(word):
        raise DiagramError("splice changed the linking matrix")
    return out


def is_unit_framed_split(word: TangleWord) -> bool:
    M = linking_data(word).matrix
    return all((M[i][j] in (1, -1)) if i == j else M[i][j] == 0
               for i in range(len(M)) for j in range(len(M)))


__all__ = [
    "FormalCombination", "Fraction", "beta_gamma", "delta_sum", "graph_diagram",
    "is_unit_framed_split", "kirby_pair", "lcs_word", "normalized", "sn_operation",
    "stabilize", "sublink", "theta_link", "tilde_beta", "tilde_delta", "trivialize",
    "vertex_gadget", "window_unknot",
]
