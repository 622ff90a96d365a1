"""Combinatorial Kontsevich integral of framed oriented tangles.

A tangle is a word of elementary slices read from the top.  Every slice
boundary is a row of positions, each carrying a direction (+1 pointing
down, -1 pointing up).  Boundary words are bracketed to the left, so a
local move at positions ``i, i+1`` is conjugated by an associator on the
three groups (everything to the left, ``i``, ``i+1``).

During the sweep a term is a tuple of chord-label sequences, one slot
per arc.  A chord added at a downward position is appended to its arc,
at an upward position it is prepended, so sequences always run along the
orientation.  Caps carry a correction so that both zigzags straighten to
the identity strand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .associator import Associator, default_associator
from .diagrams import CIRCLE, INTERVAL, Support, chord_diagram
from .gradedsum import GradedSum
from .linalg import add_into
from .ops import connected_sum, remove_strand  # noqa: F401  (re-exported)


class TangleError(ValueError):
    """Malformed tangle word or mismatched boundaries."""


# -- words ------------------------------------------------------------------------

@dataclass
class TangleWord:
    """Generators read from the top.

    ``top`` lists the directions of the top boundary.  Generators are
    ``("x", s, i)`` for a crossing of positions ``i, i+1`` (``s = +1`` when
    the over-strand runs from top ``i+1`` to bottom ``i``), ``("cap", i, cw)``
    and ``("cup", i, cw)`` with ``cw`` true when the left end points up, and
    ``("label", k, c)`` naming the component through position ``k``.
    ``frames`` maps component numbers (1-based) to framing corrections
    added on top of the blackboard framing.
    """

    top: tuple = ()
    gens: list = field(default_factory=list)
    frames: dict = field(default_factory=dict)

    def copy(self) -> "TangleWord":
        return TangleWord(tuple(self.top), list(self.gens), dict(self.frames))

    @property
    def bottom(self) -> tuple:
        return _Sweep(self).bottom()

    def is_closed(self) -> bool:
        return not self.top and not self.bottom

    def __mul__(self, other: "TangleWord") -> "TangleWord":
        """``self`` stacked on top of ``other``."""
        if tuple(self.bottom) != tuple(other.top):
            raise TangleError("boundary mismatch when stacking")
        if other.frames or any(g[0] == "label" for g in other.gens):
            raise TangleError("only the top factor may carry frames and labels")
        return TangleWord(self.top, self.gens + other.gens, dict(self.frames))

    def text(self) -> str:
        lines = []
        if self.top:
            lines.append("strands " + " ".join("+" if d > 0 else "-" for d in self.top))
        for g in self.gens:
            if g[0] == "x":
                lines.append(f"x{'+' if g[1] > 0 else '-'} {g[2]}")
            elif g[0] in ("cap", "cup"):
                lines.append(f"{g[0]} {g[1]} {'cw' if g[2] else 'ccw'}")
            else:
                lines.append(f"label strand {g[1]} = c{g[2]}")
        for c, f in sorted(self.frames.items()):
            lines.append(f"frame c{c} {f}")
        return "\n".join(lines) + "\n"


def parse_word(text: str) -> TangleWord:
    """Parse the line-based grammar; a fixture name may replace the whole word."""
    w = TangleWord()
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) == 1 and lines[0].split()[0] in FIXTURES:
        name, *args = lines[0].split()
        return fixture(name, *map(int, args))
    for ln in lines:
        tok = ln.split()
        try:
            if tok[0] == "strands":
                if w.gens:
                    raise TangleError("strands must come first")
                w.top = tuple(1 if t == "+" else -1 for t in tok[1:] if t in "+-")
            elif tok[0] in ("x+", "x-"):
                w.gens.append(("x", 1 if tok[0] == "x+" else -1, int(tok[1])))
            elif tok[0] in ("cap", "cup"):
                if tok[2] not in ("cw", "ccw"):
                    raise TangleError(f"bad orientation in {ln!r}")
                w.gens.append((tok[0], int(tok[1]), tok[2] == "cw"))
            elif tok[0] == "frame":
                w.frames[int(tok[1].lstrip("c"))] = w.frames.get(int(tok[1].lstrip("c")), 0) + int(tok[2])
            elif tok[0] == "label":
                # label strand k = cN
                w.gens.append(("label", int(tok[2]), int(tok[4].lstrip("c"))))
            else:
                raise TangleError(f"unknown generator {ln!r}")
        except (IndexError, ValueError) as e:
            if isinstance(e, TangleError):
                raise
            raise TangleError(f"cannot parse {ln!r}") from e
    _Sweep(w).bottom()
    return w


# -- fixtures -------------------------------------------------------------------------

def braid(m: int, letters, top=None) -> TangleWord:
    """String link on ``m`` downward strands from ``("x", s, i)`` letters or ints."""
    gens = []
    for a in letters:
        if isinstance(a, int):
            gens.append(("x", 1 if a > 0 else -1, abs(a)))
        else:
            gens.append(a)
    return TangleWord(tuple(top or (1,) * m), gens)


def gamma(i: int, j: int, m: int = 3, power: int = 1) -> TangleWord:
    """The pure braid generator twisting strand ``j`` once around strand ``i``."""
    if not 1 <= i < j <= m:
        raise TangleError("need 1 <= i < j <= m")
    # strand i slides right under the strands in between, twists with j, returns
    down = [("x", 1, k) for k in range(i, j - 1)]
    up = [("x", -1, k) for k in range(j - 2, i - 1, -1)]
    core = [("x", 1, j - 1)] * 2 if power > 0 else [("x", -1, j - 1)] * 2
    gens = []
    for _ in range(abs(power)):
        gens += down + core + up
    return TangleWord((1,) * m, gens)


def inverse_braid(w: TangleWord) -> TangleWord:
    if any(g[0] != "x" for g in w.gens):
        raise TangleError("only braid words can be inverted")
    return TangleWord(w.top, [("x", -g[1], g[2]) for g in reversed(w.gens)])


def gamma123() -> TangleWord:
    """The commutator ``g13^-1 g23 g13 g23^-1`` read from the top."""
    g13, g23 = gamma(1, 3), gamma(2, 3)
    return inverse_braid(g13) * g23 * g13 * inverse_braid(g23)


def pure_braid_word(tokens, m: int = 3) -> TangleWord:
    """Word in tokens like ``g13`` or ``g13^-1`` (read from the top)."""
    w = TangleWord((1,) * m, [])
    for t in tokens:
        t = t.strip()
        inv = t.endswith("^-1")
        body = t[:-3] if inv else t
        if body == "g123":
            g = gamma123()
        else:
            if len(body) != 3 or body[0] != "g":
                raise TangleError(f"bad pure braid token {t!r}")
            g = gamma(int(body[1]), int(body[2]), m)
        if inv:
            g = inverse_braid(g)
        if len(g.top) != m:
            raise TangleError("token needs a different strand count")
        w = w * g
    return w


def close_string_link(t: TangleWord) -> TangleWord:
    """Standard closure with nested caps and cups on the left.

    After the caps ``cap k cw`` (k = 1..m) the row is ``m`` upward
    positions followed by ``m`` downward ones, and the arc through
    position ``m + k`` returns at position ``m + 1 - k``.  The string link
    runs on the downward half; the closing arcs add no crossings, so the
    blackboard framing is unchanged.
    """
    m = len(t.top)
    if tuple(t.bottom) != tuple(t.top) or any(d != 1 for d in t.top):
        raise TangleError("closure needs a string link of downward strands")
    gens = [("cap", k, True) for k in range(1, m + 1)]
    labels = [g for g in t.gens if g[0] == "label"]
    pure = [a for a, _ in _Sweep(t).run().pos] == list(range(m))
    if not labels and pure:
        # components keep the strand numbering of the string link
        gens += [("label", m + k, k) for k in range(1, m + 1)]
    for g in t.gens:
        if g[0] == "x":
            gens.append(("x", g[1], g[2] + m))
        else:
            gens.append((g[0], g[1] + m, g[2]))
    gens += [("cup", k, True) for k in range(m, 0, -1)]
    return TangleWord((), gens, dict(t.frames))


def _unknot(f=0):
    return TangleWord((), [("cap", 1, True), ("cup", 1, True)], {1: f} if f else {})


def _hopf(f1=0, f2=0):
    w = close_string_link(gamma(1, 2, 2))
    w.frames = {c: f for c, f in ((1, f1), (2, f2)) if f}
    return w


def _trefoil(f=0):
    # right-handed: closure of three positive crossings, blackboard writhe 3
    w = close_string_link(braid(2, [1, 1, 1]))
    w.frames = {1: f - 3} if f != 3 else {}
    return w


def _borromean(f1=0, f2=0, f3=0):
    w = close_string_link(gamma123())
    w.frames = {c: f for c, f in ((1, f1), (2, f2), (3, f3)) if f}
    return w


FIXTURES = {"unknot": _unknot, "hopf": _hopf, "trefoil": _trefoil, "borromean": _borromean}


def fixture(name: str, *args: int) -> TangleWord:
    try:
        return FIXTURES[name](*args)
    except KeyError:
        raise TangleError(f"unknown fixture {name!r}") from None


# -- topology sweep -------------------------------------------------------------------------

class _Sweep:
    """Positions, arcs and crossings of a word, slice by slice."""

    def __init__(self, word: TangleWord):
        self.word = word
        self.pos = [(a, d) for a, d in enumerate(word.top)]
        self.n_arcs = len(word.top)
        self.parent = list(range(self.n_arcs))
        self.start = {a: ("top", a) if d > 0 else None for a, d in enumerate(word.top)}
        self.end = {a: ("top", a) if d < 0 else None for a, d in enumerate(word.top)}
        self.closed: list[int] = []
        self.crossings: list[tuple[int, int, int]] = []
        self.labels: dict[int, int] = {}

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            a = self.parent[a]
        return a

    def _index(self, i: int, width: int = 1) -> int:
        p = i - 1
        if p < 0 or p + width > len(self.pos):
            raise TangleError(f"position {i} out of range for a row of {len(self.pos)}")
        return p

    def step(self, g):
        kind = g[0]
        if kind == "x":
            p = self._index(g[2], 2)
            (a, da), (b, db) = self.pos[p], self.pos[p + 1]
            self.crossings.append((a, b, g[1] * da * db))
            self.pos[p], self.pos[p + 1] = self.pos[p + 1], self.pos[p]
        elif kind == "cap":
            p = g[1] - 1
            if p < 0 or p > len(self.pos):
                raise TangleError(f"cap position {g[1]} out of range")
            a = self.n_arcs
            self.n_arcs += 1
            self.parent.append(a)
            self.start[a] = self.end[a] = None
            left, right = (-1, 1) if g[2] else (1, -1)
            self.pos[p:p] = [(a, left), (a, right)]
        elif kind == "cup":
            p = self._index(g[1], 2)
            (a, da), (b, db) = self.pos[p], self.pos[p + 1]
            if da == db or (da < 0) != bool(g[2]):
                raise TangleError(f"cup {g[1]} does not match the strand directions")
            del self.pos[p:p + 2]
            first, second = (a, b) if da > 0 else (b, a)
            if first == second:
                self.closed.append(first)
            else:
                self.parent[second] = first
                self.end[first] = self.end[second]
                self.pos = [(first if x == second else x, d) for x, d in self.pos]
        elif kind == "label":
            p = self._index(g[1])
            self.labels[self.pos[p][0]] = g[2]
        else:
            raise TangleError(f"unknown generator {g!r}")

    def run(self):
        for g in self.word.gens:
            self.step(g)
        return self

    def bottom(self) -> tuple:
        return tuple(d for _, d in _Sweep(self.word).run().pos)

    # -- after a full run ---------------------------------------------------------------------
    def components(self) -> list[int]:
        """Root arcs in component order (1-based numbering = index + 1)."""
        for k, (a, d) in enumerate(self.pos):
            if d > 0:
                self.end[self.find(a)] = ("bot", k)
            else:
                self.start[self.find(a)] = ("bot", k)
        default = []
        for a in range(len(self.word.top)):
            r = self.find(a)
            if r not in default:
                default.append(r)
        for a, _ in self.pos:
            r = self.find(a)
            if r not in default:
                default.append(r)
        default += [a for a in self.closed if a not in default]
        labels = {}
        for a, c in self.labels.items():
            r = self.find(a)
            if labels.get(r, c) != c:
                raise TangleError("component labelled twice with different numbers")
            labels[r] = c
        n = len(default)
        order: list = [None] * n
        for r, c in labels.items():
            if not 1 <= c <= n or order[c - 1] is not None:
                raise TangleError(f"bad component label c{c}")
            order[c - 1] = r
        rest = iter(r for r in default if r not in labels)
        return [r if r is not None else next(rest) for r in order]

    def support(self, comps) -> Support:
        kinds, orient = [], []
        for r in comps:
            if r in self.closed:
                kinds.append(CIRCLE)
                orient.append(1)
            else:
                kinds.append(INTERVAL)
                s = self.start.get(r)
                orient.append(-1 if s is not None and s[0] == "bot" else 1)
        return Support(tuple(kinds), tuple(orient))


def linking_matrix(word: TangleWord) -> list[list[Fraction]]:
    """Linking numbers off the diagonal, framings (writhe plus correction) on it."""
    sw = _Sweep(word).run()
    comps = sw.components()
    idx = {r: i for i, r in enumerate(comps)}
    l = len(comps)
    M = [[Fraction(0)] * l for _ in range(l)]
    for a, b, s in sw.crossings:
        i, j = idx[sw.find(a)], idx[sw.find(b)]
        if i == j:
            M[i][i] += s
        else:
            M[i][j] += Fraction(s, 2)
            M[j][i] += Fraction(s, 2)
    for c, f in word.frames.items():
        if not 1 <= c <= l:
            raise TangleError(f"frame on missing component c{c}")
        M[c - 1][c - 1] += f
    return M


# -- the expansion -------------------------------------------------------------------------

def _norm(seqs) -> tuple:
    """Relabel chords by first appearance across the slots."""
    m: dict = {}
    return tuple(tuple(m.setdefault(x, len(m)) for x in s) for s in seqs)


def _n_chords(seqs) -> int:
    return sum(len(s) for s in seqs) // 2


@lru_cache(maxsize=None)
def _phi_words(dirs: tuple, inverse: bool, phi: Associator) -> tuple:
    """Associator on (positions left of ``i``, ``i``, ``i + 1``) as chord words.

    ``dirs`` are the directions of positions ``0..i+1``.  Each chord carries
    the product of the directions of its ends.
    """
    i = len(dirs) - 2
    A = [((p, i), dirs[p] * dirs[i]) for p in range(i)]
    B = [((i, i + 1), dirs[i] * dirs[i + 1])]
    poly = phi.inv_words if inverse else phi.words
    out: dict = {}
    for w, c in poly.items():
        for combo in itertools.product(*[A if ch == "A" else B for ch in w]):
            sign = 1
            for _, s in combo:
                sign *= s
            add_into(out, {tuple(l for l, _ in combo): c * sign})
    return tuple(out.items())


@lru_cache(maxsize=None)
def _exp_chord(a: int, b: int, coef: Fraction, cap: int) -> tuple:
    return tuple((((a, b),) * k, coef ** k / math.factorial(k)) for k in range(cap + 1))


class _Engine:
    def __init__(self, word: TangleWord, cap: int, phi: Associator, corrections=None):
        self.sw = _Sweep(word)
        self.cap, self.phi = cap, phi
        self.corr = corrections if corrections is not None else _corrections(cap, phi)
        self.terms = {tuple(() for _ in word.top): Fraction(1)}

    def apply(self, words):
        """Multiply by a sum of chord words (top first) at current positions."""
        pos = self.sw.pos
        out: dict = {}
        for seqs, c in self.terms.items():
            n = _n_chords(seqs)
            for w, c2 in words:
                if n + len(w) > self.cap:
                    continue
                new = list(seqs)
                lab = n
                for a, b in w:
                    for x in (a, b):
                        s, d = pos[x]
                        new[s] = new[s] + (lab,) if d > 0 else (lab,) + new[s]
                    lab += 1
                key = _norm(new) if w else seqs
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        self.terms = out

    def assoc(self, i: int, inverse: bool):
        if i == 0:
            return
        dirs = tuple(d for _, d in self.sw.pos[:i + 2])
        self.apply(_phi_words(dirs, inverse, self.phi))

    def step(self, g):
        sw = self.sw
        if g[0] == "x":
            p = g[2] - 1
            if p < 0 or p + 2 > len(sw.pos):
                raise TangleError(f"crossing {g[2]} out of range")
            eps = g[1] * sw.pos[p][1] * sw.pos[p + 1][1]
            self.assoc(p, False)
            self.apply(_exp_chord(p, p + 1, Fraction(eps, 2), self.cap))
            sw.step(g)
            self.assoc(p, True)
        elif g[0] == "cap":
            sw.step(g)
            corr = self.corr[bool(g[2])]
            out: dict = {}
            for seqs, c in self.terms.items():
                n = _n_chords(seqs)
                for s, c2 in corr.items():
                    if n + len(s) // 2 > self.cap:
                        continue
                    key = seqs + (tuple(x + n for x in s),)
                    out[key] = out.get(key, 0) + c * c2
            self.terms = {k: v for k, v in out.items() if v}
            self.assoc(g[1] - 1, True)
        elif g[0] == "cup":
            p = g[1] - 1
            if p < 0 or p + 2 > len(sw.pos):
                raise TangleError(f"cup {g[1]} out of range")
            self.assoc(p, False)
            (a, da), (b, _) = sw.pos[p], sw.pos[p + 1]
            sw.step(g)
            if a != b:
                first, second = (a, b) if da > 0 else (b, a)
                out = {}
                for seqs, c in self.terms.items():
                    new = list(seqs)
                    new[first] = seqs[first] + seqs[second]
                    new[second] = ()
                    key = _norm(new)
                    out[key] = out.get(key, 0) + c
                self.terms = {k: v for k, v in out.items() if v}
        else:
            sw.step(g)

    def run(self):
        for g in self.sw.word.gens:
            self.step(g)
        return self

    def result(self, frames=True) -> GradedSum:
        sw = self.sw
        comps = sw.components()
        support = sw.support(comps)
        fr = self.sw.word.frames if frames else {}
        for c in fr:
            if not 1 <= c <= len(comps):
                raise TangleError(f"frame on missing component c{c}")
        acc: dict = {}
        for seqs, c in self.terms.items():
            parts = [seqs[r] for r in comps]
            n = _n_chords(parts)
            pieces = [[(parts, c)]]
            for k, f in fr.items():
                if f:
                    pieces.append([(k, j, Fraction(f, 2) ** j / math.factorial(j))
                                   for j in range(self.cap - n + 1)])
            for combo in itertools.product(*pieces):
                (base, coef), extra = combo[0], combo[1:]
                seq2 = [list(s) for s in base]
                lab = n
                for k, j, c2 in extra:
                    iso = []
                    for _ in range(j):
                        iso += [lab, lab]
                        lab += 1
                    seq2[k - 1] = iso + seq2[k - 1]
                    coef = coef * c2
                if lab > self.cap or not coef:
                    continue
                d = chord_diagram(support, seq2)
                acc[d] = acc.get(d, 0) + coef
        return GradedSum(support, acc, self.cap)


# -- cap corrections ------------------------------------------------------------------------

def _strand_value(word: TangleWord, cap: int, phi: Associator) -> dict:
    eng = _Engine(word, cap, phi, corrections={True: {(): 1}, False: {(): 1}}).run()
    out: dict = {}
    for seqs, c in eng.terms.items():
        live = [s for s in seqs if s]
        key = _norm([live[0]])[0] if live else ()
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _concat(x: dict, y: dict, cap: int) -> dict:
    out: dict = {}
    for s, a in x.items():
        for t, b in y.items():
            if (len(s) + len(t)) // 2 > cap:
                continue
            n = len(s) // 2
            key = _norm([s + tuple(v + n for v in t)])[0]
            add_into(out, {key: a * b})
    return out


def _series_inverse(x: dict, cap: int) -> dict:
    """Inverse of ``1 + y`` in the concatenation algebra on one strand."""
    if x.get((), 0) != 1:
        raise TangleError("strand value does not start with 1")
    y = {k: -v for k, v in x.items() if k}
    out, power = {(): Fraction(1)}, {(): Fraction(1)}
    for _ in range(cap):
        power = _concat(power, y, cap)
        if not power:
            break
        add_into(out, power)
    return out


def zigzag(kind: str, down: bool = True) -> TangleWord:
    """The four zigzags: ``"S"`` has its cap on the right, ``"Z"`` on the left."""
    if kind == "S":
        gens = [("cap", 2, down), ("cup", 1, not down)]
    else:
        gens = [("cap", 1, not down), ("cup", 2, down)]
    return TangleWord((1 if down else -1,), gens)


@lru_cache(maxsize=None)
def _corrections_cached(cap: int, phi: Associator):
    # the downward S zigzag uses a clockwise cap, the downward Z a counterclockwise one
    cw = _series_inverse(_strand_value(zigzag("S"), cap, phi), cap)
    ccw = _series_inverse(_strand_value(zigzag("Z"), cap, phi), cap)
    return {True: cw, False: ccw}


def _corrections(cap: int, phi: Associator):
    return _corrections_cached(cap, phi)


# -- public values -----------------------------------------------------------------------------

def _phi(cap: int, phi):
    return phi if phi is not None else default_associator(max(cap, 2))


def zhat(word: TangleWord, cap: int = 4, phi: Associator | None = None) -> GradedSum:
    """Kontsevich integral of a framed q-tangle word, truncated above ``cap``."""
    if cap > 4 and phi is None:
        raise TangleError("the built-in associator is solved through degree 4")
    return _Engine(word, cap, _phi(cap, phi)).run().result()


def zhat_pure_braid(tokens, m: int = 3, cap: int = 4, phi=None) -> GradedSum:
    return zhat(pure_braid_word(tokens, m), cap, phi)


def nu(cap: int = 4, phi=None) -> GradedSum:
    """Value of the zero-framed unknot."""
    return zhat(fixture("unknot"), cap, phi)


def z_check(word: TangleWord, cap: int = 4, phi=None) -> GradedSum:
    """Connected sum of ``nu`` into every component of ``zhat``."""
    if not word.is_closed():
        raise TangleError("z_check needs a closed word")
    z = zhat(word, cap, phi)
    v = nu(cap, phi)
    for c in range(len(z.support)):
        z = connected_sum(z, c, v)
    return z


# -- word transformations -------------------------------------------------------------------

def reverse_component(word: TangleWord, c: int) -> TangleWord:
    """Reverse the orientation of component ``c`` (1-based)."""
    sw = _Sweep(word)
    arcs_at = []
    for g in word.gens:
        if g[0] == "cup":
            arcs_at.append(sw.pos[g[1] - 1][0])
            sw.step(g)
        elif g[0] == "cap":
            sw.step(g)
            arcs_at.append(sw.pos[g[1] - 1][0])
        else:
            arcs_at.append(None)
            sw.step(g)
    comps = sw.components()
    if not 1 <= c <= len(comps):
        raise TangleError(f"no component c{c}")
    target = comps[c - 1]
    top = tuple(-d if sw.find(a) == target else d for a, d in enumerate(word.top))
    gens = []
    for g, a in zip(word.gens, arcs_at):
        if g[0] in ("cap", "cup") and sw.find(a) == target:
            gens.append((g[0], g[1], not g[2]))
        else:
            gens.append(g)
    return TangleWord(top, gens, dict(word.frames))


def _strand_tracks(word: TangleWord):
    """For a braid-like word: the top index of the strand at each position, per step."""
    if any(g[0] in ("cap", "cup") for g in word.gens):
        raise TangleError("operation needs a word made of crossings")
    row = list(range(1, len(word.top) + 1))
    for g in word.gens:
        yield g, list(row)
        if g[0] == "x":
            p = g[2] - 1
            row[p], row[p + 1] = row[p + 1], row[p]


def _strand_components(word: TangleWord) -> dict:
    sw = _Sweep(word).run()
    comps = sw.components()
    return {k + 1: comps.index(sw.find(k)) + 1 for k in range(len(word.top))}


def unlink_component(word: TangleWord, c: int) -> TangleWord:
    """Make component ``c`` pass over every other component, keeping its framing."""
    owner = _strand_components(word)
    if c not in owner.values():
        raise TangleError(f"no component c{c}")
    gens = []
    for g, row in _strand_tracks(word):
        if g[0] == "x":
            p = g[2] - 1
            left, right = owner[row[p]], owner[row[p + 1]]
            if (left == c) != (right == c):
                # x+ puts the strand coming from the right on top
                g = ("x", 1 if right == c else -1, g[2])
        gens.append(g)
    return TangleWord(word.top, gens, dict(word.frames))


def double_word(word: TangleWord, c: int) -> TangleWord:
    """Blackboard-parallel doubling of component ``c``; the copy becomes ``c + 1``.

    A framing correction ``f`` on ``c`` becomes ``f`` full twists of the two
    copies at the top plus the correction ``f`` on each copy.
    """
    owner = _strand_components(word)
    if c not in owner.values():
        raise TangleError(f"no component c{c}")
    if any(g[0] == "label" for g in word.gens):
        raise TangleError("doubling needs the default component numbering")
    if list(owner.values()) != sorted(owner.values()) or len(set(owner.values())) != len(owner):
        raise TangleError("doubling needs a pure word numbered by top positions")
    top, gens = [], []
    for k, d in enumerate(word.top):
        top += [d, d] if owner[k + 1] == c else [d]
    f = word.frames.get(c, 0)
    k0 = [k for k in owner if owner[k] == c][0]
    gens += [("x", 1 if f > 0 else -1, k0)] * (2 * abs(f))
    for g, row in _strand_tracks(word):
        if g[0] != "x":
            gens.append(g)
            continue
        p = g[2] - 1
        shift = sum(1 for q in range(p) if owner[row[q]] == c)
        i = p + shift + 1  # 1-based position of the left strand in the doubled row
        lc, rc = owner[row[p]] == c, owner[row[p + 1]] == c
        s = g[1]
        if lc and rc:
            gens += [("x", s, i + 1), ("x", s, i), ("x", s, i + 2), ("x", s, i + 1)]
        elif lc:
            gens += [("x", s, i + 1), ("x", s, i)]
        elif rc:
            gens += [("x", s, i), ("x", s, i + 1)]
        else:
            gens.append(("x", s, i))
    frames = {}
    for k, v in word.frames.items():
        if k < c:
            frames[k] = v
        elif k == c:
            frames[c] = frames[c + 1] = v
        else:
            frames[k + 1] = v
    return TangleWord(tuple(top), gens, frames)


def filter_one_symbol(x: GradedSum) -> dict:
    """Image in the quotient by diagrams with an internal vertex.

    Modulo that subspace the legs on each component commute, so a chord
    diagram reduces to the multiset of component pairs of its chords.
    Terms with internal vertices or dashed loops map to zero.
    """
    out: dict = {}
    for d, c in x.terms.items():
        if d.verts or d.loops:
            continue
        where = {}
        for comp, seq in enumerate(d.legs):
            for h in seq:
                where[h] = comp
        key = tuple(sorted(tuple(sorted((where[h], where[d.mate[h]])))
                           for h in where if h < d.mate[h]))
        add_into(out, {(x.support, key): c})
    return out


def double_tangle(word: TangleWord, c: int, cap: int = 4, phi=None) -> GradedSum:
    """``zhat`` of the doubled word minus the doubled ``zhat``; lies in i-filter >= 1."""
    from .ops import double_component
    a = zhat(double_word(word, c), cap, phi)
    b = double_component(zhat(word, cap, phi), c - 1)
    return a - b


def _arc_numbers(word: TangleWord) -> list[int]:
    """Component number of every arc, in creation order (top arcs, then caps)."""
    sw = _Sweep(word).run()
    comps = sw.components()
    return [comps.index(sw.find(a)) + 1 for a in range(sw.n_arcs)]


def tensor_word(t1: TangleWord, t2: TangleWord) -> TangleWord:
    """``t1`` and ``t2`` side by side, components of ``t1`` numbered first.

    ``t1`` is swept completely before ``t2`` starts to its right.  Every
    arc is labelled so the numbering matches the disjoint product of values.
    """
    n1 = max(_arc_numbers(t1), default=0)
    num1 = iter(_arc_numbers(t1))
    num2 = iter(k + n1 for k in _arc_numbers(t2))
    w1 = len(t1.bottom)
    top = tuple(t1.top) + tuple(t2.top)
    gens = [("label", k + 1, next(num1)) for k in range(len(t1.top))]
    gens += [("label", len(t1.top) + k + 1, next(num2)) for k in range(len(t2.top))]
    for g in t1.gens:
        if g[0] == "label":
            continue
        gens.append(g)
        if g[0] == "cap":
            gens.append(("label", g[1], next(num1)))
    for g in t2.gens:
        if g[0] == "label":
            continue
        if g[0] == "x":
            gens.append((g[0], g[1], g[2] + w1))
        else:
            gens.append((g[0], g[1] + w1, g[2]))
            if g[0] == "cap":
                gens.append(("label", g[1] + w1, next(num2)))
    frames = dict(t1.frames)
    frames.update({k + n1: v for k, v in t2.frames.items()})
    return TangleWord(top, gens, frames)


def renumber_components(word: TangleWord, mapping: dict) -> TangleWord:
    """Relabel components by ``mapping`` (old number -> new number)."""
    nums = iter(mapping[k] for k in _arc_numbers(word))
    gens = [("label", k + 1, next(nums)) for k in range(len(word.top))]
    for g in word.gens:
        if g[0] == "label":
            continue
        gens.append(g)
        if g[0] == "cap":
            gens.append(("label", g[1], next(nums)))
    frames = {mapping[k]: v for k, v in word.frames.items()}
    return TangleWord(word.top, gens, frames)


def delete_components(word: TangleWord, drop) -> TangleWord:
    """Erase the given components (1-based); the rest keep their relative order."""
    drop = set(drop)
    nums = _arc_numbers(word)
    keep_nums = sorted(set(nums) - drop)
    new_num = {k: i + 1 for i, k in enumerate(keep_nums)}
    sw = _Sweep(word)
    dead = lambda a: nums[a] in drop  # noqa: E731
    kept_arcs = iter(a for a in range(len(nums)) if not dead(a))

    def index(p):  # 0-based position -> 1-based index among kept positions
        return sum(1 for a, _ in sw.pos[:p] if not dead(a)) + 1

    top = tuple(d for (a, d) in sw.pos if not dead(a))
    gens = []
    for g in word.gens:
        if g[0] == "x":
            p = g[2] - 1
            if not dead(sw.pos[p][0]) and not dead(sw.pos[p + 1][0]):
                gens.append(("x", g[1], index(p)))
            sw.step(g)
        elif g[0] == "cup":
            p = g[1] - 1
            if not dead(sw.pos[p][0]):
                gens.append(("cup", index(p), g[2]))
            sw.step(g)
        elif g[0] == "cap":
            sw.step(g)
            p = g[1] - 1
            if not dead(sw.pos[p][0]):
                gens.append(("cap", index(p), g[2]))
        else:
            sw.step(g)
    out = TangleWord(top, gens, {new_num[k]: v for k, v in word.frames.items() if k not in drop})
    del kept_arcs
    mapping = {}
    old = [k for k in _arc_numbers(word) if k not in drop]
    fresh = _arc_numbers(out)
    for a, b in zip(old, fresh):
        mapping[b] = new_num[a]
    return renumber_components(out, mapping) if mapping != {k: k for k in mapping} else out


def free_reduce(word: TangleWord) -> TangleWord:
    """Cancel adjacent inverse crossings ``x+ i, x- i`` until none are left."""
    out: list = []
    for g in word.gens:
        if out and g[0] == "x" and out[-1][0] == "x" and out[-1][2] == g[2] and out[-1][1] == -g[1]:
            out.pop()
        else:
            out.append(g)
    return TangleWord(word.top, out, dict(word.frames))


def rotate_word(word: TangleWord) -> TangleWord:
    """The same tangle turned by 180 degrees in the page."""
    if any(g[0] == "label" for g in word.gens):
        word = renumber_components(word, {k: k for k in set(_arc_numbers(word))})
    sw = _Sweep(word)
    widths = []
    for g in word.gens:
        widths.append(len(sw.pos))
        sw.step(g)
    bottom = [d for _, d in sw.pos]
    gens = []
    for g, w in reversed(list(zip(word.gens, widths))):
        if g[0] == "x":
            gens.append(("x", g[1], w - g[2]))
        elif g[0] == "cap":
            gens.append(("cup", w + 2 - g[1], g[2]))
        elif g[0] == "cup":
            gens.append(("cap", w - g[1], g[2]))
    top = tuple(-d for d in reversed(bottom))
    rot = TangleWord(top, gens, {})
    # carry framings and numbering over by matching components
    nums = _arc_numbers(word)
    return _match_numbering(word, rot, nums)


def _match_numbering(word, rot, nums):
    """Number the components of ``rot`` like those of ``word``.

    Arcs of the rotated word are created in reverse: its caps are the old
    cups.  Components are matched through the crossings they take part in
    and through the boundary, which is enough for the words used here.
    """
    sw0 = _Sweep(word).run()
    comps0 = sw0.components()
    sw1 = _Sweep(rot).run()
    comps1 = sw1.components()
    # crossing k of word is crossing (N-1-k) of rot
    c0 = [(comps0.index(sw0.find(a)) + 1, comps0.index(sw0.find(b)) + 1) for a, b, _ in sw0.crossings]
    c1 = [(comps1.index(sw1.find(a)) + 1, comps1.index(sw1.find(b)) + 1) for a, b, _ in sw1.crossings]
    c1 = c1[::-1]
    mapping = None
    for swap in (False, True):
        trial: dict = {}
        ok = True
        for (a0, b0), (a1, b1) in zip(c0, c1):
            pairs = ((a0, b1), (b0, a1)) if swap else ((a0, a1), (b0, b1))
            for x, y in pairs:
                if trial.setdefault(y, x) != x:
                    ok = False
        if ok and len(set(trial.values())) == len(trial):
            mapping = trial
            break
    if mapping is None or len(mapping) != len(comps1):
        if len(comps1) == 1:
            mapping = {1: 1}
        else:
            raise TangleError("cannot match components of the rotated word")
    out = renumber_components(rot, mapping)
    out.frames = dict(word.frames)
    return out
