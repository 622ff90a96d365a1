"""Jacobi diagrams on numbered supports and their canonical forms.

A diagram is stored at the level of half-edges.  Every univalent vertex
(a *leg*) owns one half-edge and sits at a position on a support
component; every internal vertex owns three half-edges listed in its
cyclic order; ``mate`` is the involution pairing half-edges into dashed
edges.  Isolated dashed circles are kept as a plain counter ``loops``.

``canonical_form`` returns a renumbered representative together with the
sign produced by the antisymmetry relation, or sign 0 when the diagram
equals its own negative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

CIRCLE = "circle"
INTERVAL = "interval"


class DiagramError(ValueError):
    """Raised for structurally invalid diagrams or bad component indices."""


@dataclass(frozen=True)
class Support:
    """Numbered oriented 1-manifold.  ``orient`` entries are +1 or -1."""

    kinds: tuple[str, ...] = ()
    orient: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.kinds) != len(self.orient):
            raise DiagramError("kinds and orientations differ in length")
        for k in self.kinds:
            if k not in (CIRCLE, INTERVAL):
                raise DiagramError(f"unknown component kind {k!r}")
        for o in self.orient:
            if o not in (1, -1):
                raise DiagramError("orientation must be +1 or -1")

    @classmethod
    def circles(cls, n: int) -> "Support":
        return cls((CIRCLE,) * n, (1,) * n)

    @classmethod
    def intervals(cls, n: int) -> "Support":
        return cls((INTERVAL,) * n, (1,) * n)

    def __len__(self) -> int:
        return len(self.kinds)

    def reversed_at(self, c: int) -> "Support":
        o = list(self.orient)
        o[c] = -o[c]
        return Support(self.kinds, tuple(o))

    def __add__(self, other: "Support") -> "Support":
        return Support(self.kinds + other.kinds, self.orient + other.orient)


EMPTY_SUPPORT = Support()


@dataclass(frozen=True)
class Diagram:
    support: Support
    legs: tuple[tuple[int, ...], ...]
    verts: tuple[tuple[int, int, int], ...]
    mate: tuple[int, ...]
    loops: int = 0

    # -- basic structure -------------------------------------------------
    @property
    def n_legs(self) -> int:
        return sum(len(l) for l in self.legs)

    @property
    def n_internal(self) -> int:
        return len(self.verts)

    @property
    def degree(self) -> int:
        return (self.n_legs + self.n_internal) // 2

    def legs_on(self, c: int) -> int:
        return len(self.legs[c])

    def validate(self) -> None:
        if len(self.legs) != len(self.support):
            raise DiagramError("one leg list per support component required")
        owners = []
        for seq in self.legs:
            owners.extend(seq)
        for v in self.verts:
            if len(v) != 3:
                raise DiagramError("internal vertices must be trivalent")
            owners.extend(v)
        H = len(self.mate)
        if sorted(owners) != list(range(H)):
            raise DiagramError("every half-edge must belong to exactly one vertex")
        for h, m in enumerate(self.mate):
            if not (0 <= m < H) or m == h or self.mate[m] != h:
                raise DiagramError("mate is not a fixed-point-free involution")
        if (self.n_legs + self.n_internal) % 2:
            raise DiagramError("odd number of dashed vertices")
        if self.loops < 0:
            raise DiagramError("negative loop count")

    def owner_table(self):
        """Map half-edge -> ('leg', comp, pos) or ('v', vertex, slot)."""
        tab = [None] * len(self.mate)
        for c, seq in enumerate(self.legs):
            for p, h in enumerate(seq):
                tab[h] = ("leg", c, p)
        for i, v in enumerate(self.verts):
            for s, h in enumerate(v):
                tab[h] = ("v", i, s)
        return tab

    def dashed_components(self) -> list[set[int]]:
        """Half-edge sets of the connected components of the dashed graph."""
        tab = self.owner_table()
        seen = [False] * len(self.mate)
        comps = []
        for start in range(len(self.mate)):
            if seen[start]:
                continue
            comp, stack = set(), [start]
            while stack:
                h = stack.pop()
                if seen[h]:
                    continue
                seen[h] = True
                comp.add(h)
                stack.append(self.mate[h])
                o = tab[h]
                if o[0] == "v":
                    stack.extend(self.verts[o[1]])
            comps.append(comp)
        return comps

    def __str__(self) -> str:
        return format_diagram(self)


# -- construction helpers ------------------------------------------------------

class DiagramBuilder:
    """Assemble a diagram from named endpoints; used by fixtures and parsers."""

    def __init__(self, support: Support):
        self.support = support
        self.legs: list[list[int]] = [[] for _ in range(len(support))]
        self.verts: list[tuple[int, int, int]] = []
        self.pairs: list[tuple[int, int]] = []
        self.loops = 0
        self._n = 0

    def _new(self) -> int:
        self._n += 1
        return self._n - 1

    def leg(self, c: int) -> int:
        h = self._new()
        self.legs[c].append(h)
        return h

    def vertex(self) -> tuple[int, int, int]:
        v = (self._new(), self._new(), self._new())
        self.verts.append(v)
        return v

    def join(self, a: int, b: int) -> None:
        self.pairs.append((a, b))

    def chord(self, c1: int, c2: int) -> None:
        self.join(self.leg(c1), self.leg(c2))

    def build(self) -> Diagram:
        mate = [-1] * self._n
        for a, b in self.pairs:
            if mate[a] != -1 or mate[b] != -1:
                raise DiagramError("half-edge joined twice")
            mate[a], mate[b] = b, a
        d = Diagram(self.support, tuple(map(tuple, self.legs)), tuple(self.verts),
                    tuple(mate), self.loops)
        d.validate()
        return d


def chord_diagram(support: Support, seqs: Sequence[Sequence]) -> Diagram:
    """Pure chord diagram from per-component label sequences.

    Each label must occur exactly twice overall; equal labels are joined.
    """
    where: dict = {}
    legs, n = [], 0
    for seq in seqs:
        row = []
        for lab in seq:
            where.setdefault(lab, []).append(n)
            row.append(n)
            n += 1
        legs.append(tuple(row))
    mate = [-1] * n
    for lab, hs in where.items():
        if len(hs) != 2:
            raise DiagramError(f"chord label {lab!r} does not occur twice")
        a, b = hs
        mate[a], mate[b] = b, a
    d = Diagram(support, tuple(legs), (), tuple(mate), 0)
    d.validate()
    return d


def empty_diagram(support: Support = EMPTY_SUPPORT, loops: int = 0) -> Diagram:
    return Diagram(support, tuple(() for _ in support.kinds), (), (), loops)


def theta() -> Diagram:
    """The planar theta graph, both vertices counterclockwise."""
    b = DiagramBuilder(EMPTY_SUPPORT)
    u, v = b.vertex(), b.vertex()
    # planar embedding: u on the left sees (bottom, middle, top) counterclockwise,
    # v on the right sees (top, middle, bottom)
    b.join(u[0], v[2])
    b.join(u[1], v[1])
    b.join(u[2], v[0])
    return b.build()


# -- canonical form ----------------------------------------------------------------

def _cyclic_sign(orig: tuple[int, int, int], new: tuple[int, int, int]) -> int:
    """+1 if ``new`` is a rotation of ``orig``, -1 if of its reversal."""
    a, b, c = orig
    if new in ((a, b, c), (b, c, a), (c, a, b)):
        return 1
    return -1


def _rotations(support: Support, legs) -> Iterator[tuple[tuple[int, ...], ...]]:
    opts = []
    for kind, seq in zip(support.kinds, legs):
        if kind == CIRCLE and len(seq) > 1:
            opts.append([seq[i:] + seq[:i] for i in range(len(seq))])
        else:
            opts.append([seq])
    return itertools.product(*opts)


class _Search:
    """Branching traversal producing (code, numbering) for one seeding."""

    def __init__(self, d: Diagram, tab):
        self.d = d
        self.tab = tab

    def run(self, seed: list[int], start_vertex=None):
        """Yield numberings (list of half-edges in new order).

        ``seed`` lists already-ordered half-edges (legs); alternatively a
        closed component is entered at ``start_vertex = (vertex, slot)``.
        """
        d = self.d
        order0 = list(seed)
        done0 = set()
        queue0 = list(seed)
        if start_vertex is not None:
            vi, slot = start_vertex
            v = d.verts[vi]
            h0 = v[slot]
            others = [v[(slot + 1) % 3], v[(slot + 2) % 3]]
            done0.add(vi)
            results = []
            for pair in (others, others[::-1]):
                order = [h0] + pair
                results.extend(self._expand(order, [h0] + pair, set(done0)))
            return results
        return self._expand(order0, queue0, done0)

    def _expand(self, order, queue, done):
        d, tab = self.d, self.tab
        out = []
        stack = [(list(order), list(queue), 0, set(done))]
        while stack:
            order, queue, qi, done = stack.pop()
            branched = False
            while qi < len(queue):
                h = queue[qi]
                qi += 1
                m = d.mate[h]
                o = tab[m]
                if o[0] == "v" and o[1] not in done:
                    vi, slot = o[1], o[2]
                    v = d.verts[vi]
                    a, b = v[(slot + 1) % 3], v[(slot + 2) % 3]
                    nd = done | {vi}
                    for x, y in ((b, a), (a, b)):
                        stack.append((order + [m, x, y], queue + [m, x, y], qi, nd))
                    branched = True
                    break
            if not branched:
                out.append(order)
        return out


def _code_for(d: Diagram, numbering: list[int]) -> tuple[int, ...]:
    pos = {h: i for i, h in enumerate(numbering)}
    return tuple(pos[d.mate[h]] for h in numbering)


def canonical_form(d: Diagram) -> tuple[Diagram, int]:
    """Return ``(canonical diagram, sign)`` with sign in {1, -1, 0}.

    The canonical diagram has legs numbered first (component order, from the
    chosen base point), then internal vertices in traversal order, each with
    ascending cyclic order.  ``d`` equals ``sign * canonical`` in the
    diagram space modulo AS.
    """
    if not d.verts:
        return _chord_canonical(d), 1
    tab = d.owner_table()
    search = _Search(d, tab)
    comps = d.dashed_components()
    leg_set = set(h for seq in d.legs for h in seq)
    attached = [c for c in comps if c & leg_set]
    closed = [c for c in comps if not (c & leg_set)]
    attached_hs = set().union(*attached) if attached else set()

    # part 1: everything reachable from the legs
    best_code, best_signs, best_num, best_rot = None, set(), None, None
    for rot in _rotations(d.support, d.legs):
        seed = [h for seq in rot for h in seq]
        for num in search.run(seed):
            code = _code_for(d, num)
            if best_code is None or code < best_code:
                best_code, best_num, best_rot = code, num, rot
                best_signs = {_numbering_sign(d, tab, num)}
            elif code == best_code:
                best_signs.add(_numbering_sign(d, tab, num))
    if len(best_signs) > 1:
        return _zero_rep(d), 0
    sign = best_signs.pop() if best_signs else 1
    numbering = list(best_num) if best_num is not None else []
    assert set(numbering) == attached_hs

    # part 2: closed components, each canonised independently then sorted
    parts = []
    for comp in closed:
        cbest, csigns, cnum = None, set(), None
        vs = sorted({tab[h][1] for h in comp})
        for vi in vs:
            for slot in range(3):
                for num in search.run([], (vi, slot)):
                    code = _code_for(d, num)
                    if cbest is None or code < cbest:
                        cbest, cnum = code, num
                        csigns = {_numbering_sign(d, tab, num)}
                    elif code == cbest:
                        csigns.add(_numbering_sign(d, tab, num))
        if len(csigns) > 1:
            return _zero_rep(d), 0
        sign *= csigns.pop()
        parts.append((len(cnum), cbest, cnum))
    parts.sort()
    for _, _, cnum in parts:
        numbering.extend(cnum)

    pos = {h: i for i, h in enumerate(numbering)}
    k = sum(len(s) for s in d.legs)
    legs, i = [], 0
    for seq in best_rot if best_rot is not None else d.legs:
        legs.append(tuple(range(i, i + len(seq))))
        i += len(seq)
    nv = (len(numbering) - k) // 3
    verts = tuple((k + 3 * j, k + 3 * j + 1, k + 3 * j + 2) for j in range(nv))
    mate = tuple(pos[d.mate[h]] for h in numbering)
    return Diagram(d.support, tuple(legs), verts, mate, d.loops), sign


def _chord_canonical(d: Diagram) -> Diagram:
    """Canonical form of a diagram without internal vertices.

    Circles are rotated one at a time in component order, keeping every
    rotation whose relabelled label sequence is lexicographically least.
    """
    states = [((), {}, 0)]  # (code so far, label map, next label)
    chosen = [[]]
    for kind, seq in zip(d.support.kinds, d.legs):
        rots = [seq[i:] + seq[:i] for i in range(len(seq))] if kind == CIRCLE and seq else [seq]
        best, nxt_states, nxt_chosen = None, [], []
        for (code, lab, n), ch in zip(states, chosen):
            for r in rots:
                lab2, n2, part = dict(lab), n, []
                for h in r:
                    key = min(h, d.mate[h])
                    if key not in lab2:
                        lab2[key] = n2
                        n2 += 1
                    part.append(lab2[key])
                c2 = code + (tuple(part),)
                if best is None or c2 < best:
                    best, nxt_states, nxt_chosen = c2, [(c2, lab2, n2)], [ch + [r]]
                elif c2 == best and all(s[1] != lab2 for s in nxt_states):
                    nxt_states.append((c2, lab2, n2))
                    nxt_chosen.append(ch + [r])
        states, chosen = nxt_states, nxt_chosen
    code = states[0][0]
    legs, first, i = [], {}, 0
    mate = [0] * sum(len(s) for s in d.legs)
    for part in code:
        legs.append(tuple(range(i, i + len(part))))
        for lab in part:
            if lab in first:
                mate[i], mate[first[lab]] = first[lab], i
            else:
                first[lab] = i
            i += 1
    return Diagram(d.support, tuple(legs), (), tuple(mate), d.loops)


def _numbering_sign(d: Diagram, tab, numbering) -> int:
    s = 1
    # vertices appear in numbering as consecutive triples after the legs
    start = 0
    while start < len(numbering) and tab[numbering[start]][0] == "leg":
        start += 1
    for j in range(start, len(numbering), 3):
        trip = tuple(numbering[j:j + 3])
        vi = tab[trip[0]][1]
        s *= _cyclic_sign(d.verts[vi], trip)
    return s


def _zero_rep(d: Diagram) -> Diagram:
    return d


def is_tadpole_free(d: Diagram) -> bool:
    for v in d.verts:
        for h in v:
            if d.mate[h] in v:
                return False
    return True


# -- text format ------------------------------------------------------------------

def format_diagram(d: Diagram) -> str:
    """Render in the record grammar ``support ... ; legs ... ; ivert ... ; edges ...``."""
    sup = " ".join(
        f"c{i + 1}:{k}{'+' if o > 0 else '-'}"
        for i, (k, o) in enumerate(zip(d.support.kinds, d.support.orient)))
    name = lambda h: f"h{h}"
    legs = " ".join(f"c{i + 1}:[{','.join(map(name, seq))}]" for i, seq in enumerate(d.legs))
    iv = " ".join(f"v{j + 1}:({','.join(map(name, v))})" for j, v in enumerate(d.verts))
    edges = " ".join(f"({name(h)}-{name(m)})" for h, m in enumerate(d.mate) if h < m)
    rec = f"support {sup} ; legs {legs} ; ivert {iv} ; edges {edges}"
    if d.loops:
        rec += f" ; loops: {d.loops}"
    return " ".join(rec.split())


def parse_diagram(text: str) -> Diagram:
    """Inverse of :func:`format_diagram`; half-edge names are arbitrary tokens."""
    import re

    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("loops"):
            fields["loops"] = int(part.split(":")[1])
            continue
        key, _, rest = part.partition(" ")
        fields[key] = rest.strip() if rest else ""
    kinds, orient = [], []
    for tok in fields.get("support", "").split():
        m = re.fullmatch(r"c(\d+):(circle|interval)([+-])", tok)
        if not m:
            raise DiagramError(f"bad support token {tok!r}")
        kinds.append(m.group(2))
        orient.append(1 if m.group(3) == "+" else -1)
    support = Support(tuple(kinds), tuple(orient))
    ids: dict[str, int] = {}

    def hid(name):
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    legs = [[] for _ in kinds]
    for m in re.finditer(r"c(\d+):\[([^\]]*)\]", fields.get("legs", "")):
        c = int(m.group(1)) - 1
        legs[c] = [hid(x.strip()) for x in m.group(2).split(",") if x.strip()]
    verts = []
    for m in re.finditer(r"v\w*:\(([^)]*)\)", fields.get("ivert", "")):
        names = [x.strip() for x in m.group(1).split(",")]
        if len(names) != 3:
            raise DiagramError("internal vertex needs three half-edges")
        verts.append(tuple(hid(x) for x in names))
    pairs = re.findall(r"\(([^()\-\s]+)-([^()\-\s]+)\)", fields.get("edges", ""))
    mate = [-1] * len(ids)
    for a, b in pairs:
        ia, ib = hid(a), hid(b)
        if ia >= len(mate) or ib >= len(mate):
            raise DiagramError("edge uses an undeclared half-edge")
        mate[ia], mate[ib] = ib, ia
    d = Diagram(support, tuple(map(tuple, legs)), tuple(verts), tuple(mate),
                fields.get("loops", 0))
    d.validate()
    return d
