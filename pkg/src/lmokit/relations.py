"""Diagram spans, local relations and exact quotients.

Spans are produced by an orderly matching search: half-edges are paired
in a fixed order and internal vertices are only ever opened in order,
each entered at slot 0, which removes most relabelings before the
canonical form deduplicates the rest.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .diagrams import (EMPTY_SUPPORT, Diagram, DiagramError,
                       Support, canonical_form)
from .gradedsum import GradedSum, _sort_key
from .linalg import ResourceError, SparseEliminator, add_into, dense_rank
from .ops import assemble

DEFAULT_BUDGET = 2_000_000


# -- enumeration ------------------------------------------------------------------

def _compositions(total: int, parts: int, mins: Sequence[int]):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(mins[0], total - sum(mins[1:]) + 1):
        for rest in _compositions(total - first, parts - 1, mins[1:]):
            yield (first,) + rest


def _matchings(k: int, v: int, budget: list):
    """Yield mate tuples for ``k`` legs and ``v`` vertices (orderly search)."""
    H = k + 3 * v
    mate = [-1] * H
    owner = [None] * k + [j for j in range(v) for _ in range(3)]

    def rec(opened):
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceError("enumeration budget exceeded")
        avail = k + 3 * opened
        h = next((i for i in range(avail) if mate[i] == -1), None)
        if h is None:
            if opened == v:
                yield tuple(mate)
                return
            yield from rec(opened + 1)
            return
        for h2 in range(h + 1, avail):
            if mate[h2] == -1 and (owner[h] is None or owner[h] != owner[h2]):
                mate[h], mate[h2] = h2, h
                yield from rec(opened)
                mate[h] = mate[h2] = -1
        if opened < v:
            h2 = k + 3 * opened
            mate[h], mate[h2] = h2, h
            yield from rec(opened + 1)
            mate[h] = mate[h2] = -1

    yield from rec(0)


def enumerate_diagrams(support: Support, degree: int, min_legs=0, max_legs=None,
                       loops: int = 0, budget: int = DEFAULT_BUDGET,
                       internal: int | None = None) -> list[Diagram]:
    """All canonical diagrams of the given degree, deterministically ordered.

    ``min_legs`` and ``max_legs`` are per-component bounds (int or list);
    ``internal`` fixes the number of internal vertices.
    ``loops`` is the exact number of dashed circles attached to every key.
    """
    l = len(support)
    mins = [min_legs] * l if isinstance(min_legs, int) else list(min_legs)
    maxs = [max_legs] * l if max_legs is None or isinstance(max_legs, int) else list(max_legs)
    keys = set()
    left = [budget]
    for k in range(sum(mins), 2 * degree + 1):
        v = 2 * degree - k
        if (k + 3 * v) % 2 or (internal is not None and v != internal):
            continue
        if l == 0 and k:
            continue
        for comp in _compositions(k, l, mins) if l else [()]:
            if any(m is not None and c > m for c, m in zip(comp, maxs)):
                continue
            legs, i = [], 0
            for c in comp:
                legs.append(tuple(range(i, i + c)))
                i += c
            verts = tuple((k + 3 * j, k + 3 * j + 1, k + 3 * j + 2) for j in range(v))
            for mate in _matchings(k, v, left):
                d = Diagram(support, tuple(legs), verts, mate, loops)
                key, s = canonical_form(d)
                if s:
                    keys.add(key)
    return sorted(keys, key=_sort_key)


def enumerate_closed_by_adjacency(degree: int) -> list[Diagram]:
    """Second route for closed trivalent graphs: symmetric adjacency matrices.

    Every loopless cubic multigraph on ``2 * degree`` vertices is built
    once per matrix; any vertex orientation represents it up to sign.
    """
    n = 2 * degree
    if n == 0:
        return [Diagram(EMPTY_SUPPORT, (), (), (), 0)]
    out = set()
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    A = [[0] * n for _ in range(n)]
    deg = [0] * n

    def rec(ci):
        if ci == len(cells):
            if all(x == 3 for x in deg):
                out.add(_graph_to_diagram(A, n))
            return
        i, j = cells[ci]
        # once row i is past, its degree must be complete
        if j == i + 1 and i > 0 and deg[i - 1] != 3:
            return
        for m in range(0, 4):
            if deg[i] + m > 3 or deg[j] + m > 3:
                break
            A[i][j] = A[j][i] = m
            deg[i] += m
            deg[j] += m
            rec(ci + 1)
            deg[i] -= m
            deg[j] -= m
        A[i][j] = A[j][i] = 0

    rec(0)
    out.discard(None)
    return sorted(out, key=_sort_key)


def _graph_to_diagram(A, n):
    slots = [[] for _ in range(n)]
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            for e in range(A[i][j]):
                a, b = ("s", i, len(slots[i])), ("s", j, len(slots[j]))
                slots[i].append(a)
                slots[j].append(b)
                pairs.append((a, b))
    d = assemble(EMPTY_SUPPORT, [], [tuple(s) for s in slots], pairs)
    key, s = canonical_form(d)
    return key if s else _ZERO


_ZERO = None


# -- local relations ------------------------------------------------------------------

def _rebuild(d: Diagram, remove_verts: Iterable[int], new_verts, outer: dict,
             legs=None, extra_pairs=()):
    """Replace some vertices of ``d``.

    ``outer`` maps each new slot name to the half-edge (old id) it must be
    glued to; when that half-edge is itself a removed slot, the entry names
    the new slot that took its place.
    """
    rem = set(remove_verts)
    removed_hs = {h for i in rem for h in d.verts[i]}
    verts = [v for i, v in enumerate(d.verts) if i not in rem] + list(new_verts)
    pairs, seen = [], set()
    for h, m in enumerate(d.mate):
        if h < m and h not in removed_hs and m not in removed_hs:
            pairs.append((h, m))
    for a, b in outer.items():
        k = frozenset((a, b))
        if k not in seen:
            seen.add(k)
            pairs.append((a, b))
    pairs.extend(extra_pairs)
    return assemble(d.support, legs if legs is not None else d.legs, verts, pairs, d.loops)


def _port_targets(d: Diagram, ports: dict):
    """For named ports (label -> half-edge of a removed vertex) return outer ends.

    The value is either ('h', half_edge) or ('p', other_label).
    """
    inv = {h: lab for lab, h in ports.items()}
    return {lab: (("p", inv[d.mate[h]]) if d.mate[h] in inv else ("h", d.mate[h]))
            for lab, h in ports.items()}


def ihx_row(d: Diagram, h: int) -> dict:
    """IHX relation at the internal edge through half-edge ``h``."""
    tab = d.owner_table()
    m = d.mate[h]
    if tab[h][0] != "v" or tab[m][0] != "v" or tab[h][1] == tab[m][1]:
        return {}
    ui, us = tab[h][1], tab[h][2]
    vi, vs = tab[m][1], tab[m][2]
    u, v = d.verts[ui], d.verts[vi]
    # u = (a, b, e) and v = (e, c, d') up to rotation
    ports = {"a": u[(us + 1) % 3], "b": u[(us + 2) % 3],
             "c": v[(vs + 1) % 3], "d": v[(vs + 2) % 3]}
    tgt = _port_targets(d, ports)
    row: dict = {}
    for x, y, z in (("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")):
        slot = {x: ("n", 0), y: ("n", 1), z: ("n", 4), "d": ("n", 5)}
        nu = (("n", 0), ("n", 1), ("n", 2))
        nv = (("n", 3), ("n", 4), ("n", 5))
        outer = {("n", 2): ("n", 3)}
        for lab, (kind, val) in tgt.items():
            outer[slot[lab]] = slot[val] if kind == "p" else val
        nd = _rebuild(d, (ui, vi), (nu, nv), _dedupe_outer(outer))
        key, s = canonical_form(nd)
        if s:
            add_into(row, {key: s})
    return row


def _dedupe_outer(outer: dict) -> dict:
    out, seen = {}, set()
    for a, b in outer.items():
        k = frozenset((a, b))
        if k in seen:
            continue
        seen.add(k)
        out[a] = b
    return out


def stu_terms(d: Diagram, leg: int) -> list[tuple[Diagram, int]]:
    """Write ``d`` as ``T - U`` using the vertex joined to ``leg``.

    With the vertex read as ``(p, q, c)`` where ``c`` goes to the leg,
    ``T`` carries the end of ``q`` before the end of ``p`` along the
    component and ``U`` the other order.
    """
    tab = d.owner_table()
    m = d.mate[leg]
    if tab[leg][0] != "leg" or tab[m][0] != "v":
        raise DiagramError("leg is not attached to an internal vertex")
    comp, pos = tab[leg][1], tab[leg][2]
    vi, cs = tab[m][1], tab[m][2]
    v = d.verts[vi]
    ports = {"p": v[(cs + 1) % 3], "q": v[(cs + 2) % 3]}
    tgt = _port_targets(d, ports)
    out = []
    for first, second, coef in (("q", "p", 1), ("p", "q", -1)):
        legs = [list(s) for s in d.legs]
        names = {first: ("L", 0), second: ("L", 1)}
        legs[comp][pos:pos + 1] = [names[first], names[second]]
        outer = {}
        for lab, (kind, val) in tgt.items():
            outer[names[lab]] = names[val] if kind == "p" else val
        # drop the old leg/vertex pair entirely
        nd = _rebuild_leg(d, vi, leg, legs, _dedupe_outer(outer))
        out.append((nd, coef))
    return out


def _rebuild_leg(d: Diagram, vi: int, leg: int, legs, outer):
    removed = set(d.verts[vi]) | {leg}
    verts = [v for i, v in enumerate(d.verts) if i != vi]
    pairs = [(h, m) for h, m in enumerate(d.mate)
             if h < m and h not in removed and m not in removed]
    pairs.extend(outer.items())
    return assemble(d.support, legs, verts, pairs, d.loops)


def stu_row(d: Diagram, leg: int) -> dict:
    row: dict = {}
    key, s = canonical_form(d)
    if s:
        add_into(row, {key: s})
    for nd, c in stu_terms(d, leg):
        k2, s2 = canonical_form(nd)
        if s2:
            add_into(row, {k2: -c * s2})
    return row


def stu_sites(d: Diagram) -> list[int]:
    tab = d.owner_table()
    return [h for seq in d.legs for h in seq if tab[d.mate[h]][0] == "v"]


def ihx_sites(d: Diagram) -> list[int]:
    tab = d.owner_table()
    out = []
    for h, m in enumerate(d.mate):
        if h < m and tab[h][0] == "v" and tab[m][0] == "v" and tab[h][1] != tab[m][1]:
            out.append(h)
    return out


def stu_eliminate(x: GradedSum) -> GradedSum:
    """Rewrite every term as a combination of pure chord diagrams via STU."""
    acc: dict = {}
    for d, c in x.terms.items():
        for e, c2 in _stu_chords(d).items():
            v = acc.get(e, 0) + c * c2
            if v:
                acc[e] = v
            else:
                acc.pop(e)
    return GradedSum(x.support, acc, x.cap, canonical=True)


@lru_cache(maxsize=200_000)
def _stu_chords(d: Diagram) -> dict:
    if not d.verts:
        return {d: Fraction(1)}
    sites = stu_sites(d)
    if not sites:
        raise DiagramError("term has a dashed component away from the support: "
                           + str(d))
    out: dict = {}
    for nd, c in stu_terms(d, sites[-1]):
        key, s = canonical_form(nd)
        if s:
            for e, c2 in _stu_chords(key).items():
                add_into(out, {e: c * s * c2})
    return out


# -- quotient spaces ---------------------------------------------------------------------

class QuotientSpace:
    """Span modulo relation rows; survivors are the lowest-ranked keys."""

    def __init__(self, keys: Sequence[Diagram], rows: Iterable[dict], rank=None, label=""):
        self.keys = list(keys)
        self.label = label
        index = {k: i for i, k in enumerate(self.keys)}
        self._index = index
        rank = rank or (lambda k: (_sort_key(k), ))
        self.elim = SparseEliminator(rank=rank)
        self.rows: list[dict] = []
        for r in rows:
            if r:
                self.rows.append(r)
                self.elim.add(r)
        self.basis = [k for k in self.keys if k not in self.elim.pivots]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, vec: dict) -> dict:
        return self.elim.reduce(vec)

    def project_sum(self, x: GradedSum) -> GradedSum:
        return GradedSum(x.support, self.project(x.terms), x.cap, canonical=True)

    def is_zero(self, vec: dict) -> bool:
        return self.elim.is_zero(vec)


def internal_rank(k: Diagram):
    """Rank preferring few internal vertices as survivors."""
    return (k.n_internal, _sort_key(k))


_D_CACHE: dict = {}


def closed_quotient(degree: int) -> QuotientSpace:
    """Grad_degree of the space of closed trivalent diagrams modulo IHX."""
    q = _D_CACHE.get(degree)
    if q is None:
        keys = enumerate_diagrams(EMPTY_SUPPORT, degree)
        rows = [ihx_row(d, h) for d in keys for h in ihx_sites(d)]
        q = QuotientSpace(keys, rows, rank=closed_rank, label=f"D{degree}")
        _D_CACHE[degree] = q
    return q


def closed_rank(k: Diagram):
    """More dashed components survive first (products of primitives)."""
    comps = len(k.dashed_components()) + k.loops
    return (-comps, _sort_key(k))


def reduce_closed(x: GradedSum) -> GradedSum:
    """Normal form of an element of the closed-diagram algebra."""
    if len(x.support):
        raise DiagramError("closed diagrams have empty support")
    acc: dict = {}
    for deg in sorted({d.degree for d in x.terms}):
        part = {d: c for d, c in x.terms.items() if d.degree == deg}
        add_into(acc, closed_quotient(deg).project(part))
    return GradedSum(EMPTY_SUPPORT, acc, x.cap, canonical=True)


def closed_dimension(degree: int, route: str = "sparse") -> int:
    if route == "sparse":
        return closed_quotient(degree).dim
    keys = [k for k in enumerate_closed_by_adjacency(degree) if k is not None]
    rows = [ihx_row(d, h) for d in keys for h in ihx_sites(d)]
    return len(keys) - dense_rank([r for r in rows if r], keys)


def support_quotient(support: Support, degree: int, budget: int = DEFAULT_BUDGET) -> QuotientSpace:
    """Grad_degree of diagrams on ``support`` modulo STU and IHX."""
    keys = enumerate_diagrams(support, degree, budget=budget)
    rows = []
    for d in keys:
        rows.extend(stu_row(d, h) for h in stu_sites(d))
        rows.extend(ihx_row(d, h) for h in ihx_sites(d))
    return QuotientSpace(keys, rows, rank=internal_rank, label=f"A{support}{degree}")


def strand_dimension(m: int, degree: int) -> int:
    return support_quotient(Support.intervals(m), degree).dim


# -- iota relations: (L<2n), R_{n+1}, O_n ----------------------------------------------

def legs_ok(d: Diagram, n: int) -> bool:
    return all(len(s) >= 2 * n for s in d.legs)


def r_windows(d: Diagram, size: int):
    """Multisets of ``size`` segments on dashed edges (edge ids by lower half-edge)."""
    edges = [h for h, m in enumerate(d.mate) if h < m]
    return itertools.combinations_with_replacement(edges, size)


def repair_row(d: Diagram, window, n: int) -> dict:
    """The T-relation family for one window, with loops evaluated to ``-2n``."""
    # segment i on edge e gets boundary points ('P', i) toward e and ('Q', i)
    # toward mate(e); consecutive segments on one edge are joined outside
    per_edge: dict = {}
    for i, e in enumerate(window):
        per_edge.setdefault(e, []).append(i)
    outer: dict = {}

    def link(a, b):
        outer[a] = b
        outer[b] = a

    for e, segs in per_edge.items():
        chain = [("H", e)]
        for i in segs:
            chain += [("P", i), ("Q", i)]
        chain.append(("H", d.mate[e]))
        for j in range(0, len(chain), 2):
            link(chain[j], chain[j + 1])
    pts = [(t, i) for i in range(len(window)) for t in ("P", "Q")]
    cut = set(per_edge) | {d.mate[e] for e in per_edge}
    base_pairs = [(h, m) for h, m in enumerate(d.mate)
                  if h < m and h not in cut]
    row: dict = {}
    for pairing in _pairings(pts):
        inner = {}
        for a, b in pairing:
            inner[a] = b
            inner[b] = a
        pairs, loops, seen = [], 0, set()
        for h in sorted(cut):
            if h in seen:
                continue
            seen.add(h)
            cur = outer[("H", h)]
            while True:
                nxt = inner[cur]
                far = outer[nxt]
                seen.add(cur)
                seen.add(nxt)
                if far[0] == "H":
                    pairs.append((h, far[1]))
                    seen.add(far[1])
                    break
                cur = far
        for p in pts:
            if p in seen:
                continue
            loops += 1
            cur = p
            while cur not in seen:
                seen.add(cur)
                nxt = inner[cur]
                seen.add(nxt)
                cur = outer[nxt]
        nd = assemble(d.support, d.legs, d.verts, base_pairs + pairs, 0)
        key, s = canonical_form(nd)
        if s:
            add_into(row, {key: s * Fraction(-2 * n) ** (loops + d.loops)})
    return row


def _pairings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for p in _pairings(rest):
            yield [(a, items[i])] + p


def _pairs_from(items):
    return list(_pairings(list(items)))


def is_xn_form(d: Diagram, n: int) -> bool:
    """Each circle carries exactly ``n`` isolated chords (closed parts arbitrary)."""
    pos = {}
    for c, seq in enumerate(d.legs):
        if len(seq) != 2 * n:
            return False
        for p, h in enumerate(seq):
            pos[h] = (c, p)
    for c, seq in enumerate(d.legs):
        for p, h in enumerate(seq):
            m = d.mate[h]
            if m not in pos:
                return False
            c2, p2 = pos[m]
            if c2 != c or (p2 - p) % (2 * n) not in (1, 2 * n - 1):
                return False
    return True


def closed_part(d: Diagram) -> Diagram:
    """The closed dashed graph of a diagram whose legs form isolated chords."""
    leg_hs = {h for s in d.legs for h in s}
    verts = [v for v in d.verts]
    pairs = [(h, m) for h, m in enumerate(d.mate) if h < m and h not in leg_hs]
    return assemble(EMPTY_SUPPORT, [], verts, pairs, d.loops)


class IotaQuotient:
    """Degree-``deg`` part of the iota quotient on ``l`` circles."""

    def __init__(self, l: int, n: int, deg: int, budget: int = DEFAULT_BUDGET,
                 loop_windows: bool = False):
        self.l, self.n, self.deg = l, n, deg
        sup = Support.circles(l)
        self.support = sup
        wide = enumerate_diagrams(sup, deg, min_legs=max(0, 2 * n - 1), budget=budget)
        keys = [d for d in wide if legs_ok(d, n)]
        self.keys = keys
        keyset = set(keys)

        def clean(row):
            return {k: c for k, c in row.items() if k in keyset}

        rows = []
        for d in wide:
            for h in stu_sites(d):
                r = clean(stu_row(d, h))
                if r:
                    rows.append(r)
        for d in keys:
            for h in ihx_sites(d):
                r = clean(ihx_row(d, h))
                if r:
                    rows.append(r)
            for w in r_windows(d, n + 1):
                r = clean(repair_row(d, w, n))
                if r:
                    rows.append(r)
        self.n_rows = len(rows)
        self.q = QuotientSpace(keys, rows, rank=self._rank, label=f"iota{l},{n},{deg}")

    def _rank(self, k: Diagram):
        if is_xn_form(k, self.n):
            g, s = canonical_form(closed_part(k))
            return (0, closed_rank(g))
        return (1, internal_rank(k))

    def survivors(self):
        return self.q.basis

    def project(self, vec: dict) -> dict:
        return self.q.project(vec)

    def tilde_iota(self, vec: dict) -> dict:
        """Coefficients of (x_n)^l times closed graphs."""
        red = self.project({k: c for k, c in vec.items() if legs_ok(k, self.n)})
        out: dict = {}
        for k, c in red.items():
            if not is_xn_form(k, self.n):
                raise ResourceError("iota quotient did not reduce to the x_n generators; "
                                    "relation windows are incomplete")
            g, s = canonical_form(closed_part(k))
            if s:
                add_into(out, {g: s * c})
        return out


_IOTA_CACHE: dict = {}


def iota_quotient(l: int, n: int, deg: int, budget: int = DEFAULT_BUDGET) -> IotaQuotient:
    key = (l, n, deg)
    q = _IOTA_CACHE.get(key)
    if q is None:
        q = IotaQuotient(l, n, deg, budget)
        _IOTA_CACHE[key] = q
    return q


# -- chord diagrams modulo 4T --------------------------------------------------------------

_CHORD_CACHE: dict = {}


def chord_quotient(support: Support, degree: int, budget: int = DEFAULT_BUDGET) -> QuotientSpace:
    """Chord diagrams of one degree modulo 4T.

    A 4T row is the difference of the STU expansions of a one-vertex
    diagram at two of its legs.
    """
    q = _CHORD_CACHE.get((support, degree))
    if q is not None:
        return q
    keys = enumerate_diagrams(support, degree, internal=0, budget=budget)
    rows = []
    if degree >= 2:
        for d in enumerate_diagrams(support, degree, internal=1, budget=budget):
            sites = stu_sites(d)
            base = stu_row(d, sites[0])
            for h in sites[1:]:
                r = dict(base)
                add_into(r, stu_row(d, h), -1)
                rows.append(r)
    q = QuotientSpace(keys, rows, label=f"C{support}{degree}")
    _CHORD_CACHE[(support, degree)] = q
    return q


def reduce_chords(x: GradedSum) -> GradedSum:
    """Normal form of a sum of chord diagrams modulo 4T, degree by degree."""
    acc: dict = {}
    for deg in sorted({d.degree for d in x.terms}):
        part = {d: c for d, c in x.terms.items() if d.degree == deg}
        if any(d.verts or d.loops for d in part):
            part = stu_eliminate(GradedSum(x.support, part, canonical=True)).terms
        add_into(acc, chord_quotient(x.support, deg).project(part))
    return GradedSum(x.support, acc, x.cap, canonical=True)


# -- generic relation sets ---------------------------------------------------------------

RELATION_KINDS = ("IHX", "STU", "L", "R", "O")


def generate_relations(span: Sequence[Diagram], kinds: Iterable[str], n: int = 1) -> list[dict]:
    """Relation rows over ``span``; AS is built into the canonical keys.

    ``L`` kills keys with fewer than ``2n`` legs on some circle, ``R`` is the
    repair family on ``n + 1`` segment windows and ``O`` sets a dashed loop
    to ``-2n``.
    """
    kinds = set(kinds)
    bad = kinds - set(RELATION_KINDS)
    if bad:
        raise DiagramError(f"unknown relation kinds {sorted(bad)}")
    rows: list[dict] = []
    for d in span:
        if "STU" in kinds:
            rows.extend(stu_row(d, h) for h in stu_sites(d))
        if "IHX" in kinds:
            rows.extend(ihx_row(d, h) for h in ihx_sites(d))
        if "L" in kinds and not legs_ok(d, n):
            rows.append({d: Fraction(1)})
        if "R" in kinds:
            rows.extend(repair_row(d, w, n) for w in r_windows(d, n + 1))
        if "O" in kinds and d.loops:
            less = Diagram(d.support, d.legs, d.verts, d.mate, d.loops - 1)
            rows.append({d: Fraction(1), less: Fraction(2 * n)})
    return [r for r in rows if r]


def quotient_basis(span: Sequence[Diagram], relations: Iterable[dict], rank=None) -> QuotientSpace:
    return QuotientSpace(span, relations, rank=rank or internal_rank)


# -- on-disk dimension cache ---------------------------------------------------------------

CACHE_VERSION = 1


def cache_dir() -> str | None:
    return os.environ.get("LMOKIT_CACHE_DIR") or None


def _cache_path(space: str, degree: int, kinds: str) -> str | None:
    root = cache_dir()
    if root is None:
        return None
    safe = "".join(ch if ch.isalnum() else "_" for ch in f"{space}-{degree}-{kinds}")
    return os.path.join(root, f"v{CACHE_VERSION}-{safe}.txt")


def save_quotient(q: QuotientSpace, path: str) -> None:
    from .diagrams import format_diagram
    with open(path, "w") as fh:
        fh.write(f"lmokit-quotient {CACHE_VERSION}\n{q.label}\n{q.dim}\n")
        for k in q.basis:
            fh.write(format_diagram(k) + "\n")


def load_quotient(path: str) -> tuple[str, int, list[Diagram]]:
    from .diagrams import parse_diagram
    with open(path) as fh:
        lines = fh.read().splitlines()
    head = lines[0].split()
    if head[:1] != ["lmokit-quotient"] or int(head[1]) != CACHE_VERSION:
        raise ValueError(f"stale or foreign cache file {path}")
    return lines[1], int(lines[2]), [parse_diagram(t) for t in lines[3:] if t]


def space_quotient(space: str, degree: int, budget: int = DEFAULT_BUDGET) -> QuotientSpace:
    """``space`` is ``D``, ``P<m>``, ``S<l>`` (STU/IHX) or ``C<l>`` (chords on circles)."""
    if space == "D":
        return closed_quotient(degree)
    kind, num = space[:1], space[1:]
    if not num.isdigit() or kind not in "PSC":
        raise DiagramError(f"unknown space {space!r}")
    m = int(num)
    if kind == "P":
        return support_quotient(Support.intervals(m), degree, budget)
    if kind == "S":
        return support_quotient(Support.circles(m), degree, budget)
    return chord_quotient(Support.circles(m), degree, budget)


def space_dimension(space: str, degree: int, budget: int = DEFAULT_BUDGET) -> int:
    """Dimension, read from and written to the cache directory when one is set."""
    path = _cache_path(space, degree, "default")
    if path and os.path.exists(path):
        try:
            return load_quotient(path)[1]
        except (ValueError, IndexError, DiagramError):
            pass
    q = space_quotient(space, degree, budget)
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        save_quotient(q, path)
    return q.dim
