"""The sl2 weight system.

Basis ``h, e+f, e-f`` of sl2 with the trace form of the 2-dimensional
representation, which is diagonal ``(2, 2, -2)`` there.  An internal
vertex with cyclic order ``(a, b, c)`` contributes ``tr([X_b, X_a] X_c)``
(this matches the STU convention of :mod:`lmokit.relations`), an edge the
inverse form, a circle the trace of its leg matrices in orientation
order and a dashed loop the dimension 3.  The quadratic Casimir acts as
``3/2`` on the 2-dimensional representation, so a circle with one chord
has weight 3.
"""

from __future__ import annotations

import string
from fractions import Fraction

import numpy as np

from .diagrams import CIRCLE, Diagram, DiagramError
from .gradedsum import GradedSum

_h = np.array([[1, 0], [0, -1]])
_e = np.array([[0, 1], [0, 0]])
_f = np.array([[0, 0], [1, 0]])
X = np.array([_h, _e + _f, _e - _f])  # X[a] is a 2x2 matrix
FORM = np.array([2, 2, -2])
# inverse form is FORM / 4 = (1/2, 1/2, -1/2); keep the integer sign part
INV_SIGN = np.array([1, 1, -1])


def _structure():
    F = np.zeros((3, 3, 3), dtype=np.int64)
    for a in range(3):
        for b in range(3):
            br = X[b] @ X[a] - X[a] @ X[b]
            for c in range(3):
                F[a, b, c] = np.trace(br @ X[c])
    return F


F = _structure()


def weight_sl2(d: Diagram) -> Fraction:
    """Exact sl2 weight of one diagram on an empty or all-circle support."""
    if any(k != CIRCLE for k in d.support.kinds):
        raise DiagramError("weight system needs an empty or all-circle support")
    letters = iter(string.ascii_letters)
    edge_letter = {}
    for h, m in enumerate(d.mate):
        if h < m:
            edge_letter[h] = edge_letter[m] = next(letters)
    ops, subs = [], []
    for v in d.verts:
        subs.append("".join(edge_letter[h] for h in v))
        ops.append(F)
    for h, m in enumerate(d.mate):
        if h < m:
            subs.append(edge_letter[h])
            ops.append(INV_SIGN)
    scalar = Fraction(1, 2) ** (len(d.mate) // 2) * 3 ** d.loops
    for seq in d.legs:
        if not seq:
            scalar *= 2
            continue
        mats = [next(letters) for _ in seq]
        for i, h in enumerate(seq):
            subs.append(edge_letter[h] + mats[i] + mats[(i + 1) % len(seq)])
            ops.append(X)
    if not ops:
        return scalar
    val = np.einsum(",".join(subs) + "->", *[o.astype(object) for o in ops], optimize="greedy")
    return scalar * Fraction(int(val))


def weight_graded(x: GradedSum) -> list[Fraction]:
    """Weights of the graded pieces ``[W(Grad_0 x), W(Grad_1 x), ...]``."""
    top = max((d.degree for d in x.terms), default=0)
    out = [Fraction(0)] * (top + 1)
    for d, c in x.terms.items():
        out[d.degree] += c * weight_sl2(d)
    return out
