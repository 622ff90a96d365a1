from fractions import Fraction

import pytest
from hypothesis import given

from lmokit.diagrams import (Diagram, DiagramError, Support, canonical_form, chord_diagram,
                             empty_diagram, format_diagram, parse_diagram, theta)
from lmokit.gradedsum import GradedSum
from lmokit.ops import assemble

from strategies import chord_diagrams, y_diagrams


def test_theta_canonical_sign_is_minus():
    key, s = canonical_form(theta())
    assert s == -1
    assert canonical_form(key) == (key, 1)


def test_bad_support_rejected():
    with pytest.raises(DiagramError):
        Support(("circle",), (2,))
    with pytest.raises(DiagramError):
        Support(("blob",), (1,))


def test_chord_label_must_pair():
    with pytest.raises(DiagramError):
        chord_diagram(Support.circles(1), [["a", "b", "a"]])


def test_rotation_on_circle_is_same_key():
    a = chord_diagram(Support.circles(1), [["a", "b", "a", "b"]])
    b = chord_diagram(Support.circles(1), [["b", "a", "b", "a"]])
    assert canonical_form(a)[0] == canonical_form(b)[0]


def test_interval_order_matters():
    sup = Support.intervals(1)
    a = chord_diagram(sup, [["a", "a", "b", "b"]])
    b = chord_diagram(sup, [["a", "b", "b", "a"]])
    assert canonical_form(a)[0] != canonical_form(b)[0]


def test_vertex_flip_gives_sign():
    sup = Support.intervals(3)
    legs = [["a"], ["b"], ["c"]]
    y = assemble(sup, legs, [["x", "y", "z"]], [("a", "x"), ("b", "y"), ("c", "z")])
    y2 = assemble(sup, legs, [["y", "x", "z"]], [("a", "x"), ("b", "y"), ("c", "z")])
    (k1, s1), (k2, s2) = canonical_form(y), canonical_form(y2)
    assert k1 == k2 and s1 == -s2


def test_self_negating_tadpole_vanishes():
    # a vertex with two of its edges joined is killed by AS
    d = assemble(Support.circles(1), [["a"]], [["x", "y", "z"]], [("a", "x"), ("y", "z")])
    assert canonical_form(d)[1] == 0
    assert not GradedSum.of(d)


@given(chord_diagrams(max_chords=4, components=(1, 2, 3)))
def test_canonical_idempotent(d):
    key, s = canonical_form(d)
    assert s != 0
    assert canonical_form(key) == (key, 1)


@given(y_diagrams())
def test_canonical_idempotent_with_vertex(d):
    key, s = canonical_form(d)
    if s:
        assert canonical_form(key) == (key, 1)


@given(chord_diagrams(max_chords=3, components=(1, 2)))
def test_format_round_trip(d):
    assert canonical_form(parse_diagram(format_diagram(d)))[0] == canonical_form(d)[0]


def test_format_round_trip_theta_and_loops():
    d = Diagram(theta().support, theta().legs, theta().verts, theta().mate, 2)
    e = parse_diagram(format_diagram(d))
    assert e.loops == 2
    assert canonical_form(e) == canonical_form(d)


def test_degree_counts_vertices():
    assert theta().degree == 1
    assert empty_diagram(Support.circles(2)).degree == 0
    d = chord_diagram(Support.circles(1), [["a", "b", "a", "b"]])
    assert d.degree == 2


def test_gradedsum_arithmetic():
    sup = Support.circles(1)
    x = GradedSum.of(chord_diagram(sup, [["a", "a"]]), 3)
    one = GradedSum.one(sup)
    y = one + x
    assert y.scalar_part() == 1
    assert (y - one) == x
    assert y.grad(1) == x
    assert y.truncate(0) == one
    assert x.scale(Fraction(1, 3)).coefficient(chord_diagram(sup, [["a", "a"]])) == 1


def test_gradedsum_cap_drops_terms():
    sup = Support.circles(1)
    d2 = chord_diagram(sup, [["a", "b", "a", "b"]])
    assert not GradedSum(sup, {d2: 1}, cap=1)


def test_gradedsum_support_mismatch():
    with pytest.raises(DiagramError):
        GradedSum.one(Support.circles(1)) + GradedSum.one(Support.circles(2))
