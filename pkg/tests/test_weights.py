from fractions import Fraction

import pytest
from hypothesis import given

from lmokit.diagrams import Diagram, DiagramError, Support, chord_diagram, empty_diagram, theta
from lmokit.gradedsum import GradedSum
from lmokit.ops import reverse_orientation
from lmokit.relations import (enumerate_diagrams, ihx_row, ihx_sites, stu_row, stu_sites)
from lmokit.weights import weight_graded, weight_sl2

from strategies import chord_diagrams


def test_basic_values():
    assert weight_sl2(empty_diagram(Support.circles(1))) == 2
    # Casimir 3/2 on the defining representation times trace 2
    assert weight_sl2(chord_diagram(Support.circles(1), [["a", "a"]])) == 3
    assert weight_sl2(theta()) == 12
    d = theta()
    assert weight_sl2(Diagram(d.support, d.legs, d.verts, d.mate, 1)) == 36


def test_intervals_rejected():
    with pytest.raises(DiagramError):
        weight_sl2(chord_diagram(Support.intervals(1), [["a", "a"]]))


def vec_weight(row):
    return sum(c * weight_sl2(k) for k, c in row.items())


@pytest.mark.parametrize("deg", [2, 3])
def test_weight_kills_stu_and_ihx(deg):
    for d in enumerate_diagrams(Support.circles(1), deg, internal=1) + \
            enumerate_diagrams(Support.circles(1), deg, internal=2):
        for h in stu_sites(d):
            assert vec_weight(stu_row(d, h)) == 0
        for h in ihx_sites(d):
            assert vec_weight(ihx_row(d, h)) == 0


@given(chord_diagrams(max_chords=3, components=(1, 2)))
def test_weight_ignores_orientation(d):
    # the defining representation of sl2 is self-dual
    x = GradedSum.of(d)
    assert weight_graded(reverse_orientation(x, 0)) == weight_graded(x)


def test_graded():
    sup = Support.circles(1)
    x = GradedSum.one(sup) + GradedSum.of(chord_diagram(sup, [["a", "a"]]), Fraction(1, 2))
    assert weight_graded(x) == [2, Fraction(3, 2)]
