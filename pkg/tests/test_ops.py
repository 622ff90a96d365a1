
import pytest
from hypothesis import given

from lmokit.diagrams import DiagramError, Support, chord_diagram, theta
from lmokit.gradedsum import GradedSum
from lmokit.ops import (CharacterSum, assemble, character_basis, chi_inverse, chi_symmetrize,
                        connected_sum, coproduct, disjoint_product, double_component, i_filter,
                        is_i_near, is_primitive, reverse_orientation, stack_product)

from strategies import chord_diagrams

P3 = Support.intervals(3)


def y3():
    return assemble(P3, [["a"], ["b"], ["c"]], [["x", "y", "z"]], [("a", "x"), ("b", "y"), ("c", "z")])



@given(chord_diagrams(max_chords=3, components=(1, 2), kind="interval"))
def test_reverse_twice_is_identity(d):
    x = GradedSum.of(d)
    for c in range(len(d.support)):
        assert reverse_orientation(reverse_orientation(x, c), c) == x


@given(chord_diagrams(max_chords=3, components=(1, 2)))
def test_reverse_circle_twice(d):
    x = GradedSum.of(d)
    assert reverse_orientation(reverse_orientation(x, 0), 0) == x


@given(chord_diagrams(max_chords=3, components=(1, 2), kind="interval"))
def test_double_term_count(d):
    # every leg on the doubled component picks one of the two copies
    x = GradedSum.of(d)
    raw = 2 ** len(d.legs[0])
    y = double_component(x, 0)
    assert len(y.support) == len(d.support) + 1
    assert sum(abs(c) for c in y.terms.values()) <= raw


def test_double_single_chord():
    d = chord_diagram(Support.intervals(1), [["a", "a"]])
    y = double_component(GradedSum.of(d), 0)
    # two ends, four choices: two isolated chords and two struts between copies
    assert sum(y.terms.values()) == 4


@given(chord_diagrams(max_chords=3, components=(1, 2)))
def test_coproduct_cocommutative(d):
    cop = coproduct(GradedSum.of(d))
    assert cop == {(b, a): c for (a, b), c in cop.items()}


@given(chord_diagrams(max_chords=3, components=(1, 2)))
def test_coproduct_coassociative(d):
    cop = coproduct(GradedSum.of(d))
    left, right = {}, {}
    for (a, b), c in cop.items():
        for (a1, a2), e in coproduct(GradedSum.of(a)).items():
            left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * e
        for (b1, b2), e in coproduct(GradedSum.of(b)).items():
            right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * e
    assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


def test_primitive_connected():
    assert is_primitive(GradedSum.of(theta()))
    th2 = disjoint_product(GradedSum.of(theta()), GradedSum.of(theta()))
    assert not is_primitive(th2)


def test_i_filter_and_near():
    y = GradedSum.of(y3())
    assert i_filter(y) == 1
    assert all(is_i_near(y, c) for c in range(3))
    ch = GradedSum.of(chord_diagram(P3, [["a"], ["a"], []]))
    assert i_filter(ch) == 0
    assert not is_i_near(ch, 0)
    assert is_i_near(GradedSum.zero(P3), 1)
    with pytest.raises(DiagramError):
        is_i_near(y, 5)


def test_connected_sum_with_unit():
    sup = Support.circles(2)
    x = GradedSum.of(chord_diagram(sup, [["a", "b"], ["a", "b"]]))
    one = GradedSum.one(Support.circles(1))
    assert connected_sum(x, 1, one) == x


def test_stack_unit():
    x = GradedSum.of(y3())
    one = GradedSum.one(P3)
    assert stack_product(x, one) == x == stack_product(one, x)


def test_chi_counts():
    sup = Support.intervals(2)
    assert len(chi_symmetrize(chord_diagram(sup, [["a"], ["a"]])).terms) == 1
    two = chi_symmetrize(chord_diagram(sup, [["a", "b"], ["a", "b"]]))
    assert sum(two.terms.values()) == 4  # 2! * 2! orderings
    one_strand = chi_symmetrize(chord_diagram(Support.intervals(1), [["a", "a"]]))
    assert sum(one_strand.terms.values()) == 2
    empty = chord_diagram(sup, [[], []])
    assert chi_symmetrize(empty) == GradedSum.one(sup)


def test_chi_inverse_of_y_is_y():
    r = chi_inverse(GradedSum.of(y3()))
    assert r == CharacterSum(3, {y3(): 1})


def test_chi_inverse_of_one():
    r = chi_inverse(GradedSum.one(P3))
    assert list(r.terms.values()) == [1]
    assert next(iter(r.terms)).degree == 0


@pytest.mark.parametrize("m,deg,dim", [(1, 1, 1), (1, 2, 2), (2, 1, 3), (2, 2, 9), (3, 1, 6), (3, 2, 28)])
def test_character_basis_matches_chord_dims(m, deg, dim):
    kept, _ = character_basis(m, deg)
    assert len(kept) == dim


@pytest.mark.parametrize("m,deg", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_chi_left_inverse(m, deg):
    kept, _ = character_basis(m, deg)
    for ch in kept:
        assert chi_inverse(chi_symmetrize(ch)) == CharacterSum(m, {ch: 1})


def test_chi_inverse_rejects_circles():
    with pytest.raises(DiagramError):
        chi_inverse(GradedSum.one(Support.circles(1)))
