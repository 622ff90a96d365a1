from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lmokit.associator import solve_associator
from lmokit.diagrams import Support, chord_diagram
from lmokit.gradedsum import GradedSum
from lmokit.kontsevich import (TangleError, braid, close_string_link, delete_components, double_tangle,
                               filter_one_symbol, fixture, free_reduce, gamma, gamma123, inverse_braid,
                               linking_matrix, nu, parse_word, pure_braid_word, reverse_component,
                               rotate_word, tensor_word, zhat, zigzag)
from lmokit.ops import disjoint_product, i_filter, reverse_orientation, stack_product
from lmokit.relations import reduce_chords

C1 = Support.circles(1)
TOKENS = ["g12", "g13", "g23", "g12^-1", "g13^-1", "g23^-1"]


def same(x, y):
    return not reduce_chords(x - y).terms


def test_parse_round_trip():
    w = fixture("borromean")
    assert parse_word(w.text()).text() == w.text()


def test_parse_fixture_line():
    assert parse_word("hopf 1 0").text() == fixture("hopf", 1, 0).text()


@pytest.mark.parametrize("text", ["x+ 1", "cap 1 up", "wiggle 2", "strands + +\nx+ 3"])
def test_parse_errors(text):
    with pytest.raises(TangleError):
        parse_word(text)


def test_nu_low_degrees():
    n = nu(3)
    assert n.scalar_part() == 1
    assert not n.grad(1)
    parallel = chord_diagram(C1, [["a", "a", "b", "b"]])
    crossed = chord_diagram(C1, [["a", "b", "a", "b"]])
    assert n.grad(2) == GradedSum(C1, {parallel: Fraction(1, 24), crossed: Fraction(-1, 24)})


@pytest.mark.parametrize("kind,down", [("S", True), ("Z", True), ("S", False), ("Z", False)])
def test_zigzags_straighten(kind, down):
    z = zhat(zigzag(kind, down), 3)
    assert z.support.kinds == ("interval",)
    assert same(z, GradedSum.one(z.support, 3))


def test_gamma123_low_degree():
    from lmokit.acceptance import y_diagram
    z = zhat(gamma123(), 2)
    assert same(z, GradedSum.one(Support.intervals(3), 2) + GradedSum.of(y_diagram(), 1, 2))


@pytest.mark.parametrize("name,args,lk", [
    ("hopf", (0, 0), [[0, 1], [1, 0]]),
    ("hopf", (2, -1), [[2, 1], [1, -1]]),
    ("trefoil", (1,), [[1]]),
    ("borromean", (), [[0, 0, 0], [0, 0, 0], [0, 0, 0]]),
])
def test_linking_matrix(name, args, lk):
    assert linking_matrix(fixture(name, *args)) == lk


def test_reidemeister_two_and_three():
    assert zhat(braid(2, [1, -1]), 3) == zhat(braid(2, []), 3)
    assert same(zhat(braid(3, [1, 2, 1]), 3), zhat(braid(3, [2, 1, 2]), 3))


@given(st.lists(st.sampled_from(TOKENS), min_size=2, max_size=3), st.data())
def test_stacking_is_multiplicative(tokens, data):
    k = data.draw(st.integers(1, len(tokens) - 1))
    a, b = pure_braid_word(tokens[:k]), pure_braid_word(tokens[k:])
    assert stack_product(zhat(a, 2), zhat(b, 2), 2) == zhat(pure_braid_word(tokens), 2)


def test_inverse_braid_cancels():
    g = gamma(1, 3)
    assert zhat(g * inverse_braid(g), 3) == GradedSum.one(Support.intervals(3), 3)


def test_orientation_reversal():
    w = fixture("hopf", 0, 0)
    assert same(zhat(reverse_component(w, 1), 3), reverse_orientation(zhat(w, 3), 0))


def test_disjoint_union_is_product():
    a, b = fixture("hopf", 0, 0), fixture("unknot", 1)
    assert same(zhat(tensor_word(a, b), 3), disjoint_product(zhat(a, 3), zhat(b, 3), 3))


def test_associator_independence():
    phi = solve_associator(4, even=False, pins={(3, "AAB"): 1})
    w = fixture("hopf", 0, 0)
    assert same(zhat(w, 3, phi), zhat(w, 3))


def test_rotation_preserves_value():
    w = fixture("trefoil", 1)
    assert same(zhat(rotate_word(w), 3), zhat(w, 3))


def test_doubling_defect_in_filter_one():
    d = double_tangle(braid(2, [1, 1]), 1, 3)
    assert i_filter(reduce_chords(d)) >= 1
    assert filter_one_symbol(d) == {}


def test_delete_and_close():
    w = fixture("borromean")
    two = delete_components(w, {3})
    assert linking_matrix(two) == [[0, 0], [0, 0]]
    assert close_string_link(braid(2, [1, 1])).is_closed()


def test_free_reduce():
    w = braid(2, [1, -1, 1])
    assert free_reduce(w).text() == braid(2, [1]).text()


def test_cap_above_built_in_degree():
    with pytest.raises(TangleError):
        zhat(fixture("unknot"), 5)
