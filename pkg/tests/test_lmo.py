from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lmokit.diagrams import EMPTY_SUPPORT, DiagramError, Support, chord_diagram, theta
from lmokit.gradedsum import GradedSum
from lmokit.kontsevich import fixture, reverse_component, tensor_word
from lmokit.lmo import (FormalCombination, determinant, iota_n, iota_n_oracle, linking_data, omega_n,
                        omega_prime, omega_series, signature, unit_factor)

ONE = GradedSum.one(EMPTY_SUPPORT, 1)
TH = GradedSum.of(theta(), 1, 1)


@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_signature_matches_numpy(rows):
    k = len(rows)
    M = [[rows[i][j] + rows[j][i] for j in range(k)] for i in range(k)]
    ev = np.linalg.eigvalsh(np.array(M, dtype=float))
    if np.any(np.abs(ev) < 1e-9):
        return
    assert signature(M) == (int((ev > 0).sum()), int((ev < 0).sum()))
    assert abs(float(determinant(M)) - float(np.prod(ev))) < 1e-6 * max(1, abs(float(np.prod(ev))))


def test_linking_data_hopf():
    ld = linking_data(fixture("hopf", 1, 0))
    assert ld.matrix == ((1, 1), (1, 0))
    assert (ld.sigma_plus, ld.sigma_minus, ld.d) == (1, 1, 1)


def test_iota_on_single_chord():
    x1 = GradedSum.of(chord_diagram(Support.circles(1), [["a", "a"]]))
    assert iota_n(x1, 1) == ONE.scale(-2)
    assert iota_n_oracle(x1, 1) == ONE.scale(-2)
    assert not iota_n(x1, 2)


def test_iota_rejects_intervals():
    with pytest.raises(DiagramError):
        iota_n(GradedSum.one(Support.intervals(1)), 1)


def test_oracle_needs_exact_legs():
    x = GradedSum.of(chord_diagram(Support.circles(1), [["a", "b", "a", "b"]]))
    with pytest.raises(DiagramError):
        iota_n_oracle(x, 1)


@pytest.mark.parametrize("sign", [1, -1])
def test_unit_scalar(sign):
    assert unit_factor(sign, 1).scalar_part() == -sign


@pytest.mark.parametrize("word", [
    fixture("unknot", 1), fixture("unknot", -1), fixture("hopf", 0, 0), fixture("hopf", 5, 0),
    tensor_word(fixture("unknot", 1), fixture("unknot", -1)),
])
def test_omega_of_sphere(word):
    assert omega_n(word, 1) == ONE


def test_omega_trefoil_values():
    assert omega_n(fixture("trefoil", 1), 1) == ONE + TH.scale(Fraction(1, 2))
    assert omega_n(fixture("trefoil", -1), 1) == ONE - TH.scale(Fraction(1, 2))


def test_omega_orientation_free():
    w = fixture("hopf", 1, 1)
    assert omega_n(reverse_component(w, 2), 1) == omega_n(w, 1)


def test_combination_linear_and_text_round_trip():
    comb = FormalCombination([(2, fixture("trefoil", 1)), (-1, fixture("unknot", 1))])
    assert omega_n(comb, 1) == omega_n(fixture("trefoil", 1), 1).scale(2) - ONE
    back = FormalCombination.from_text(comb.to_text())
    assert back.normalized() == comb.normalized()


def test_series_and_prime():
    s = omega_series(fixture("unknot", 1), 1)
    assert s == GradedSum.one(EMPTY_SUPPORT, 1)
    assert omega_prime(fixture("unknot", 1), 1).scalar_part() == 1


@pytest.mark.parametrize("f", [2, 3, -2])
def test_lens_space_scalar_is_order_of_homology(f):
    w = fixture("unknot", f)
    assert omega_n(w, 1).scalar_part() == abs(f) == linking_data(w).d
    assert omega_prime(w, 1).scalar_part() == 1


def test_prime_needs_rational_sphere():
    with pytest.raises(DiagramError):
        omega_prime(fixture("unknot", 0), 1)
