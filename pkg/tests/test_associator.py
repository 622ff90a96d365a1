from fractions import Fraction

import pytest

from lmokit.associator import (HorizontalAlgebra, associator_equations, default_associator,
                               lyndon_basis, solve_associator)


def test_lyndon_counts():
    # Witt formula for two letters
    assert [len(lyndon_basis(d)) for d in range(1, 6)] == [2, 1, 2, 3, 6]


def test_default_is_even_and_degree_two_fixed():
    phi = default_associator(4)
    assert set(phi.lie) <= {2, 4}
    assert phi.lie[2] == {"AB": Fraction(-1, 24)}


@pytest.mark.parametrize("cap", [2, 3, 4])
def test_residuals_vanish(cap):
    res = associator_equations(default_associator(cap), cap)
    assert all(not {w: c for w, c in r.items() if c and len(w) <= cap} for r in res.values())


def test_perturbed_associator_is_valid():
    phi = solve_associator(4, even=False, pins={(3, "AAB"): 1})
    assert phi.lie[3]
    res = associator_equations(phi, 4)
    assert all(not {w: c for w, c in r.items() if c and len(w) <= 4} for r in res.values())
    assert phi.digest() != default_associator(4).digest()


def test_digest_is_stable():
    assert default_associator(4).digest() == solve_associator(4).digest()


def test_horizontal_four_t():
    a = HorizontalAlgebra(3, 2)
    t12, t13, t23 = a.gen(1, 2), a.gen(1, 3), a.gen(2, 3)
    lhs = a.mul(t12, a.add(t13, t23))
    rhs = a.mul(a.add(t13, t23), t12)
    assert a.add(lhs, a.scale(rhs, -1)) == {}
