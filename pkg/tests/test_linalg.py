from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lmokit.linalg import SparseEliminator, add_into, dense_rank, solve_affine


def test_add_into_cancels():
    acc = {"a": Fraction(1)}
    add_into(acc, {"a": 1, "b": 2}, -1)
    assert acc == {"b": Fraction(-2)}


rows_st = st.lists(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4),
                   min_size=1, max_size=6)


@given(rows_st)
def test_rank_matches_numpy(rows):
    cols = list(range(6))
    elim = SparseEliminator()
    for r in rows:
        elim.add({k: v for k, v in r.items() if v})
    M = np.array([[r.get(c, 0) for c in cols] for r in rows], dtype=float)
    assert len(elim.pivots) == np.linalg.matrix_rank(M) == dense_rank(rows, cols)


@given(rows_st, st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=6))
def test_reduce_idempotent_and_kills_rows(rows, vec):
    elim = SparseEliminator()
    for r in rows:
        elim.add(r)
    red = elim.reduce(vec)
    assert elim.reduce(red) == red
    for r in rows:
        assert elim.is_zero(r)


def test_solve_affine():
    sol = solve_affine([({"x": 1, "y": 1}, 3), ({"x": 1, "y": -1}, 1)], ["x", "y"])
    assert sol == {"x": 2, "y": 1}


def test_solve_affine_inconsistent():
    with pytest.raises(ValueError):
        solve_affine([({"x": 1}, 1), ({"x": 2}, 3)], ["x"])
