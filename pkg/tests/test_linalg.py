from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from gregops.linalg import Echelon, rank

entries = st.integers(-3, 3)
matrices = st.integers(1, 6).flatmap(
    lambda cols: st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=1, max_size=7))


def _as_dicts(rows):
    return [{j: Fraction(a) for j, a in enumerate(r) if a} for r in rows]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(_as_dicts(rows)) == sympy.Matrix(rows).rank()


@given(matrices, st.randoms(use_true_random=False), st.integers(1, 5))
def test_rank_invariant_under_order_and_scaling(rows, rng, c):
    vs = _as_dicts(rows)
    base = rank(vs)
    rng.shuffle(vs)
    assert rank([{k: a * c for k, a in v.items()} for v in vs]) == base


@given(matrices)
def test_reduced_rows_are_rref(rows):
    e = Echelon(pivot_key=lambda k: k)
    for v in _as_dicts(rows):
        e.add(v)
    red = e.reduced_rows()
    for p, row in red.items():
        assert row[p] == 1
        assert max(row) == p
        for q in red:
            if q != p:
                assert q not in row
    want = sympy.Matrix(rows).rref()[0]
    # same row space: every sympy row lies in ours
    for i in range(want.rows):
        vec = {j: Fraction(str(want[i, j])) for j in range(want.cols) if want[i, j] != 0}
        assert e.contains(vec)


def test_contains_and_unhashable_order():
    e = Echelon()
    assert e.add({("a", 1): 1, "b": 2})
    assert not e.add({("a", 1): 2, "b": 4})
    assert e.contains({("a", 1): -1, "b": -2})
    assert not e.contains({"b": 1})
