"""Exact covering LP solver."""

from fractions import Fraction

import pytest

from ordim.simplex import solve_covering


def test_identity_columns():
    # three rows, three singleton columns: optimum 3
    opt, y, f = solve_covering([0b001, 0b010, 0b100], 3)
    assert opt == 3
    assert f == [1, 1, 1]
    assert sum(y) == 3


def test_one_big_column():
    opt, y, f = solve_covering([0b111, 0b001], 3)
    assert opt == 1
    assert f[0] == 1 and f[1] == 0


def test_five_cycle_fractional_cover():
    # vertices 0..4, columns = maximal independent sets of C5 (all 5 edges)
    cols = [0b00101, 0b01010, 0b10100, 0b01001, 0b10010]
    opt, y, f = solve_covering(cols, 5)
    assert opt == Fraction(5, 2)
    assert all(w == Fraction(1, 2) for w in f)


def test_uncoverable_row():
    with pytest.raises(ValueError):
        solve_covering([0b01], 2)


def test_empty_rows():
    opt, y, f = solve_covering([0b1], 0)
    assert opt == 0


def test_duality_gap_zero_random():
    import random
    rng = random.Random(1)
    for _ in range(30):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 12)
        cols = []
        for _ in range(ncols):
            cols.append(rng.getrandbits(nrows))
        cols.append((1 << nrows) - 1)  # keep feasible
        opt, y, f = solve_covering(cols, nrows)
        assert sum(y) == opt == sum(f)
        # dual feasibility: every column constraint holds
        for c in cols:
            s = sum(y[j] for j in range(nrows) if (c >> j) & 1)
            assert s <= 1
        # primal feasibility rechecked by the solver itself
