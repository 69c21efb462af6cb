"""Exact rational simplex for small covering programs.

The covering LP is  min 1.f  s.t.  A f >= 1, f >= 0  with columns indexed by
reversal patterns. It is solved through its dual  max 1.y  s.t.  A^T y <= 1,
y >= 0  whose slack basis is immediately feasible, so no phase-1 is needed.
Bland's rule on Fractions guarantees termination; scale stays tiny because
columns are generated lazily by the callers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_covering(columns: Sequence[int], nrows: int) -> Tuple[Fraction, list, list]:
    """Solve the covering LP over bitmask columns.

    columns[i] has bit j set when column i covers row j. Returns
    (optimum, y, f): y are the optimal duals per row, f the optimal primal
    weights per column, both exact. Raises ValueError when some row is
    covered by no column.
    """
    if nrows == 0:
        return ZERO, [], [ZERO] * len(columns)
    covered = 0
    for c in columns:
        covered |= c
    if covered != (1 << nrows) - 1:
        raise ValueError("some row is uncovered by every column")
    m = len(columns)
    ncols = nrows + m
    # dual tableau rows: one constraint per pattern; columns y_0..y_{t-1}, slacks
    A: List[List[Fraction]] = []
    for i, pat in enumerate(columns):
        row = [ONE if (pat >> j) & 1 else ZERO for j in range(nrows)]
        row.extend(ONE if s == i else ZERO for s in range(m))
        row.append(ONE)
        A.append(row)
    cost = [ONE] * nrows + [ZERO] * m
    basis = list(range(nrows, ncols))

    def reduced_cost(j: int) -> Fraction:
        z = ZERO
        for i in range(m):
            cb = cost[basis[i]]
            if cb:
                z += cb * A[i][j]
        return z - cost[j]

    while True:
        enter = -1
        for j in range(ncols):
            if reduced_cost(j) < 0:
                enter = j   # Bland: lowest index wins
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = A[i][enter]
            if a > 0:
                r = A[i][-1] / a
                if best is None or r < best or (r == best and basis[i] < basis[leave]):
                    best, leave = r, i
        if leave < 0:
            raise ArithmeticError("dual LP unbounded; covering LP infeasible")
        piv = A[leave][enter]
        A[leave] = [v / piv for v in A[leave]]
        prow = A[leave]
        for i in range(m):
            if i != leave:
                factor = A[i][enter]
                if factor:
                    A[i] = [v - factor * w for v, w in zip(A[i], prow)]
        basis[leave] = enter

    y = [ZERO] * nrows
    for i in range(m):
        if basis[i] < nrows:
            y[basis[i]] = A[i][-1]
    f = [reduced_cost(nrows + i) for i in range(m)]
    opt = sum(y, ZERO)
    # strong duality and primal feasibility are cheap, check them always
    if sum(f, ZERO) != opt:
        raise ArithmeticError("primal/dual objective mismatch")
    for j in range(nrows):
        cover = sum((f[i] for i in range(m) if (columns[i] >> j) & 1), ZERO)
        if cover < 1:
            raise ArithmeticError(f"extracted primal leaves row {j} uncovered")
    return opt, y, f
