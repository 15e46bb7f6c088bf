"""Exact linear algebra over the Gaussian rationals with certificates.

The one workhorse is :func:`solve_certified`, which either produces a
solution of A*x = t (free variables pinned to zero) or a left null-space
witness w with w*A = 0 and w*t != 0.  Either answer can be re-checked
without trusting the solver.  Rows are stored sparsely; the systems this
package builds are mostly sparse and at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import GQ_ONE, GQ_ZERO, GaussianRational

__all__ = ["LinearSolution", "solve_certified", "determinant"]

SparseRow = dict[int, GaussianRational]


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of an exact solve.

    feasible    -- whether A*x = t has a solution
    solution    -- column -> value (zero columns omitted) when feasible
    witness     -- row -> value, a left functional with witness*A = 0 and
                   witness*t != 0, when infeasible
    """

    feasible: bool
    solution: dict[int, GaussianRational] | None = None
    witness: dict[int, GaussianRational] | None = None


def _row_sub(target: SparseRow, source: SparseRow, factor: GaussianRational) -> None:
    for col, val in source.items():
        new = target.get(col, GQ_ZERO) - factor * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def solve_certified(rows: list[SparseRow], rhs: list[GaussianRational], ncols: int) -> LinearSolution:
    """Solve the sparse system given by rows/rhs over ncols unknowns.

    Columns are eliminated in increasing index order, so when several
    solutions exist the returned one is supported on the earliest possible
    columns (callers order columns by ascending degree to get low-degree
    representatives).
    """
    m = len(rows)
    work = [dict(r) for r in rows]
    target = list(rhs)
    # mult[i] tracks the row operations: work[i] = sum_j mult[i][j] * rows[j].
    mult: list[SparseRow] = [{i: GQ_ONE} for i in range(m)]

    pivot_of_col: dict[int, int] = {}
    used_rows: set[int] = set()
    for col in range(ncols):
        pivot_row = None
        for i in range(m):
            if i not in used_rows and work[i].get(col):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        used_rows.add(pivot_row)
        pivot_of_col[col] = pivot_row
        pv = work[pivot_row][col]
        for i in range(m):
            if i == pivot_row:
                continue
            factor = work[i].get(col)
            if factor:
                ratio = factor / pv
                _row_sub(work[i], work[pivot_row], ratio)
                _row_sub(mult[i], mult[pivot_row], ratio)
                target[i] = target[i] - ratio * target[pivot_row]

    for i in range(m):
        if i not in used_rows and not work[i] and target[i]:
            return LinearSolution(feasible=False, witness=dict(mult[i]))

    solution: dict[int, GaussianRational] = {}
    for col, i in pivot_of_col.items():
        value = target[i] / work[i][col]
        if value:
            solution[col] = value
    return LinearSolution(feasible=True, solution=solution)


def verify_certificate(
    rows: list[SparseRow],
    rhs: list[GaussianRational],
    result: LinearSolution,
) -> bool:
    """Re-check a solve result against the original system, exactly."""
    if result.feasible:
        sol = result.solution or {}
        for row, t in zip(rows, rhs):
            acc = GQ_ZERO
            for col, val in row.items():
                if col in sol:
                    acc = acc + val * sol[col]
            if acc != t:
                return False
        return True
    w = result.witness or {}
    combo: SparseRow = {}
    pairing = GQ_ZERO
    for i, weight in w.items():
        _row_sub(combo, rows[i], -weight)
        pairing = pairing + weight * rhs[i]
    return not combo and bool(pairing)


def determinant(matrix: list[list[GaussianRational]]) -> GaussianRational:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    work = [list(row) for row in matrix]
    det = GQ_ONE
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            return GQ_ZERO
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        pv = work[col][col]
        det = det * pv
        for i in range(col + 1, n):
            if work[i][col]:
                ratio = work[i][col] / pv
                for j in range(col, n):
                    work[i][j] = work[i][j] - ratio * work[col][j]
    return det
