"""Exact rational LP feasibility via two-phase simplex with Bland's rule.

Only feasibility is needed: minimize the sum of artificial variables and
check whether it reaches zero.  Bland's rule guarantees termination; all
arithmetic is in Fraction, so answers are exact.
"""

from __future__ import annotations

from fractions import Fraction


def feasible_point(num_vars: int, equalities, inequalities):
    """A nonnegative solution of {A_eq.x = b_eq, A_le.x <= b_le, x >= 0}, or None.

    equalities / inequalities are sequences of (row, rhs).
    """
    n_slack = len(inequalities)
    n = num_vars + n_slack
    mat = []
    rhs = []
    for row, b in equalities:
        mat.append([Fraction(v) for v in row] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    for idx, (row, b) in enumerate(inequalities):
        r = [Fraction(v) for v in row] + [Fraction(0)] * n_slack
        r[num_vars + idx] = Fraction(1)
        mat.append(r)
        rhs.append(Fraction(b))
    for i in range(len(mat)):
        if rhs[i] < 0:
            mat[i] = [-v for v in mat[i]]
            rhs[i] = -rhs[i]
    x = _phase_one(mat, rhs, n)
    return None if x is None else x[:num_vars]


def _phase_one(mat, rhs, n):
    m_rows = len(mat)
    if m_rows == 0:
        return [Fraction(0)] * n
    ncols = n + m_rows
    tableau = []
    for i, row in enumerate(mat):
        art = [Fraction(0)] * m_rows
        art[i] = Fraction(1)
        tableau.append(row + art + [rhs[i]])
    basis = list(range(n, n + m_rows))
    # reduced costs of min(sum of artificials) with the artificial basis
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(ncols):
        cost = Fraction(1) if j >= n else Fraction(0)
        obj[j] = cost - sum(tableau[i][j] for i in range(m_rows))
    obj[ncols] = -sum(rhs)

    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m_rows):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][ncols] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective cannot be unbounded")
        _pivot(tableau, obj, leave, enter)
        basis[leave] = enter

    if obj[ncols] != 0:
        return None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tableau[i][-1]
    return x


def _pivot(tableau, obj, leave, enter):
    piv = tableau[leave][enter]
    tableau[leave] = [v / piv for v in tableau[leave]]
    pivot_row = tableau[leave]
    for i, row in enumerate(tableau):
        if i != leave and row[enter] != 0:
            f = row[enter]
            tableau[i] = [v - f * w for v, w in zip(row, pivot_row)]
    f = obj[enter]
    if f != 0:
        obj[:] = [v - f * w for v, w in zip(obj, pivot_row)]
