"""Trichotomy classification of constraint systems, with exact rational linear algebra.

A system is classified against a finite distribution set: impossible (no
conical solution at all), exponentially unlikely (the relaxed cone misses the
convex hull of the allowed distributions), or polynomially decaying with
exponent -Rank(E)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constraints import ConstraintSystem, build_group_system, iter_event_systems
from .core import covering_subgroups
from .lp import feasible_point
from .models import PiSet
from .tally import EventSpec

ZERO = "zero"
EXPONENTIAL = "exponential"
POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class Verdict:
    kind: str
    rank: int | None = None

    def __post_init__(self):
        if (self.kind == POLYNOMIAL) != (self.rank is not None):
            raise ValueError("rank present iff polynomial")

    @property
    def exponent(self) -> Fraction | None:
        """Predicted decay exponent of the likelihood: n^exponent."""
        return None if self.rank is None else Fraction(-self.rank, 2)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == POLYNOMIAL:
            out["rank"] = self.rank
            out["exponent"] = str(self.exponent)
        return out

    def __str__(self) -> str:
        if self.kind == POLYNOMIAL:
            return f"polynomial(rank={self.rank}, exponent={self.exponent})"
        return self.kind


# --- exact elimination ---------------------------------------------------------


def _scale_row(row):
    # integer row with gcd 1, preserving sign; keeps fraction growth in check
    den = math.lcm(*[v.denominator for v in row]) if row else 1
    ints = [v * den for v in row]
    g = math.gcd(*[int(v) for v in ints]) if any(ints) else 1
    return [Fraction(int(v), g if g else 1) for v in ints]


def rank_exact(rows) -> int:
    """Rank over the rationals by Gauss-Jordan with magnitude partial pivoting."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == len(mat):
            break
        best = None
        for i in range(pivot_row, len(mat)):
            if mat[i][col] != 0 and (best is None or abs(mat[i][col]) > abs(mat[best][col])):
                best = i
        if best is None:
            continue
        mat[pivot_row], mat[best] = mat[best], mat[pivot_row]
        piv_row = mat[pivot_row]
        piv = piv_row[col]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col] != 0:
                f = mat[i][col] / piv
                mat[i] = _scale_row([v - f * w for v, w in zip(mat[i], piv_row)])
        pivot_row += 1
    return pivot_row


@dataclass(frozen=True)
class RrefResult:
    """Solved form of {E.x = 0, sum(x) = n}: x_I0 = D.[x_I1, n]."""

    i0: tuple[int, ...]
    i1: tuple[int, ...]
    d: tuple[tuple[Fraction, ...], ...]


def rref_with_total(e_rows, q: int | None = None) -> RrefResult:
    """Reduced row echelon form of E extended with the total-count row.

    Every row of E must sum to zero, which makes the ones row independent, so
    the pivot set has size Rank(E)+1 and pivots plus frees cover all
    coordinates.  The extra column carries the coefficient of the total n.
    """
    e_rows = [list(row) for row in e_rows]
    if q is None:
        if not e_rows:
            raise ValueError("cannot infer the coordinate count from an empty E")
        q = len(e_rows[0])
    for row in e_rows:
        if sum(row) != 0:
            raise ValueError("every row of E must sum to zero")
    mat = [[Fraction(v) for v in row] + [Fraction(0)] for row in e_rows]
    mat.append([Fraction(1)] * q + [Fraction(1)])

    pivots = []
    pivot_row = 0
    for col in range(q):
        best = next((i for i in range(pivot_row, len(mat)) if mat[i][col] != 0), None)
        if best is None:
            continue
        mat[pivot_row], mat[best] = mat[best], mat[pivot_row]
        piv = mat[pivot_row][col]
        mat[pivot_row] = [v / piv for v in mat[pivot_row]]
        piv_row = mat[pivot_row]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [v - f * w for v, w in zip(mat[i], piv_row)]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(mat):
            break

    # no row may reduce to 0 = c*n; that would put the ones row in the span of E
    assert all(
        any(mat[i][c] != 0 for c in range(q)) or mat[i][q] == 0 for i in range(len(mat))
    ), "ones row dependent on E rows"

    i0 = tuple(pivots)
    i1 = tuple(c for c in range(q) if c not in set(pivots))
    assert len(i0) == rank_exact(e_rows) + 1
    d = []
    for r, col in enumerate(i0):
        row = mat[r]
        d.append(tuple([-row[j] for j in i1] + [row[q]]))
    return RrefResult(i0, i1, tuple(d))


# --- feasibility --------------------------------------------------------------


def nonempty_witness(c: ConstraintSystem):
    """A rational point of {x >= 0, E.x = 0, S.x <= -1}, or None.

    Scaling the strict cone makes S.x < 0 equivalent to S.x <= -1, so this is
    exactly nonemptiness of the solution set.
    """
    eqs = [(row, 0) for row in c.e_rows]
    ineqs = [(row, -1) for row in c.s_rows]
    x = feasible_point(c.q, eqs, ineqs)
    return None if x is None else tuple(x)


def h_nonempty(c: ConstraintSystem) -> bool:
    return nonempty_witness(c) is not None


def hull_witness(c: ConstraintSystem, pi: PiSet):
    """Convex weights over pi's members whose mixture satisfies {E.x = 0, S.x <= 0}."""
    k = len(pi.members)
    members = [d.probs for d in pi.members]

    def image_row(row):
        return [sum(Fraction(v) * probs[i] for i, v in enumerate(row)) for probs in members]

    eqs = [([Fraction(1)] * k, 1)]
    eqs.extend((image_row(row), 0) for row in c.e_rows)
    ineqs = [(image_row(row), 0) for row in c.s_rows]
    alpha = feasible_point(k, eqs, ineqs)
    return None if alpha is None else tuple(alpha)


def h_le0_meets_hull(c: ConstraintSystem, pi: PiSet) -> bool:
    return hull_witness(c, pi) is not None


def classify(c: ConstraintSystem, pi: PiSet) -> Verdict:
    if not h_nonempty(c):
        return Verdict(ZERO)
    if not h_le0_meets_hull(c, pi):
        return Verdict(EXPONENTIAL)
    return Verdict(POLYNOMIAL, rank=rank_exact(c.e_rows))


def event_verdict_detailed(e: EventSpec, pi: PiSet):
    """(verdict, dominant system, hull weights): min-rank member dominates the union."""
    best_rank = None
    best_system = None
    best_alpha = None
    any_exponential = False
    for c in iter_event_systems(e, pi.m):
        if not h_nonempty(c):
            continue
        alpha = hull_witness(c, pi)
        if alpha is None:
            any_exponential = True
            continue
        rank = rank_exact(c.e_rows)
        if best_rank is None or rank < best_rank:
            best_rank, best_system, best_alpha = rank, c, alpha
    if best_rank is not None:
        return Verdict(POLYNOMIAL, rank=best_rank), best_system, best_alpha
    if any_exponential:
        return Verdict(EXPONENTIAL), None, None
    return Verdict(ZERO), None, None


def event_verdict(e: EventSpec, pi: PiSet) -> Verdict:
    verdict, _, _ = event_verdict_detailed(e, pi)
    return verdict


def l_pi(pi: PiSet, m: int | None = None):
    """(l_min, l_pi): the smallest covering subgroup fixing some hull member.

    None when no covering subgroup's invariance system meets the hull.
    """
    m = pi.m if m is None else m
    orders = []
    for u in covering_subgroups(m):
        if h_le0_meets_hull(build_group_system(u), pi):
            orders.append(u.order)
    if not orders:
        return None
    l_min = min(orders)
    return l_min, (l_min - 1) * math.factorial(m) // l_min
