"""Two-sided systems A x = B y and A x = B x, min-max maps and cone distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import games
from .core import (
    NEG_INF,
    POS_INF,
    DimensionError,
    ExtRational,
    MaxPlusMatrix,
    Vector,
    matvec,
    preprocess_rows,
    residual_apply,
    to_ext,
)


@dataclass(frozen=True)
class TwoSidedSolution:
    status: str  # "solved" or "no_finite_solution"
    x: Vector | None
    y: Vector | None
    iterations: int
    diagnostic: str = ""

    @property
    def solved(self) -> bool:
        return self.status == "solved"


def _meet(*vectors) -> Vector:
    return tuple(min(vals) for vals in zip(*vectors))


def _check_pair(A: MaxPlusMatrix, B: MaxPlusMatrix) -> None:
    if A.shape != B.shape:
        raise DimensionError("A and B must have the same shape")
    common = [j for j in range(A.cols) if not A.col_support[j] and not B.col_support[j]]
    if common:
        raise games.CommonNegInfColumn(f"A and B share -inf columns {common}")


def minmax_h(A: MaxPlusMatrix, B: MaxPlusMatrix, x: Sequence) -> Vector:
    """h(x) = A^# B x ∧ B^# A x."""
    _check_pair(A, B)
    return _meet(residual_apply(A, matvec(B, x)), residual_apply(B, matvec(A, x)))


def minmax_f(A: MaxPlusMatrix, B: MaxPlusMatrix, x: Sequence) -> Vector:
    """f(x) = x ∧ h(x); its fixed points are exactly the solutions of A x = B x."""
    return _meet(tuple(x), minmax_h(A, B, x))


def minmax_g(A: MaxPlusMatrix, B: MaxPlusMatrix, x: Sequence) -> Vector:
    """g(x) = A^# A x ∧ B^# B x ∧ h(x), the alternating map of the stacked system."""
    _check_pair(A, B)
    Ax, Bx = matvec(A, x), matvec(B, x)
    return _meet(residual_apply(A, Ax), residual_apply(B, Bx), residual_apply(A, Bx), residual_apply(B, Ax))


def default_cap(A: MaxPlusMatrix, B: MaxPlusMatrix) -> int:
    """Sweep cap (n + 2m)(4W + 1)kappa with W the largest integer-scaled entry."""
    m, n = A.rows, A.cols
    scale = math.lcm(A.denominator_lcm(), B.denominator_lcm())
    w = max(A.max_abs(), B.max_abs()) * scale
    kappa = min(2 * m, n)
    return (n + 2 * m) * (4 * math.ceil(w) + 1) * kappa


def alternating_separated(
    A: MaxPlusMatrix, B: MaxPlusMatrix, x0: Sequence | None = None, cap: int | None = None
) -> TwoSidedSolution:
    """Solve A x = B y by x <- A^# B B^# A x.

    From the first iterate on the sequence is non-increasing and stays above
    every solution that touches it, so once every coordinate has dropped
    strictly below the first iterate no solution exists.
    """
    if A.rows != B.rows:
        raise DimensionError("A and B must have the same number of rows")
    if A.neg_inf_cols() or B.neg_inf_cols():
        raise games.PreconditionError("the alternating method needs matrices without -inf columns")
    x = tuple(Fraction(0) for _ in range(A.cols)) if x0 is None else tuple(to_ext(v) for v in x0)
    if len(x) != A.cols:
        raise DimensionError("starting vector has the wrong length")
    if any(v in (NEG_INF, POS_INF) for v in x):
        raise ValueError("the starting vector must be finite")
    cap = default_cap(A, B) if cap is None else cap

    def step(v):
        y = residual_apply(B, matvec(A, v))
        return residual_apply(A, matvec(B, y)), y

    first, y = step(x)
    k = 1
    prev = x
    x = first
    while True:
        if x == prev and any(v != NEG_INF for v in x):
            y = residual_apply(B, matvec(A, x))
            Ax = matvec(A, x)
            if all(v == NEG_INF for v in Ax):
                return TwoSidedSolution("no_finite_solution", None, None, k, "degenerate fixed point with A x = -inf")
            if Ax != matvec(B, y):
                raise ArithmeticError("alternating method fixed point failed exact verification")
            return TwoSidedSolution("solved", x, y, k)
        if k > 1 and all(v < f or (v == NEG_INF and f != NEG_INF) for v, f in zip(x, first)):
            return TwoSidedSolution("no_finite_solution", None, None, k, "all coordinates below the first iterate")
        if all(v == NEG_INF for v in x):
            return TwoSidedSolution("no_finite_solution", None, None, k, "iterate collapsed to -inf")
        if k >= cap:
            return TwoSidedSolution("no_finite_solution", None, None, k, "cap")
        prev = x
        x, _ = step(x)
        k += 1


def alternating_nonseparated(
    A: MaxPlusMatrix, B: MaxPlusMatrix, x0: Sequence | None = None, cap: int | None = None
) -> TwoSidedSolution:
    """Solve A x = B x as C x = D y with C = [A; B] and D = [I; I]."""
    _check_pair(A, B)
    C = MaxPlusMatrix.vstack(A, B)
    D = MaxPlusMatrix.vstack(MaxPlusMatrix.identity(A.rows), MaxPlusMatrix.identity(A.rows))
    if C.neg_inf_cols():
        raise games.PreconditionError("stacked matrix has -inf columns")
    sol = alternating_separated(C, D, x0, cap)
    if sol.solved and matvec(A, sol.x) != matvec(B, sol.x):
        raise ArithmeticError("stacked solution does not satisfy A x = B x")
    return sol


@dataclass(frozen=True)
class DegenerateSolutions:
    """Supports allowed for solutions with A x = B y = -inf."""

    x_support: frozenset
    y_support: frozenset


def degenerate_solutions(A: MaxPlusMatrix, B: MaxPlusMatrix) -> DegenerateSolutions:
    """x_i may be finite iff column i of A is -inf (likewise y and B)."""
    if A.rows != B.rows:
        raise DimensionError("A and B must have the same number of rows")
    return DegenerateSolutions(frozenset(A.neg_inf_cols()), frozenset(B.neg_inf_cols()))


def cone_hilbert_distance(A: MaxPlusMatrix, B: MaxPlusMatrix) -> ExtRational:
    """Hilbert distance between span(A) and span(B), i.e. -r(P_A P_B).

    r(P_A P_B) = r(A^# B B^# A) = 2 r(F) for F(x, y) = (A^# B y, B^# A x),
    and F is a two-layer game.
    """
    r = games.spectral_radius(games.separated_game(A, B))
    if r == NEG_INF:
        return POS_INF
    return -2 * r


def min_cheb_distance(A: MaxPlusMatrix, B: MaxPlusMatrix) -> ExtRational:
    """min over x of d_inf(A x, B x), which equals -r(h)."""
    _check_pair(A, B)
    red = preprocess_rows(A, B)
    if red.status == "unsolvable":
        return POS_INF
    if red.empty:
        return Fraction(0)
    r = games.spectral_radius(games.build_game(red.A, red.B, 0))
    return POS_INF if r == NEG_INF else -r
