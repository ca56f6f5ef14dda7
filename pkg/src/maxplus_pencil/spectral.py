"""Level-set engine: bounds, asymptotics, reconstruction of s(lam), spectrum.

Breakpoints of s and of every representing-matrix cycle mean lie on the
grid of rationals with denominator 2 d q, q <= kappa^2, where d is the
common denominator of the entries.  Cycle means have the form
(k lam + a)/l with l <= kappa and k = l mod 2, so two of them cross where
(k1 l2 - k2 l1) lam is in (1/d)Z, and that coefficient is even.

Reconstruction probes s at one interior point of a grid cell.  The optimal
Min policy p gives a convex upper bound U_p >= s and the Max strategy gives
a concave lower bound g <= s, both exact at the probe.  Where they agree s
is affine, and the agreement set is an interval whose ends are grid points,
found by bisection on the grid without further oracle calls.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import games
from .core import (
    NEG_INF,
    POS_INF,
    ExtRational,
    MaxPlusMatrix,
    Vector,
    format_ext,
    is_finite,
    matvec,
    preprocess_rows,
    residual_apply,
    to_ext,
)


class NegInfColumn(games.PreconditionError):
    pass


class NotAnEigenvalue(Exception):
    """Raised by callers that need an eigenvector and there is none."""


def default_jobs() -> int:
    return max(1, int(os.environ.get("MAXPLUS_PENCIL_JOBS", "1")))


# ------------------------------------------------------------------- types


@dataclass(frozen=True)
class Piece:
    lo: ExtRational
    hi: ExtRational
    slope: Fraction
    offset: Fraction

    def __call__(self, lam) -> Fraction:
        return self.slope * lam + self.offset

    def to_dict(self) -> dict:
        return {
            "lo": format_ext(self.lo),
            "hi": format_ext(self.hi),
            "slope": format_ext(self.slope),
            "offset": format_ext(self.offset),
        }


@dataclass(frozen=True)
class PiecewiseAffine:
    """Continuous piecewise-affine function on the real line in canonical form."""

    pieces: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pieces = _merge(list(self.pieces))
        if pieces[0].lo != NEG_INF or pieces[-1].hi != POS_INF:
            raise ValueError("pieces must cover the whole line")
        for a, b in zip(pieces, pieces[1:]):
            if a.hi != b.lo:
                raise ValueError(f"gap or overlap at {a.hi} / {b.lo}")
            if a(a.hi) != b(b.lo):
                raise ValueError(f"discontinuity at {a.hi}")
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def breakpoints(self) -> tuple:
        return tuple(p.hi for p in self.pieces[:-1])

    def __call__(self, lam) -> Fraction:
        lam = Fraction(to_ext(lam))
        for p in self.pieces:
            if lam <= p.hi:
                return p(lam)
        raise AssertionError("unreachable")

    def zero_set(self) -> "SpectrumSet":
        comps = []
        for p in self.pieces:
            if p.slope == 0 and p.offset == 0:
                comps.append((p.lo, p.hi))
            elif p.slope != 0:
                z = -p.offset / p.slope
                if p.lo <= z <= p.hi:
                    comps.append((z, z))
        return SpectrumSet.from_intervals(comps)

    def to_dict(self) -> dict:
        return {"pieces": [p.to_dict() for p in self.pieces], "breakpoints": [format_ext(b) for b in self.breakpoints]}


def _merge(pieces: list) -> list:
    pieces = [p for p in pieces if p.lo != p.hi]
    out = []
    for p in sorted(pieces, key=lambda p: p.lo):
        if out and out[-1].slope == p.slope and out[-1].offset == p.offset:
            out[-1] = Piece(out[-1].lo, p.hi, p.slope, p.offset)
        else:
            out.append(p)
    return out


@dataclass(frozen=True)
class SpectrumSet:
    """Finite union of closed intervals, sorted and merged; ends may be infinite."""

    components: tuple
    contains_neg_inf: bool = False

    @classmethod
    def from_intervals(cls, intervals, contains_neg_inf: bool = False) -> "SpectrumSet":
        ivs = sorted((a, b) for a, b in intervals if a <= b)
        out = []
        for a, b in ivs:
            if out and a <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))
        return cls(tuple(out), contains_neg_inf)

    def __contains__(self, lam) -> bool:
        return any(a <= lam <= b for a, b in self.components)

    def is_empty(self) -> bool:
        return not self.components

    def __str__(self) -> str:
        if not self.components:
            text = "∅"
        else:
            text = " ∪ ".join(f"[{format_ext(a)},{format_ext(b)}]" for a, b in self.components)
        return text + (" (and -inf)" if self.contains_neg_inf else "")

    def to_dict(self) -> dict:
        return {
            "components": [[format_ext(a), format_ext(b)] for a, b in self.components],
            "contains_neg_inf": self.contains_neg_inf,
        }


@dataclass(frozen=True)
class BoundsReport:
    butkovic: tuple
    collatz_wielandt: tuple | None
    per_column: tuple | None
    per_column_union: SpectrumSet | None
    delta: ExtRational
    c_bounds: tuple
    kappa: int

    def to_dict(self) -> dict:
        pair = lambda p: None if p is None else [format_ext(p[0]), format_ext(p[1])]
        return {
            "butkovic": pair(self.butkovic),
            "collatz_wielandt": pair(self.collatz_wielandt),
            "per_column": None if self.per_column is None else [pair(p) for p in self.per_column],
            "per_column_union": None if self.per_column_union is None else self.per_column_union.to_dict(),
            "delta": format_ext(self.delta),
            "c_bounds": pair(self.c_bounds),
            "kappa": self.kappa,
        }


# ------------------------------------------------------------------ bounds


def _row_ratio(u: Sequence, v: Sequence) -> ExtRational:
    """u / v = max {g : u >= g + v} = min over finite v_j of u_j - v_j."""
    return min((a - b for a, b in zip(u, v) if b != NEG_INF), default=POS_INF)


def butkovic_bounds(A: MaxPlusMatrix, B: MaxPlusMatrix) -> tuple:
    lower = max((_row_ratio(A.row(i), B.row(i)) for i in range(A.rows) if len(A.row_support[i]) == A.cols), default=NEG_INF)
    upper = -max(
        (_row_ratio(B.row(i), A.row(i)) for i in range(B.rows) if len(B.row_support[i]) == B.cols), default=NEG_INF
    )
    return lower, upper


def _require_no_neg_inf_cols(A: MaxPlusMatrix, B: MaxPlusMatrix) -> None:
    bad = sorted(set(A.neg_inf_cols()) | set(B.neg_inf_cols()))
    if bad:
        raise NegInfColumn(f"columns {bad} are -inf in A or B")


def cw_bounds(A: MaxPlusMatrix, B: MaxPlusMatrix) -> tuple:
    """[-r(A^# B), r(B^# A)]."""
    _require_no_neg_inf_cols(A, B)
    r_ab = games.spectral_radius(games.residuation_game(A, B))
    r_ba = games.spectral_radius(games.residuation_game(B, A))
    return -r_ab, r_ba


def per_column_bounds(A: MaxPlusMatrix, B: MaxPlusMatrix) -> tuple:
    """Intervals [-(A^# B 0)_i, (B^# A 0)_i] and their normalised union."""
    _require_no_neg_inf_cols(A, B)
    zero = tuple(Fraction(0) for _ in range(A.cols))
    lo = residual_apply(A, matvec(B, zero))
    hi = residual_apply(B, matvec(A, zero))
    intervals = tuple((-a, b) for a, b in zip(lo, hi))
    return intervals, SpectrumSet.from_intervals(intervals)


def delta_and_c(A: MaxPlusMatrix, B: MaxPlusMatrix) -> tuple:
    """(Delta, C_lower, C_upper) over index triples with finite entries in one row."""
    delta, c_hi, c_lo = NEG_INF, NEG_INF, POS_INF
    for i in range(A.rows):
        a = [A[i, j] for j in A.row_support[i]]
        b = [B[i, j] for j in B.row_support[i]]
        if not a or not b:
            continue
        c_hi = max(c_hi, max(a) - min(b))
        c_lo = min(c_lo, min(a) - max(b))
        delta = max(delta, max(a) - min(b), max(b) - min(a))
    return delta, c_lo, c_hi


def bounds_report(A: MaxPlusMatrix, B: MaxPlusMatrix) -> BoundsReport:
    delta, c_lo, c_hi = delta_and_c(A, B)
    try:
        cw = cw_bounds(A, B)
        cols, union = per_column_bounds(A, B)
    except NegInfColumn:
        cw, cols, union = None, None, None
    return BoundsReport(butkovic_bounds(A, B), cw, cols, union, delta, (c_lo, c_hi), min(2 * A.rows, A.cols))


# ------------------------------------------------------------- asymptotics


def _reduce(A: MaxPlusMatrix, B: MaxPlusMatrix):
    if A.shape != B.shape:
        raise games.DimensionError("A and B must have the same shape")
    common = [j for j in range(A.cols) if not A.col_support[j] and not B.col_support[j]]
    if common:
        raise games.CommonNegInfColumn(f"A and B share -inf columns {common}")
    return preprocess_rows(A, B)


def boolean_asymptotics(A: MaxPlusMatrix, B: MaxPlusMatrix) -> tuple:
    """(left slope, right slope magnitude) read off s° at -1 and +1."""
    red = _reduce(A, B)
    if red.status == "unsolvable":
        raise games.NegInfRow("every variable is forced to -inf; s is identically -inf")
    if red.empty:
        return Fraction(0), Fraction(0)
    Ab, Bb = red.A.booleanized(), red.B.booleanized()
    left = -games.spectral_radius(games.build_game(Ab, Bb, -1))
    right = -games.spectral_radius(games.build_game(Ab, Bb, 1))
    return left, right


# -------------------------------------------------------------------- grid


class Grid:
    """Rationals with denominator dividing 2 d q for some q <= kappa^2."""

    def __init__(self, entry_den: int, kappa: int):
        top = kappa * kappa
        # q <= top/2 divides some 2q <= top, so only the upper half matters
        self.dens = [2 * entry_den * q for q in range(top // 2 + 1, top + 1)]

    def ceil(self, x: Fraction) -> Fraction:
        return min(Fraction(math.ceil(x * d), d) for d in self.dens)

    def floor(self, x: Fraction) -> Fraction:
        return max(Fraction(math.floor(x * d), d) for d in self.dens)

    def after(self, x: Fraction) -> Fraction:
        return min(Fraction(math.floor(x * d) + 1, d) for d in self.dens)

    def between(self, a: Fraction, b: Fraction):
        """A grid point strictly inside (a, b) near the middle, or None."""
        mid = (a + b) / 2
        c = self.ceil(mid)
        if c < b:
            return c
        c = self.floor(mid)
        if c > a:
            return c
        return None

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Upper bound on grid points in [lo, hi] (duplicates across q counted)."""
        return sum(math.floor(hi * d) - math.ceil(lo * d) + 1 for d in self.dens)


# ---------------------------------------------------------- reconstruction


def _probe(args):
    game, lam = args
    return games.solve(game.at(lam))


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _sandwich_interval(game, res, probe, lo, hi, grid):
    """Largest [alpha, beta] within [lo, hi] around ``probe`` where U_p = g."""

    def agree(lam):
        up = games.policy_upper(game, res.min_policy, lam)
        return up == games.strategy_lower(game, res.max_strategy, res.top_node, lam)

    def extend(outer, toward_left):
        if agree(outer):
            return outer
        bad, good = outer, probe
        while True:
            c = grid.between(min(bad, good), max(bad, good))
            if c is None:
                if good == probe:
                    raise RuntimeError("agreement interval has no grid endpoint")
                return good
            if agree(c):
                good = c
            else:
                bad = c

    return extend(lo, True), extend(hi, False)


def _window(A: MaxPlusMatrix, B: MaxPlusMatrix, kappa: int):
    delta, c_lo, c_hi = delta_and_c(A, B)
    if A.is_real() and B.is_real():
        return 3, c_lo, c_hi
    if not A.neg_inf_cols() and not B.neg_inf_cols():
        return 2, -2 * kappa * delta, 2 * kappa * delta
    return 1, -2 * kappa * kappa * delta, 2 * kappa * kappa * delta


def reconstruct_spectral_function(A: MaxPlusMatrix, B: MaxPlusMatrix, jobs: int | None = None) -> PiecewiseAffine:
    """Exact piecewise-affine s(lam) on the whole line."""
    jobs = default_jobs() if jobs is None else jobs
    red = _reduce(A, B)
    if red.status == "unsolvable":
        raise games.NegInfRow("every variable is forced to -inf; s is identically -inf")
    if red.empty:
        return PiecewiseAffine((Piece(NEG_INF, POS_INF, Fraction(0), Fraction(0)),), {"window_case": 0, "oracle_calls": 0})
    A, B = red.A, red.B
    m, n = A.shape
    kappa = min(2 * m, n)
    game = games.build_game(A, B, 0)
    grid = Grid(game.entry_den, kappa)
    case, raw_lo, raw_hi = _window(A, B, kappa)
    lo, hi = grid.floor(Fraction(raw_lo)), grid.ceil(Fraction(raw_hi))
    calls = 0

    left_slope, right_mag = boolean_asymptotics(A, B)
    calls += 2
    edge = _map(_probe, [(game, lo), (game, hi), (game, lo - 1), (game, hi + 1)], jobs)
    calls += 4
    s_lo, s_hi = edge[0].value, edge[1].value
    left = Piece(NEG_INF, lo, left_slope, s_lo - left_slope * lo)
    right = Piece(hi, POS_INF, -right_mag, s_hi + right_mag * hi)
    if left(lo - 1) != edge[2].value or right(hi + 1) != edge[3].value:
        raise RuntimeError("asymptotic pieces disagree with the oracle outside the window")

    pieces = [left, right]
    todo = [(lo, hi)] if lo < hi else []
    while todo:
        probes = []
        for u, v in todo:
            c = grid.between(u, v)
            probes.append((u + v) / 2 if c is None else (c + min(grid.after(c), v)) / 2)
        results = _map(_probe, [(game, p) for p in probes], jobs)
        calls += len(results)
        nxt = []
        for (u, v), p, res in zip(todo, probes, results):
            a, b = _sandwich_interval(game, res, p, u, v, grid)
            ua = games.policy_upper(game, res.min_policy, a)
            ub = games.policy_upper(game, res.min_policy, b)
            slope = (ub - ua) / (b - a)
            pieces.append(Piece(a, b, slope, ua - slope * a))
            if u < a:
                nxt.append((u, a))
            if b < v:
                nxt.append((b, v))
        todo = sorted(nxt)

    meta = {
        "window_case": case,
        "window": (lo, hi),
        "raw_window": (raw_lo, raw_hi),
        "kappa": kappa,
        "oracle_calls": calls,
        "counting_bound": 2 * grid.count(lo, hi) + 7,
        "asymptotic_slopes": (left_slope, right_mag),
    }
    return PiecewiseAffine(tuple(pieces), meta)


# ----------------------------------------------------------------- spectrum


def _decide_zero(args):
    game, lam = args
    return games.decide_at_least(game.at(lam), 0).holds


def _spectrum_window(A: MaxPlusMatrix, B: MaxPlusMatrix, kappa: int):
    if not A.neg_inf_cols() and not B.neg_inf_cols():
        zero = tuple(Fraction(0) for _ in range(A.cols))
        lo = -max(residual_apply(A, matvec(B, zero)))
        hi = max(residual_apply(B, matvec(A, zero)))
        return 2, lo, hi
    M = max(A.max_abs(), B.max_abs())
    return 1, -2 * M * kappa, 2 * M * kappa


def compute_spectrum(A: MaxPlusMatrix, B: MaxPlusMatrix, jobs: int | None = None, meta: dict | None = None) -> SpectrumSet:
    """Zero set of s by deciding s(lam) >= 0 at every possible zero crossing."""
    jobs = default_jobs() if jobs is None else jobs
    neg_flag = bool(A.neg_inf_cols())
    red = _reduce(A, B)
    if red.status == "unsolvable":
        return SpectrumSet((), neg_flag)
    if red.empty:
        return SpectrumSet(((NEG_INF, POS_INF),), neg_flag)
    A, B = red.A, red.B
    m, n = A.shape
    kappa = min(2 * m, n)
    game = games.build_game(A, B, 0)
    d = game.entry_den
    case, lo, hi = _spectrum_window(A, B, kappa)
    cands = sorted(
        {Fraction(a, d * k) for k in range(1, kappa + 1) for a in range(math.ceil(lo * d * k), math.floor(hi * d * k) + 1)}
    )
    verdict = _map(_decide_zero, [(game, c) for c in cands], jobs)
    calls = len(cands)
    zeros = [c for c, ok in zip(cands, verdict) if ok]
    # between two neighbouring zeros s is either 0 throughout or dips below
    pairs = [(a, b) for a, b in zip(cands, cands[1:]) if a in zeros and b in zeros]
    mids = [Fraction(a.numerator + b.numerator, a.denominator + b.denominator) for a, b in pairs]
    mid_ok = _map(_decide_zero, [(game, c) for c in mids], jobs)
    calls += len(mids)
    comps = [(z, z) for z in zeros] + [(a, b) for (a, b), ok in zip(pairs, mid_ok) if ok]
    spec = SpectrumSet.from_intervals(comps, neg_flag)

    if case == 1 and spec.components:
        # outside the window s is zero either nowhere or on a whole half-line
        left_slope, right_mag = boolean_asymptotics(A, B)
        calls += 2
        comps = list(spec.components)
        if left_slope == 0 and comps[0][0] == lo and _decide_zero((game, lo - 1)):
            comps[0] = (NEG_INF, comps[0][1])
        if right_mag == 0 and comps[-1][1] == hi and _decide_zero((game, hi + 1)):
            comps[-1] = (comps[-1][0], POS_INF)
        calls += 2
        spec = SpectrumSet(tuple(comps), neg_flag)
    if meta is not None:
        meta.update({"window_case": case, "window": (lo, hi), "kappa": kappa, "oracle_calls": calls})
    return spec


# ------------------------------------------------------------- eigenvectors


def eigenvector_at(A: MaxPlusMatrix, B: MaxPlusMatrix, lam) -> Vector | None:
    """An x with A x = lam + B x, or None when lam is not an eigenvalue.

    The iteration x <- x ∧ h_lam(x) from 0 is run with the energy stopping
    rule, which sends coordinates to -inf once they fall below any finite
    bound they could reach; its limit is the greatest sub-eigenvector <= 0.
    """
    lam = Fraction(to_ext(lam))
    red = _reduce(A, B)
    if red.status == "unsolvable":
        return None
    full = [NEG_INF] * A.cols
    if red.empty:
        for j in red.kept_cols:
            full[j] = Fraction(0)
    else:
        game = games.build_game(red.A, red.B, lam)
        dec = games.decide_at_least(game, 0)
        if not dec.holds:
            if games.spectral_radius(game) == 0:
                raise RuntimeError("decision and oracle disagree about s(lam) = 0")
            return None
        for j, v in zip(red.kept_cols, dec.witness):
            full[j] = v
    x = tuple(full)
    lhs = matvec(A, x)
    rhs = tuple(v + lam if is_finite(v) else v for v in matvec(B, x))
    if lhs != rhs or all(v == NEG_INF for v in x):
        raise RuntimeError("eigenvector failed exact verification")
    return x
