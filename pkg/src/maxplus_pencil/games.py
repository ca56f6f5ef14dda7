"""Mean-payoff game oracle for the pencil A x = lam + B x.

The game has one Min node per column and two Max nodes per row (an A-copy
and a B-copy).  From column ``j`` Min moves to ``(A, i)`` paying
``lam - a_ij`` or to ``(B, i)`` paying ``-lam - b_ij``; from ``(A, i)`` Max
moves to column ``k`` collecting ``b_ik``, from ``(B, i)`` collecting
``a_ik``.  One synchronous sweep of value iteration is exactly

    h_lam(x) = (lam + A^# B x) ∧ (-lam + B^# A x).

Values are computed by value iteration on integer-scaled weights and then
verified exactly: a Min policy gives an upper bound (maximum cycle mean of
its representing matrix) and a Max strategy gives a lower bound (minimum
cycle mean reachable from the best start node).  When the greedy strategies
of value iteration do not close the gap, energy iteration at the rounded
candidate supplies strategies that do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import accel
from ._kernels import ABSENT_MAX, ABSENT_MIN, NEG, NEG_CUT, POS_CUT
from .core import (
    NEG_INF,
    POS_INF,
    DimensionError,
    ExtRational,
    MaxPlusMatrix,
    Vector,
    is_finite,
    to_ext,
)


class PreconditionError(ValueError):
    """The pencil violates an assumption of the construction."""


class CommonNegInfColumn(PreconditionError):
    pass


class NegInfRow(PreconditionError):
    pass


class UnverifiableValue(RuntimeError):
    """Value iteration hit its horizon cap without an exact certificate."""


@dataclass(frozen=True)
class GameGraph:
    """Bipartite game with Min edges affine in the parameter ``lam``.

    ``min_const[i][r]`` is ``None`` when Min node ``i`` has no edge to Max
    node ``r``; otherwise the edge weight is ``min_coef[i][r] * lam +
    min_const[i][r]``.  ``max_const[r][j]`` is the (lam-free) Max edge weight
    or ``None``.
    """

    min_const: tuple
    min_coef: tuple
    max_const: tuple
    lam: Fraction
    max_labels: tuple
    kappa: int
    entry_den: int = 1

    @property
    def n_min(self) -> int:
        return len(self.min_const)

    @property
    def n_max(self) -> int:
        return len(self.max_const)

    def at(self, lam) -> "GameGraph":
        return GameGraph(
            self.min_const, self.min_coef, self.max_const, Fraction(lam), self.max_labels, self.kappa, self.entry_den
        )

    def min_choices(self, i: int) -> list:
        return [r for r, c in enumerate(self.min_const[i]) if c is not None]

    def min_weight(self, i: int, r: int, lam=None) -> Fraction:
        lam = self.lam if lam is None else lam
        return self.min_coef[i][r] * lam + self.min_const[i][r]

    def int_weights(self, mu=Fraction(0), extra_scale: int = 1):
        """Integer weight arrays for the game shifted by ``-mu`` per turn.

        Returns ``(min_w, max_w, scale)`` where every weight was multiplied by
        ``scale``.
        """
        mu = Fraction(mu)
        scale = math.lcm(self.entry_den, self.lam.denominator, mu.denominator) * extra_scale
        min_w = np.full((self.n_min, self.n_max), ABSENT_MIN, dtype=np.int64)
        max_w = np.full((self.n_max, self.n_min), ABSENT_MAX, dtype=np.int64)
        for i, row in enumerate(self.min_const):
            for r, c in enumerate(row):
                if c is not None:
                    w = (self.min_coef[i][r] * self.lam + c - mu) * scale
                    min_w[i, r] = int(w)
        for r, row in enumerate(self.max_const):
            for j, c in enumerate(row):
                if c is not None:
                    max_w[r, j] = int(c * scale)
        return min_w, max_w, scale


def _check_pencil(A: MaxPlusMatrix, B: MaxPlusMatrix) -> None:
    if A.shape != B.shape:
        raise DimensionError("A and B must have the same shape")
    common = [j for j in range(A.cols) if not A.col_support[j] and not B.col_support[j]]
    if common:
        raise CommonNegInfColumn(f"A and B share -inf columns {common}; the game has Min nodes without moves")
    rows = [i for i in range(A.rows) if not A.row_support[i] or not B.row_support[i]]
    if rows:
        raise NegInfRow(f"rows {rows} are -inf on one side; run preprocess_rows first")


def build_game(A: MaxPlusMatrix, B: MaxPlusMatrix, lam) -> GameGraph:
    _check_pencil(A, B)
    m, n = A.shape
    lam = Fraction(to_ext(lam))
    min_const, min_coef = [], []
    for j in range(n):
        consts = [None] * (2 * m)
        coefs = [0] * (2 * m)
        for i in range(m):
            if A[i, j] != NEG_INF:
                consts[i], coefs[i] = -A[i, j], 1
            if B[i, j] != NEG_INF:
                consts[m + i], coefs[m + i] = -B[i, j], -1
        min_const.append(tuple(consts))
        min_coef.append(tuple(coefs))
    max_const = [tuple(B[i, k] if B[i, k] != NEG_INF else None for k in range(n)) for i in range(m)]
    max_const += [tuple(A[i, k] if A[i, k] != NEG_INF else None for k in range(n)) for i in range(m)]
    labels = tuple(("A", i) for i in range(m)) + tuple(("B", i) for i in range(m))
    den = math.lcm(A.denominator_lcm(), B.denominator_lcm())
    return GameGraph(tuple(min_const), tuple(min_coef), tuple(max_const), lam, labels, min(2 * m, n), den)


def residuation_game(A: MaxPlusMatrix, B: MaxPlusMatrix) -> GameGraph:
    """Game whose sweep is x -> A^# B x (a lam-free min-max function)."""
    if A.rows != B.rows or A.cols != B.cols:
        raise DimensionError("A and B must have the same shape")
    if A.neg_inf_cols():
        raise PreconditionError(f"A has -inf columns {A.neg_inf_cols()}")
    m, n = A.shape
    min_const = tuple(tuple(-A[i, j] if A[i, j] != NEG_INF else None for i in range(m)) for j in range(n))
    min_coef = tuple(tuple(0 for _ in range(m)) for _ in range(n))
    max_const = tuple(tuple(B[i, k] if B[i, k] != NEG_INF else None for k in range(n)) for i in range(m))
    den = math.lcm(A.denominator_lcm(), B.denominator_lcm())
    return GameGraph(min_const, min_coef, max_const, Fraction(0), tuple(("A", i) for i in range(m)), min(m, n), den)


def separated_game(A: MaxPlusMatrix, B: MaxPlusMatrix) -> GameGraph:
    """Game on the n1 + n2 coordinates of (x, y) -> (A^# B y, B^# A x)."""
    if A.rows != B.rows:
        raise DimensionError("A and B must have the same number of rows")
    if A.neg_inf_cols() or B.neg_inf_cols():
        raise PreconditionError("A and B must not have -inf columns")
    m, n1, n2 = A.rows, A.cols, B.cols
    min_const, min_coef = [], []
    for j in range(n1):
        min_const.append(tuple(-A[i, j] if A[i, j] != NEG_INF else None for i in range(m)) + (None,) * m)
        min_coef.append((0,) * (2 * m))
    for j in range(n2):
        min_const.append((None,) * m + tuple(-B[i, j] if B[i, j] != NEG_INF else None for i in range(m)))
        min_coef.append((0,) * (2 * m))
    # Max node (A, i) collects b_ik and lands on y-coordinate k
    max_const = [tuple([None] * n1 + [B[i, k] if B[i, k] != NEG_INF else None for k in range(n2)]) for i in range(m)]
    max_const += [tuple([A[i, k] if A[i, k] != NEG_INF else None for k in range(n1)] + [None] * n2) for i in range(m)]
    labels = tuple(("A", i) for i in range(m)) + tuple(("B", i) for i in range(m))
    den = math.lcm(A.denominator_lcm(), B.denominator_lcm())
    return GameGraph(tuple(min_const), tuple(min_coef), tuple(max_const), Fraction(0), labels, 2 * m, den)


def apply_h(game: GameGraph, x: Sequence) -> Vector:
    """One exact sweep of the game operator."""
    if len(x) != game.n_min:
        raise DimensionError(f"vector has {len(x)} entries, game has {game.n_min} Min nodes")
    if any(v == POS_INF for v in x):
        raise ValueError("+inf entries are not accepted")
    maxval = []
    for row in game.max_const:
        maxval.append(max((c + x[j] for j, c in enumerate(row) if c is not None and x[j] != NEG_INF), default=NEG_INF))
    out = []
    for i in range(game.n_min):
        best = POS_INF
        for r in game.min_choices(i):
            v = game.min_weight(i, r) + maxval[r]
            if v < best:
                best = v
        out.append(best)
    return tuple(out)


# --------------------------------------------------------------------- cycles


def _karp_fraction(w: np.ndarray, scale: int = 1) -> ExtRational:
    num, den = accel.karp(accel.as_int_array(w))
    if den == 0:
        return NEG_INF
    return Fraction(int(num), int(den) * scale)


def _integer_matrix(rows, scale: int) -> np.ndarray:
    out = np.full((len(rows), len(rows[0])), NEG, dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v is not None and v != NEG_INF:
                out[i, j] = int(v * scale)
    return out


def max_cycle_mean(M: MaxPlusMatrix) -> ExtRational:
    """Maximum cycle mean by Karp's recursion over walk lengths 0..n."""
    if M.rows != M.cols:
        raise DimensionError("max_cycle_mean needs a square matrix")
    scale = M.denominator_lcm()
    return _karp_fraction(_integer_matrix(M.entries, scale), scale)


def _reach_closure(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    reach = adj.copy() | np.eye(n, dtype=bool)
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return reach


def min_reachable_cycle_means(w: np.ndarray) -> list:
    """Per node, the least cycle mean (times 1) among cycles reachable from it.

    ``w`` is an integer matrix with ``NEG`` for missing edges.  Entries of the
    result are Fractions in the same scale, or ``POS_INF`` when no cycle is
    reachable.
    """
    n = w.shape[0]
    adj = w > NEG_CUT
    reach = _reach_closure(adj)
    scc = reach & reach.T
    comp_value = {}
    for v in range(n):
        members = tuple(np.flatnonzero(scc[v]))
        if members in comp_value:
            continue
        sub = w[np.ix_(members, members)]
        live = sub > NEG_CUT
        if not live.any():
            comp_value[members] = POS_INF
            continue
        neg = np.where(live, -sub, NEG)
        mc = _karp_fraction(neg)
        comp_value[members] = POS_INF if mc == NEG_INF else -mc
    comp_of = [tuple(np.flatnonzero(scc[v])) for v in range(n)]
    out = []
    for v in range(n):
        best = POS_INF
        for u in np.flatnonzero(reach[v]):
            val = comp_value[comp_of[u]]
            if val < best:
                best = val
        out.append(best)
    return out


# ------------------------------------------------------------------- policies


@dataclass(frozen=True)
class Policy:
    """Positional Min strategy: the Max node chosen at each Min node."""

    choice: tuple

    def describe(self, game: GameGraph) -> list:
        return [game.max_labels[r] for r in self.choice]


def policy_matrix(game: GameGraph, policy: Policy, lam=None) -> MaxPlusMatrix:
    """Representing max-plus matrix of ``policy`` at ``lam`` (default: the game's)."""
    lam = game.lam if lam is None else Fraction(lam)
    if len(policy.choice) != game.n_min:
        raise ValueError("policy length differs from the number of Min nodes")
    rows = []
    for i, r in enumerate(policy.choice):
        if game.min_const[i][r] is None:
            raise ValueError(f"policy picks a missing edge at Min node {i}")
        w = game.min_weight(i, r, lam)
        rows.append(tuple(w + c if c is not None else NEG_INF for c in game.max_const[r]))
    return MaxPlusMatrix(tuple(rows))


def policy_slopes(game: GameGraph, policy: Policy) -> tuple:
    """Coefficient of lam carried by each row of the representing matrix."""
    return tuple(game.min_coef[i][r] for i, r in enumerate(policy.choice))


def _policy_int_matrix(min_w, max_w, choice) -> np.ndarray:
    n = min_w.shape[0]
    h = np.full((n, n), NEG, dtype=np.int64)
    for i, r in enumerate(choice):
        live = max_w[r] > NEG_CUT
        h[i, live] = min_w[i, r] + max_w[r, live]
    return h


def _strategy_int_matrix(min_w, max_w, sigma) -> np.ndarray:
    n = min_w.shape[0]
    g = np.full((n, n), NEG, dtype=np.int64)
    big = np.full((n, n), ABSENT_MIN, dtype=np.int64)
    for i in range(n):
        for r in np.flatnonzero(min_w[i] < POS_CUT):
            j = sigma[r]
            if j < 0:
                continue
            v = min_w[i, r] + max_w[r, j]
            if v < big[i, j]:
                big[i, j] = v
    live = big < POS_CUT
    g[live] = big[live]
    return g


def policy_upper(game: GameGraph, policy: Policy, lam) -> ExtRational:
    """r of the representing matrix of ``policy`` at ``lam`` (an upper bound on s)."""
    g = game.at(lam)
    min_w, max_w, scale = g.int_weights()
    return _karp_fraction(_policy_int_matrix(min_w, max_w, policy.choice), scale)


def strategy_lower(game: GameGraph, sigma: tuple, node: int, lam) -> ExtRational:
    """Least cycle mean reachable from ``node`` once Max is fixed to ``sigma``."""
    g = game.at(lam)
    min_w, max_w, scale = g.int_weights()
    vals = min_reachable_cycle_means(_strategy_int_matrix(min_w, max_w, sigma))
    v = vals[node]
    return v / scale if is_finite(v) else v


# ---------------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleResult:
    value: ExtRational
    min_policy: Policy
    max_strategy: tuple
    top_node: int
    sweeps: int
    method: str


def _attractor(game: GameGraph):
    """Min nodes from which Min can force a Max node without moves."""
    n_min, n_max = game.n_min, game.n_max
    for i in range(n_min):
        if not game.min_choices(i):
            raise PreconditionError(f"Min node {i} has no moves")
    dead_min = set()
    dead_max = {r for r in range(n_max) if all(c is None for c in game.max_const[r])}
    changed = True
    while changed:
        changed = False
        for i in range(n_min):
            if i not in dead_min and any(r in dead_max for r in game.min_choices(i)):
                dead_min.add(i)
                changed = True
        for r in range(n_max):
            if r not in dead_max:
                targets = [j for j, c in enumerate(game.max_const[r]) if c is not None]
                if all(j in dead_min for j in targets):
                    dead_max.add(r)
                    changed = True
    return dead_min, dead_max


def _restrict(game: GameGraph, dead_min, dead_max):
    keep_min = [i for i in range(game.n_min) if i not in dead_min]
    keep_max = [r for r in range(game.n_max) if r not in dead_max]
    sub = GameGraph(
        tuple(tuple(game.min_const[i][r] for r in keep_max) for i in keep_min),
        tuple(tuple(game.min_coef[i][r] for r in keep_max) for i in keep_min),
        tuple(tuple(game.max_const[r][j] for j in keep_min) for r in keep_max),
        game.lam,
        tuple(game.max_labels[r] for r in keep_max),
        game.kappa,
        game.entry_den,
    )
    return sub, keep_min, keep_max


def _greedy_min(min_w, max_w, x) -> tuple:
    mv = np.where(max_w > NEG_CUT, max_w + x[None, :], NEG).max(axis=1)
    choice = []
    for i in range(min_w.shape[0]):
        live = np.flatnonzero(min_w[i] < POS_CUT)
        vals = min_w[i, live] + mv[live]
        choice.append(int(live[np.argmin(vals)]))
    return tuple(choice)


def _greedy_max(max_w, x) -> tuple:
    sigma = []
    xl = x > NEG_CUT
    for r in range(max_w.shape[0]):
        live = np.flatnonzero((max_w[r] > NEG_CUT) & xl)
        if live.size == 0:
            sigma.append(-1)
            continue
        vals = max_w[r, live] + x[live]
        sigma.append(int(live[np.argmax(vals)]))
    return tuple(sigma)


def _certify(min_w, max_w, choice, sigma):
    upper = _karp_fraction(_policy_int_matrix(min_w, max_w, choice))
    lows = min_reachable_cycle_means(_strategy_int_matrix(min_w, max_w, sigma))
    top = max(range(len(lows)), key=lambda i: (lows[i], -i))
    return upper, lows[top], top


def _energy_bound(min_w, max_w) -> int:
    w = max(int(np.abs(min_w[min_w < POS_CUT]).max(initial=0)), int(np.abs(max_w[max_w > NEG_CUT]).max(initial=0)))
    n_nodes = min_w.shape[0] + min_w.shape[1]
    return (n_nodes - 1) * w + 1


def _shifted_int(min_w, max_w, cand: Fraction):
    b, a = cand.denominator, cand.numerator
    mw = np.where(min_w < POS_CUT, min_w * b - a, ABSENT_MIN)
    xw = np.where(max_w > NEG_CUT, max_w * b, ABSENT_MAX)
    return mw.astype(np.int64), xw.astype(np.int64)


def _energy_certify(min_w, max_w, cand: Fraction):
    """Exact strategies for value ``cand`` (scaled units) via energy iteration, or None."""
    mw, xw = _shifted_int(min_w, max_w, cand)
    bound = _energy_bound(mw, xw)
    n = mw.shape[0]
    cap = n * (bound + 1) + 2
    y, _, done_down = accel.energy_down(mw, xw, bound, cap)
    if not done_down or not (y > NEG_CUT).any():
        return None
    z, _, done_up = accel.energy_up(mw, xw, bound, cap)
    if not done_up or (z >= POS_CUT).any():
        return None
    choice = _greedy_min(mw, xw, z)
    sigma = _greedy_max(xw, y)
    return choice, sigma


def solve(game: GameGraph) -> OracleResult:
    """Exact value r(h) of the game with certifying strategies."""
    dead_min, dead_max = _attractor(game)
    if len(dead_min) == game.n_min:
        choice = tuple(next(r for r in game.min_choices(i) if r in dead_max) for i in range(game.n_min))
        return OracleResult(NEG_INF, Policy(choice), tuple(-1 for _ in range(game.n_max)), 0, 0, "attractor")
    sub, keep_min, keep_max = _restrict(game, dead_min, dead_max)
    min_w, max_w, scale = sub.int_weights()
    n_nodes = sub.n_min + sub.n_max
    w = max(int(np.abs(min_w[min_w < POS_CUT]).max(initial=0)), int(np.abs(max_w[max_w > NEG_CUT]).max(initial=0)))
    cap = 4 * n_nodes * n_nodes * max(w, 1) + 64
    x = np.zeros(sub.n_min, dtype=np.int64)
    t, step = 0, max(8, n_nodes)
    prev_cand = None
    found = None
    while True:
        x = accel.vi_sweeps(min_w, max_w, x, step)
        t += step
        choice = _greedy_min(min_w, max_w, x)
        sigma = _greedy_max(max_w, x)
        upper, lower, top = _certify(min_w, max_w, choice, sigma)
        if upper == lower:
            found = (upper, choice, sigma, top, "greedy")
            break
        cand = Fraction(int(x.max()), t).limit_denominator(sub.n_min)
        if cand == prev_cand:
            cert = _energy_certify(min_w, max_w, cand)
            if cert is not None:
                choice, sigma = cert
                upper, lower, top = _certify(min_w, max_w, choice, sigma)
                if upper == lower == cand:
                    found = (upper, choice, sigma, top, "energy")
                    break
        prev_cand = cand
        if t >= cap:
            raise UnverifiableValue(f"no certificate after {t} sweeps (cap {cap})")
        step = t
    value, choice, sigma, top, method = found
    # lift strategies back to the full game
    full_choice = []
    sub_index = {i: k for k, i in enumerate(keep_min)}
    for i in range(game.n_min):
        if i in sub_index:
            full_choice.append(keep_max[choice[sub_index[i]]])
        else:
            full_choice.append(next(r for r in game.min_choices(i) if r in dead_max))
    full_sigma = [-1] * game.n_max
    for k, r in enumerate(keep_max):
        full_sigma[r] = keep_min[sigma[k]] if sigma[k] >= 0 else -1
    return OracleResult(value / scale, Policy(tuple(full_choice)), tuple(full_sigma), keep_min[top], t, method)


def spectral_radius(game: GameGraph) -> ExtRational:
    return solve(game).value


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness: Vector | None = None
    sweeps: int = 0


def decide_at_least(game: GameGraph, mu) -> Decision:
    """Decide r(h) >= mu by energy iteration with an exact stopping rule.

    The iteration y <- y ∧ (h(y) - mu) from y = 0 either stabilises or drives
    coordinates below the largest finite credit an energy game can need,
    at which point they are -inf for good.  A surviving finite coordinate
    means ``mu + y <= h(y)`` with ``y`` not identically -inf.
    """
    mu = Fraction(to_ext(mu))
    dead_min, dead_max = _attractor(game)
    if len(dead_min) == game.n_min:
        return Decision(False)
    sub, keep_min, _ = _restrict(game, dead_min, dead_max)
    min_w, max_w, scale = sub.int_weights(mu)
    bound = _energy_bound(min_w, max_w)
    cap = sub.n_min * (bound + 1) + 2
    y, sweeps, done = accel.energy_down(min_w, max_w, bound, cap)
    if not done:
        raise UnverifiableValue("energy iteration did not stabilise within its bound")
    if not (y > NEG_CUT).any():
        return Decision(False, None, sweeps)
    witness = [NEG_INF] * game.n_min
    for k, i in enumerate(keep_min):
        if y[k] > NEG_CUT:
            witness[i] = Fraction(int(y[k]), scale)
    return Decision(True, tuple(witness), sweeps)


# ------------------------------------------------------------------ endpoints


@dataclass(frozen=True)
class CycleCertificate:
    cycle: tuple
    mean: Fraction
    slope: int
    length: int


@dataclass(frozen=True)
class EndpointResult:
    certified: bool
    side: str
    policy: Policy | None = None
    cycle: CycleCertificate | None = None
    reason: str = ""


def grid_denominators(game: GameGraph):
    """Denominators of every possible breakpoint of s: 2 * entry_den * q, q <= kappa^2."""
    return [2 * game.entry_den * q for q in range(1, game.kappa**2 + 1)]


def grid_neighbor(game: GameGraph, lam: Fraction, side: str) -> Fraction:
    """Nearest breakpoint candidate strictly left (``Left``) or right of ``lam``."""
    dens = grid_denominators(game)
    if side == "Left":
        return max(Fraction(math.ceil(lam * d) - 1, d) for d in dens)
    return min(Fraction(math.floor(lam * d) + 1, d) for d in dens)


def _tight_graph(H: MaxPlusMatrix):
    """Potential x with H x <= x and the boolean matrix of tight edges."""
    n = H.rows
    x = [Fraction(0)] * n
    for _ in range(n + 1):
        nxt = [max([x[i]] + [H[i, j] + x[j] for j in H.row_support[i]]) for i in range(n)]
        if nxt == x:
            break
        x = nxt
    else:
        raise ArithmeticError("positive cycle in a matrix with nonpositive cycle mean")
    tight = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in H.row_support[i]:
            tight[i, j] = H[i, j] + x[j] == x[i]
    return x, tight


def _shortest_cycle(adj: np.ndarray):
    n = adj.shape[0]
    best = None
    for s in range(n):
        prev = {s: None}
        frontier = [s]
        hit = None
        while frontier and hit is None:
            nxt = []
            for u in frontier:
                for v in np.flatnonzero(adj[u]):
                    v = int(v)
                    if v == s:
                        hit = u
                        break
                    if v not in prev:
                        prev[v] = u
                        nxt.append(v)
                if hit is not None:
                    break
            frontier = nxt
        if hit is None:
            continue
        path = [hit]
        while path[-1] != s:
            path.append(prev[path[-1]])
        cyc = tuple(reversed(path))
        if best is None or len(cyc) < len(best):
            best = cyc
    return best


def verify_endpoint_policy(game: GameGraph, policy: Policy, side: str):
    """Check the endpoint condition for one representing matrix at the game's lam.

    All cycles must have weight <= 0 and every zero-weight cycle must carry
    a strictly positive (``Left``) or strictly negative (``Right``) lam
    coefficient.  Returns a critical cycle certificate or ``None``.
    """
    H = policy_matrix(game, policy)
    mcm = max_cycle_mean(H)
    if mcm == NEG_INF or mcm > 0:
        return None
    if mcm < 0:
        return CycleCertificate((), mcm, 0, 0)
    _, tight = _tight_graph(H)
    slopes = policy_slopes(game, policy)
    sign = -1 if side == "Left" else 1
    rows = tuple(
        tuple(Fraction(sign * slopes[i]) if tight[i, j] else NEG_INF for j in range(H.cols)) for i in range(H.rows)
    )
    slope_mcm = max_cycle_mean(MaxPlusMatrix(rows))
    if slope_mcm != NEG_INF and slope_mcm >= 0:
        return None
    cyc = _shortest_cycle(tight)
    total = sum(slopes[i] for i in cyc)
    return CycleCertificate(cyc, Fraction(0), total, len(cyc))


def endpoint_certificate(game: GameGraph, side: str) -> EndpointResult:
    """Certify that the game's lam is a left or right end of a spectral interval."""
    if side not in ("Left", "Right"):
        raise ValueError("side must be 'Left' or 'Right'")
    if not decide_at_least(game, 0).holds:
        return EndpointResult(False, side, reason="not in the spectrum")
    probe = (grid_neighbor(game, game.lam, side) + game.lam) / 2
    res = solve(game.at(probe))
    if res.value == 0:
        return EndpointResult(False, side, reason=f"s vanishes on the {side.lower()} neighbourhood")
    cyc = verify_endpoint_policy(game, res.min_policy, side)
    if cyc is None:
        raise RuntimeError("optimal neighbouring policy failed the endpoint check")
    return EndpointResult(True, side, res.min_policy, cyc)
