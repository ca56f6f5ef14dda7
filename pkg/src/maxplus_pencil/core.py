"""Exact max-plus scalars, matrices and the operators built on them.

Scalars are ``fractions.Fraction`` for finite values and the float
infinities ``NEG_INF`` / ``POS_INF`` for the two extended points.  Mixing
the two is safe for comparisons, ``max``/``min`` and addition, except for
``(-inf) + (+inf)`` which only arises in residuation and is resolved there
explicitly (the result is ``+inf``).

Vectors are plain tuples of such scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Sequence, Union

NEG_INF = -math.inf
POS_INF = math.inf

ExtRational = Union[Fraction, float]
Vector = tuple


class DimensionError(ValueError):
    pass


def is_finite(v) -> bool:
    return not (isinstance(v, float) and math.isinf(v))


def to_ext(value) -> ExtRational:
    """Convert ints, Fractions, decimal strings, ``"p/q"`` or ``"-inf"`` exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not max-plus scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value):
            return value
        if math.isnan(value):
            raise ValueError("NaN is not a max-plus scalar")
        return Fraction(value)
    if isinstance(value, str):
        tok = value.strip().lower()
        if tok in ("-inf", "-infinity", "-oo", "."):
            return NEG_INF
        if tok in ("inf", "+inf", "infinity", "+infinity", "oo"):
            return POS_INF
        if "/" in tok:
            return Fraction(tok)
        try:
            return Fraction(Decimal(tok))
        except InvalidOperation:
            raise ValueError(f"cannot parse scalar {value!r}") from None
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def format_ext(v: ExtRational) -> str:
    if not is_finite(v):
        return "-inf" if v < 0 else "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_ext(v) for v in values)


def support(x: Sequence) -> frozenset:
    return frozenset(i for i, v in enumerate(x) if v != NEG_INF)


def _check_no_pos_inf(x: Sequence) -> None:
    if any(v == POS_INF for v in x):
        raise ValueError("vector carries +inf; residuation results are not valid max-plus inputs")


@dataclass(frozen=True)
class MaxPlusMatrix:
    """Dense m x n matrix over R ∪ {-inf} with cached row/column supports."""

    entries: tuple
    rows: int = field(init=False)
    cols: int = field(init=False)
    row_support: tuple = field(init=False, repr=False, compare=False)
    col_support: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple(tuple(to_ext(v) for v in row) for row in self.entries)
        if not entries or not entries[0]:
            raise DimensionError("matrices must have at least one row and one column")
        n = len(entries[0])
        if any(len(r) != n for r in entries):
            raise DimensionError("ragged matrix rows")
        if any(v == POS_INF for r in entries for v in r):
            raise ValueError("+inf entries are not allowed in a max-plus matrix")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", n)
        object.__setattr__(
            self, "row_support", tuple(frozenset(j for j, v in enumerate(r) if v != NEG_INF) for r in entries)
        )
        object.__setattr__(
            self,
            "col_support",
            tuple(frozenset(i for i in range(len(entries)) if entries[i][j] != NEG_INF) for j in range(n)),
        )

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        return cls(tuple(tuple(Fraction(0) if i == j else NEG_INF for j in range(n)) for i in range(n)))

    @classmethod
    def vstack(cls, top: "MaxPlusMatrix", bottom: "MaxPlusMatrix") -> "MaxPlusMatrix":
        if top.cols != bottom.cols:
            raise DimensionError("vstack needs equal column counts")
        return cls(top.entries + bottom.entries)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def is_real(self) -> bool:
        return all(is_finite(v) for r in self.entries for v in r)

    def neg_inf_rows(self) -> list:
        return [i for i, s in enumerate(self.row_support) if not s]

    def neg_inf_cols(self) -> list:
        return [j for j, s in enumerate(self.col_support) if not s]

    def shifted(self, c) -> "MaxPlusMatrix":
        c = to_ext(c)
        return MaxPlusMatrix(tuple(tuple(v + c if is_finite(v) else v for v in r) for r in self.entries))

    def booleanized(self) -> "MaxPlusMatrix":
        return MaxPlusMatrix(
            tuple(tuple(Fraction(0) if is_finite(v) else NEG_INF for v in r) for r in self.entries)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MaxPlusMatrix":
        return MaxPlusMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def finite_values(self) -> list:
        return [v for r in self.entries for v in r if is_finite(v)]

    def denominator_lcm(self) -> int:
        d = 1
        for v in self.finite_values():
            d = math.lcm(d, v.denominator)
        return d

    def max_abs(self) -> Fraction:
        vals = self.finite_values()
        return max((abs(v) for v in vals), default=Fraction(0))


def as_matrix(rows) -> MaxPlusMatrix:
    return rows if isinstance(rows, MaxPlusMatrix) else MaxPlusMatrix(tuple(tuple(r) for r in rows))


def matvec(A: MaxPlusMatrix, x: Sequence) -> Vector:
    """(A x)_i = max_j (a_ij + x_j)."""
    if A.cols != len(x):
        raise DimensionError(f"matrix has {A.cols} columns, vector has {len(x)} entries")
    _check_no_pos_inf(x)
    out = []
    for i in range(A.rows):
        row = A.entries[i]
        out.append(max((row[j] + x[j] for j in A.row_support[i] if x[j] != NEG_INF), default=NEG_INF))
    return tuple(out)


def residual_apply(A: MaxPlusMatrix, y: Sequence) -> Vector:
    """(A^# y)_j = min_i (y_i - a_ij), with (-inf) + (+inf) = +inf."""
    if A.rows != len(y):
        raise DimensionError(f"matrix has {A.rows} rows, vector has {len(y)} entries")
    out = []
    for j in range(A.cols):
        # terms with a_ij = -inf contribute +inf and never win the minimum
        out.append(min((y[i] - A.entries[i][j] for i in A.col_support[j]), default=POS_INF))
    return tuple(out)


def projector_apply(A: MaxPlusMatrix, z: Sequence) -> Vector:
    """Greatest element of span(A) below z, i.e. A (A^# z)."""
    w = residual_apply(A, z)
    # columns that are identically -inf give +inf coefficients but add nothing
    w = tuple(NEG_INF if v == POS_INF else v for v in w)
    return matvec(A, w)


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Vector | None = None
    uncovered: frozenset = frozenset()


def membership_check(A: MaxPlusMatrix, z: Sequence) -> Membership:
    """Decide z ∈ span(A) through the covering condition on argmin sets."""
    if A.rows != len(z):
        raise DimensionError(f"matrix has {A.rows} rows, vector has {len(z)} entries")
    _check_no_pos_inf(z)
    supp = support(z)
    if not supp:
        raise ValueError("membership of the zero vector -inf is trivial and not supported")
    x = residual_apply(A, z)
    covered = set()
    for j in range(A.cols):
        if x[j] == POS_INF or x[j] == NEG_INF:
            continue
        for i in A.col_support[j]:
            if z[i] - A.entries[i][j] == x[j]:
                covered.add(i)
    uncovered = frozenset(supp - covered)
    if uncovered:
        return Membership(False, None, uncovered)
    witness = tuple(NEG_INF if v == POS_INF else v for v in x)
    return Membership(True, witness, frozenset())


def cheb_distance(u: Sequence, v: Sequence) -> ExtRational:
    if len(u) != len(v):
        raise DimensionError("vectors of different length")
    if support(u) != support(v):
        return POS_INF
    return max((abs(u[i] - v[i]) for i in support(v)), default=Fraction(0))


def hilbert_distance(u: Sequence, v: Sequence) -> ExtRational:
    if len(u) != len(v):
        raise DimensionError("vectors of different length")
    if support(u) != support(v):
        return POS_INF
    diffs = [u[i] - v[i] for i in support(v)]
    if not diffs:
        return Fraction(0)
    return max(diffs) - min(diffs)


@dataclass(frozen=True)
class Reduction:
    """Outcome of removing -inf rows from a pencil."""

    A: MaxPlusMatrix | None
    B: MaxPlusMatrix | None
    kept_cols: tuple
    kept_rows: tuple
    forced_neg_inf: frozenset
    status: str  # "reduced" or "unsolvable"

    @property
    def empty(self) -> bool:
        return not self.kept_rows


def preprocess_rows(A: MaxPlusMatrix, B: MaxPlusMatrix) -> Reduction:
    """Eliminate rows where one side is identically -inf.

    Variables hit by a finite entry of the other side are forced to -inf and
    their columns removed, which may create new -inf rows; repeat.  If every
    variable is forced the pencil has no nontrivial eigenvector.  When rows
    run out first, the surviving variables are unconstrained.
    """
    if A.shape != B.shape:
        raise DimensionError("A and B must have the same shape")
    rows = list(range(A.rows))
    cols = list(range(A.cols))
    forced: set = set()
    changed = True
    while changed and rows and cols:
        changed = False
        for i in list(rows):
            a_live = [j for j in cols if A.entries[i][j] != NEG_INF]
            b_live = [j for j in cols if B.entries[i][j] != NEG_INF]
            if a_live and b_live:
                continue
            hit = a_live or b_live
            forced.update(hit)
            cols = [j for j in cols if j not in hit]
            rows.remove(i)
            changed = True
            break
    if not cols:
        return Reduction(None, None, (), tuple(rows), frozenset(forced), "unsolvable")
    if not rows:
        return Reduction(None, None, tuple(cols), (), frozenset(forced), "reduced")
    return Reduction(
        A.submatrix(rows, cols), B.submatrix(rows, cols), tuple(cols), tuple(rows), frozenset(forced), "reduced"
    )
