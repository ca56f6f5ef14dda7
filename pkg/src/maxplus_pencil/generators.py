"""Instance families with known spectral functions, and random pencils."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import NEG_INF, MaxPlusMatrix, preprocess_rows, to_ext

RNG_ALGORITHM = "numpy.random.PCG64"


@dataclass(frozen=True)
class Instance:
    A: MaxPlusMatrix
    B: MaxPlusMatrix
    meta: dict = field(default_factory=dict, compare=False)


def gen_slope_family(m: int, l: int) -> Instance:
    """m x m pair over {0, -inf} with s(lam) = -|lam| (m - 2l)/m.

    A has zeros at (1, m), (i, i-1) for 2l < i <= m, (2k, 2k) for k <= l and
    (2k+1, 2k) for k < l; B at (i, i) for 2l < i <= m and (2k-1, 2k-1),
    (2k, 2k-1) for k <= l (1-based).
    """
    if m < 1 or l < 0 or 2 * l > m:
        raise ValueError("need m >= 1 and 0 <= 2l <= m")
    a = [[NEG_INF] * m for _ in range(m)]
    b = [[NEG_INF] * m for _ in range(m)]

    def put(M, i, j):
        M[i - 1][j - 1] = Fraction(0)

    put(a, 1, m)
    for i in range(2 * l + 1, m + 1):
        if i >= 2:
            put(a, i, i - 1)
        put(b, i, i)
    for k in range(1, l + 1):
        put(a, 2 * k, 2 * k)
        if k < l:
            put(a, 2 * k + 1, 2 * k)
        put(b, 2 * k - 1, 2 * k - 1)
        put(b, 2 * k, 2 * k - 1)
    return Instance(MaxPlusMatrix(tuple(map(tuple, a))), MaxPlusMatrix(tuple(map(tuple, b))), {"kind": "slope", "m": m, "l": l})


def gen_interval_spectrum(intervals: Sequence) -> Instance:
    """2 x 3t pair whose spectrum is the union of the given closed intervals.

    Column triple i of A is (a, b, c) over (2a, 2b, 2c) and of B is (0, 0, 0)
    over (a, c, b), with b the midpoint.  For a point interval the triple has
    repeated columns; identical columns are dropped since they change
    neither spans nor s.
    """
    ivs = [(to_ext(a), to_ext(c)) for a, c in intervals]
    if not ivs:
        raise ValueError("need at least one interval")
    for i, (a, c) in enumerate(ivs):
        if not a <= c:
            raise ValueError(f"interval {i} has a > c")
        if i + 1 < len(ivs) and not c < ivs[i + 1][0]:
            raise ValueError("intervals must satisfy c_i < a_(i+1)")
    cols = []
    for a, c in ivs:
        b = (a + c) / 2
        for top, bottom in (((a, 2 * a), (0, a)), ((b, 2 * b), (0, c)), ((c, 2 * c), (0, b))):
            col = (top, bottom)
            if col not in cols:
                cols.append(col)
    A = MaxPlusMatrix((tuple(c[0][0] for c in cols), tuple(c[0][1] for c in cols)))
    B = MaxPlusMatrix((tuple(Fraction(c[1][0]) for c in cols), tuple(c[1][1] for c in cols)))
    return Instance(A, B, {"kind": "intervals", "intervals": ivs})


def gen_random(m: int, n: int, M: int, density: float = 1.0, seed: int = 0, max_tries: int = 10000) -> Instance:
    """Integer entries uniform in [-M, M], each kept with probability ``density``.

    Draws are rejected until the pair has no common -inf column and no -inf
    row on either side.
    """
    if M < 0 or not 0 < density <= 1 or m < 1 or n < 1:
        raise ValueError("need m, n >= 1, M >= 0 and 0 < density <= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    for attempt in range(1, max_tries + 1):
        vals = rng.integers(-M, M + 1, size=(2, m, n))
        keep = rng.random(size=(2, m, n)) < density
        mats = [
            MaxPlusMatrix(tuple(tuple(Fraction(int(vals[s, i, j])) if keep[s, i, j] else NEG_INF for j in range(n)) for i in range(m)))
            for s in range(2)
        ]
        A, B = mats
        if A.neg_inf_rows() or B.neg_inf_rows():
            continue
        if any(not A.col_support[j] and not B.col_support[j] for j in range(n)):
            continue
        red = preprocess_rows(A, B)
        assert red.A == A and red.B == B
        meta = {"kind": "random", "m": m, "n": n, "M": M, "density": density, "seed": seed, "rng": RNG_ALGORITHM, "attempts": attempt}
        return Instance(A, B, meta)
    raise ValueError(f"density {density} too low: no admissible pair in {max_tries} draws")
