"""Reference pencils with known spectra, plus hypothesis strategies for small pencils."""

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from maxplus_pencil.core import NEG_INF, MaxPlusMatrix

N = NEG_INF

RAND_A = MaxPlusMatrix(((-2, 3, -3, -3), (-4, 1, 2, -2), (5, -1, 5, -1)))
RAND_B = MaxPlusMatrix(((-4, 5, -3, 3), (2, 0, -1, 4), (0, 2, -3, -1)))

RAND2_A = MaxPlusMatrix(((-2, 3, N, N), (N, 1, 2, N), (5, N, 5, -1)))
RAND2_B = MaxPlusMatrix(((N, 5, -3, N), (2, N, N, 4), (0, 2, N, N)))

EX_A = MaxPlusMatrix((("1", "1.5", "2", "2.2", "2.3", "2.4", "3"), ("2", "3", "4", "4.4", "4.6", "4.8", "6")))
EX_B = MaxPlusMatrix((("0",) * 7, ("1", "2", "1.5", "2.2", "2.4", "2.3", "3")))
EX_INTERVALS = ((Fraction(1), Fraction(2)), (Fraction(11, 5), Fraction(12, 5)), (Fraction(3), Fraction(3)))

SLOPE_62_A = MaxPlusMatrix(
    tuple(tuple(0 if (i, j) in {(0, 5), (1, 1), (2, 1), (3, 3), (4, 3), (5, 4)} else N for j in range(6)) for i in range(6))
)
SLOPE_62_B = MaxPlusMatrix(
    tuple(tuple(0 if (i, j) in {(0, 0), (1, 0), (2, 2), (3, 2), (4, 4), (5, 5)} else N for j in range(6)) for i in range(6))
)

SMALL_VALUES = [N, -2, -1, 0, 1, 2]


def matrices(m, n, values=SMALL_VALUES):
    row = st.lists(st.sampled_from(values), min_size=n, max_size=n)
    return st.lists(row, min_size=m, max_size=m).map(lambda rows: MaxPlusMatrix(tuple(map(tuple, rows))))


@st.composite
def pencils(draw, max_m=3, max_n=3, values=SMALL_VALUES, clean=True):
    """Pairs without common -inf columns; with ``clean`` also without -inf rows."""
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    A = draw(matrices(m, n, values))
    B = draw(matrices(m, n, values))
    common = any(not A.col_support[j] and not B.col_support[j] for j in range(n))
    st_rows = A.neg_inf_rows() or B.neg_inf_rows()
    assume(not common)
    if clean:
        assume(not st_rows)
    return A, B


rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6))


def finite_vectors(n, lo=-5, hi=5):
    return st.lists(st.builds(Fraction, st.integers(lo * 4, hi * 4), st.integers(1, 4)), min_size=n, max_size=n).map(tuple)


def ext_vectors(n):
    return st.lists(st.one_of(st.just(N), st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4))), min_size=n, max_size=n).map(tuple)
