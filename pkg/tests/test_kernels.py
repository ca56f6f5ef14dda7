from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxplus_pencil import _kernels as K
from maxplus_pencil import accel
from maxplus_pencil.core import NEG_INF, MaxPlusMatrix
from oracles import cycle_enum_mcm

BACKENDS = ["numba", "numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    old = accel.backend()
    accel.set_backend(request.param)
    yield request.param
    accel.set_backend(old)


def int_matrices(n_max=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, n_max))
        cells = draw(st.lists(st.one_of(st.none(), st.integers(-9, 9)), min_size=n * n, max_size=n * n))
        return np.array([K.NEG if c is None else c for c in cells], dtype=np.int64).reshape(n, n)

    return build()


def games_arrays():
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 4))
        r = draw(st.integers(1, 4))
        mw = np.array(draw(st.lists(st.integers(-6, 6), min_size=n * r, max_size=n * r)), dtype=np.int64).reshape(n, r)
        xw = np.array(draw(st.lists(st.integers(-6, 6), min_size=n * r, max_size=n * r)), dtype=np.int64).reshape(r, n)
        # drop some edges but keep every node alive
        drop_min = np.array(draw(st.lists(st.booleans(), min_size=n * r, max_size=n * r))).reshape(n, r)
        drop_min[:, 0] = False
        drop_max = np.array(draw(st.lists(st.booleans(), min_size=n * r, max_size=n * r))).reshape(r, n)
        drop_max[:, 0] = False
        mw[drop_min] = K.ABSENT_MIN
        xw[drop_max] = K.ABSENT_MAX
        return mw, xw

    return build()


def test_backend_switch_rejects_unknown():
    with pytest.raises(ValueError):
        accel.set_backend("fortran")


@given(int_matrices())
def test_karp_matches_cycle_enumeration(w):
    for name in BACKENDS:
        accel.set_backend(name)
        num, den = accel.karp(w)
        got = NEG_INF if den == 0 else Fraction(int(num), int(den))
        M = MaxPlusMatrix(tuple(tuple(NEG_INF if v <= K.NEG_CUT else int(v) for v in row) for row in w))
        assert got == cycle_enum_mcm(M)
    accel.set_backend("numba")


@given(games_arrays(), st.integers(1, 12))
def test_value_iteration_backends_agree(arrays, steps):
    mw, xw = arrays
    x0 = np.zeros(mw.shape[0], dtype=np.int64)
    assert np.array_equal(K.vi_sweeps_numba(mw, xw, x0, steps), K.vi_sweeps_numpy(mw, xw, x0, steps))


@given(games_arrays())
def test_energy_backends_agree(arrays):
    mw, xw = arrays
    bound = 60
    a = K.energy_down_numba(mw, xw, bound, 1000)
    b = K.energy_down_numpy(mw, xw, bound, 1000)
    assert np.array_equal(a[0], b[0]) and a[2] == b[2]
    a = K.energy_up_numba(mw, xw, bound, 1000)
    b = K.energy_up_numpy(mw, xw, bound, 1000)
    assert np.array_equal(a[0], b[0]) and a[2] == b[2]


def test_sweep_matches_definition():
    # one Min node, two Max nodes: min(1 + max(2 + x), -1 + max(0 + x))
    mw = np.array([[1, -1]], dtype=np.int64)
    xw = np.array([[2], [0]], dtype=np.int64)
    x = np.array([5], dtype=np.int64)
    assert K.vi_sweeps_numpy(mw, xw, x, 1)[0] == 4
    assert K.vi_sweeps_numba(mw, xw, x, 1)[0] == 4


def test_oracle_is_backend_independent(backend):
    from instances import RAND_A, RAND_B
    from maxplus_pencil import games

    g = games.build_game(RAND_A, RAND_B, Fraction(-7, 3))
    assert games.solve(g).value == games.spectral_radius(g)
    assert games.spectral_radius(games.build_game(RAND_A, RAND_B, -2)) == 0
