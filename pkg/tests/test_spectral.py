from fractions import Fraction

import pytest
from hypothesis import given, settings

from instances import EX_A, EX_B, EX_INTERVALS, N, RAND2_A, RAND2_B, RAND_A, RAND_B, SLOPE_62_A, SLOPE_62_B, pencils
from maxplus_pencil import games, generators, spectral
from maxplus_pencil.core import NEG_INF, POS_INF, MaxPlusMatrix, matvec, projector_apply, residual_apply
from oracles import brute_force_s

F = Fraction
S = spectral.SpectrumSet.from_intervals


def shifted(M, c):
    return MaxPlusMatrix(tuple(tuple(v if v == N else v + c for v in row) for row in M.entries))


def expected_interval_s(ivs, lam):
    a1, ct = ivs[0][0], ivs[-1][1]
    if lam <= a1:
        return lam - a1
    if lam >= ct:
        return ct - lam
    for k, (a, c) in enumerate(ivs):
        if a <= lam <= c:
            return F(0)
        if lam <= ivs[k + 1][0]:
            return max(c - lam, lam - ivs[k + 1][0])


def interval_family_y(ivs, lam):
    a1, ct = ivs[0][0], ivs[-1][1]
    if lam <= a1:
        v = a1
    elif lam >= ct:
        v = ct
    else:
        for k, (a, c) in enumerate(ivs):
            b = (a + c) / 2
            if a <= lam <= b:
                v = lam + b - a
                break
            if b <= lam <= c:
                v = c
                break
            if c <= lam <= ivs[k + 1][0]:
                v = lam
                break
    return (F(0), v, F(0), v)


# ------------------------------------------------------------------ bounds


def test_butkovic_examples():
    assert spectral.butkovic_bounds(RAND_A, RAND_B) == (-3, 2)
    A = MaxPlusMatrix(((0, 2), (1, -1)))
    lo, hi = spectral.butkovic_bounds(A, A)
    assert lo <= 0 <= hi
    assert spectral.butkovic_bounds(MaxPlusMatrix(((N, 0), (0, N))), MaxPlusMatrix(((0, 0), (0, 0))))[0] == NEG_INF


def test_cw_examples():
    assert spectral.cw_bounds(RAND_A, RAND_B) == (-2, F(1, 2))
    assert spectral.cw_bounds(EX_A, EX_B) == (EX_INTERVALS[0][0], EX_INTERVALS[-1][1])
    A = MaxPlusMatrix(((0, 2), (1, -1)))
    lo, hi = spectral.cw_bounds(A, A)
    assert lo <= 0 <= hi
    with pytest.raises(spectral.NegInfColumn):
        spectral.cw_bounds(MaxPlusMatrix(((N, 0),)), MaxPlusMatrix(((0, 0),)))


def test_per_column_examples():
    cols, union = spectral.per_column_bounds(RAND_A, RAND_B)
    assert union == S([(-3, -2), (3, 3)])
    assert cols[0] == (3, 0)
    I = MaxPlusMatrix.identity(3)
    cols, union = spectral.per_column_bounds(I, I)
    assert all(c == (0, 0) for c in cols)
    with pytest.raises(spectral.NegInfColumn):
        spectral.per_column_bounds(MaxPlusMatrix(((N, 0),)), MaxPlusMatrix(((0, 0),)))


def test_delta_examples():
    assert spectral.delta_and_c(RAND_A, RAND_B)[0] == 8 == triple_scan(RAND_A, RAND_B)[0]
    Z = MaxPlusMatrix(((0, 0), (0, 0)))
    assert spectral.delta_and_c(Z, Z) == (0, 0, 0)


def triple_scan(A, B):
    """Delta and the C bounds by scanning every (i, j, k) literally."""
    rng = [(i, j, k) for i in range(A.rows) for j in range(A.cols) for k in range(A.cols)]
    ab = [A[i, j] - B[i, k] for i, j, k in rng if A[i, j] != N and B[i, k] != N]
    ba = [B[i, j] - A[i, k] for i, j, k in rng if B[i, j] != N and A[i, k] != N]
    lower = [A[i, k] - B[i, j] for i, j, k in rng if A[i, k] != N and B[i, j] != N]
    return max(ab + ba, default=NEG_INF), min(lower, default=POS_INF), max(ab, default=NEG_INF)


@given(pencils(values=[N, -2, -1, 0, 1, 2]))
def test_delta_matches_triple_scan(pair):
    A, B = pair
    got = spectral.delta_and_c(A, B)
    assert got == triple_scan(A, B)
    assert got[0] <= 2 * max(A.max_abs(), B.max_abs())


def test_bounds_report_contains_everything():
    rep = spectral.bounds_report(RAND_A, RAND_B)
    assert rep.kappa == 4 and rep.delta == 8
    assert rep.to_dict()["butkovic"] == ["-3", "2"]


# ------------------------------------------------------------- asymptotics


def test_asymptotics_examples():
    assert spectral.boolean_asymptotics(SLOPE_62_A, SLOPE_62_B) == (F(1, 3), F(1, 3))
    assert spectral.boolean_asymptotics(RAND_A, RAND_B) == (1, 1)
    A = MaxPlusMatrix(((0, N), (1, 2)))
    left, right = spectral.boolean_asymptotics(A, A)
    assert left >= 0 and right >= 0


# ---------------------------------------------------------- reconstruction


def test_reconstruct_random_example():
    f = spectral.reconstruct_spectral_function(RAND_A, RAND_B)
    assert f(-2) == 0 and f(3) == F(-5, 2)
    assert f.zero_set().components == ((F(-2), F(-2)),)
    assert f.pieces[0].slope == 1 and f.pieces[-1].slope == -1
    for lam in (F(-9), F(-5, 2), F(0), F(7, 4), F(11, 4), F(10)):
        assert f(lam) == brute_force_s(RAND_A, RAND_B, lam)


def test_reconstruct_interval_example():
    f = spectral.reconstruct_spectral_function(EX_A, EX_B)
    bps = sorted({a for a, c in EX_INTERVALS} | {c for a, c in EX_INTERVALS} | {F(21, 10), F(27, 10)})
    assert list(f.breakpoints) == bps
    for lo, hi in zip([bps[0] - 1] + bps, bps + [bps[-1] + 1]):
        for lam in (lo, (lo + hi) / 2, hi):
            assert f(lam) == expected_interval_s(EX_INTERVALS, lam)


@pytest.mark.parametrize("m", range(1, 11))
def test_reconstruct_slope_family(m):
    for l in range(0, m // 2 + 1):
        inst = generators.gen_slope_family(m, l)
        f = spectral.reconstruct_spectral_function(inst.A, inst.B)
        c = F(m - 2 * l, m)
        expected = ((F(0), F(0)),) if c == 0 else ((c, F(0)), (-c, F(0)))
        assert tuple((p.slope, p.offset) for p in f.pieces) == expected


def test_reconstruct_identity_and_empty():
    I = MaxPlusMatrix.identity(1)
    f = spectral.reconstruct_spectral_function(I, I)
    assert f(5) == -5 and f(-3) == -3
    with pytest.raises(games.NegInfRow):
        spectral.reconstruct_spectral_function(MaxPlusMatrix(((0,), (0,))), MaxPlusMatrix(((N,), (0,))))


def test_jobs_give_identical_results():
    f1 = spectral.reconstruct_spectral_function(EX_A, EX_B, jobs=1)
    f2 = spectral.reconstruct_spectral_function(EX_A, EX_B, jobs=2)
    assert f1 == f2
    assert spectral.compute_spectrum(RAND_A, RAND_B, jobs=2) == spectral.compute_spectrum(RAND_A, RAND_B, jobs=1)


# ---------------------------------------------------------------- spectrum


def test_spectrum_examples():
    assert spectral.compute_spectrum(RAND_A, RAND_B) == S([(-2, -2)])
    assert spectral.compute_spectrum(EX_A, EX_B).components == tuple(EX_INTERVALS)
    A = MaxPlusMatrix(((0, N), (1, 2)))
    assert 0 in spectral.compute_spectrum(A, A)
    assert str(spectral.compute_spectrum(EX_A, EX_B)) == "[1,2] ∪ [11/5,12/5] ∪ [3,3]"


def test_neg_inf_flag():
    A = MaxPlusMatrix(((N, 0), (N, 1)))
    B = MaxPlusMatrix(((0, 0), (1, 2)))
    assert spectral.compute_spectrum(A, B).contains_neg_inf
    assert not spectral.compute_spectrum(B, A).contains_neg_inf


# ------------------------------------------------------------ eigenvectors


def test_eigenvector_sparse_example():
    assert spectral.eigenvector_at(RAND2_A, RAND2_B, -2) == (-5, 0, -5, -1)
    assert matvec(RAND2_A, (-5, 0, -5, -1)) == (3, 1, 0)


def test_eigenvector_trivial():
    A = MaxPlusMatrix(((0, 2), (1, -1)))
    x = spectral.eigenvector_at(A, A, 0)
    assert x is not None and matvec(A, x) == matvec(A, x)
    assert spectral.eigenvector_at(RAND_A, RAND_B, 3) is None


@pytest.mark.parametrize("lam", [F(0), F(1), F(3, 2), F(2), F(21, 10), F(23, 10), F(27, 10), F(3), F(4)])
def test_interval_family_eigenvectors(lam):
    D = MaxPlusMatrix.vstack(MaxPlusMatrix.identity(2), MaxPlusMatrix.identity(2))
    C = MaxPlusMatrix.vstack(EX_A, shifted(EX_B, lam))
    y = interval_family_y(EX_INTERVALS, lam)
    z = projector_apply(D, projector_apply(C, y))
    s = expected_interval_s(EX_INTERVALS, lam)
    assert z == tuple(v + s for v in y)
    if s == 0:
        x = residual_apply(C, y)
        assert matvec(EX_A, x) == tuple(v + lam for v in matvec(EX_B, x))
        assert spectral.eigenvector_at(EX_A, EX_B, lam) is not None


# --------------------------------------------------------------- invariants


def check_invariants(A, B, f, spec):
    assert all(p.slope ** 2 <= 1 for p in f.pieces)
    assert f.pieces[0].slope >= 0 and f.pieces[-1].slope <= 0
    for p in f.pieces:
        for lam in (p.lo, p.hi):
            if lam not in (NEG_INF, POS_INF):
                assert f(lam) <= 0
    assert spec.components == f.zero_set().components
    rep = spectral.bounds_report(A, B)
    lo, hi = rep.butkovic
    for a, b in spec.components:
        assert lo <= a and b <= hi
        if rep.collatz_wielandt is not None:
            assert rep.collatz_wielandt[0] <= a and b <= rep.collatz_wielandt[1]
            assert lo <= rep.collatz_wielandt[0] and rep.collatz_wielandt[1] <= hi
            assert any(c <= a and b <= d for c, d in rep.per_column_union.components)
    left, right = f.meta["asymptotic_slopes"]
    assert f.pieces[0].slope == left and f.pieces[-1].slope == -right


@settings(max_examples=40)
@given(pencils())
def test_invariants_on_random_pencils(pair):
    A, B = pair
    f = spectral.reconstruct_spectral_function(A, B)
    spec = spectral.compute_spectrum(A, B)
    check_invariants(A, B, f, spec)
    for a, b in spec.components:
        for lam in {a, b} - {NEG_INF, POS_INF}:
            x = spectral.eigenvector_at(A, B, lam)
            assert x is not None


@settings(max_examples=25)
@given(pencils(values=[-2, -1, 0, 1, 2]))
def test_real_case_asymptotic_pieces(pair):
    A, B = pair
    f = spectral.reconstruct_spectral_function(A, B)
    _, c_lo, c_hi = spectral.delta_and_c(A, B)
    r_ab = games.spectral_radius(games.residuation_game(A, B))
    r_ba = games.spectral_radius(games.residuation_game(B, A))
    for lam in (c_lo, c_lo - 3):
        assert f(lam) == lam + r_ab
    for lam in (c_hi, c_hi + 3):
        assert f(lam) == -lam + r_ba


@settings(max_examples=25)
@given(pencils())
def test_reconstruction_matches_brute_force(pair):
    A, B = pair
    f = spectral.reconstruct_spectral_function(A, B)
    pts = list(f.breakpoints) or [F(0)]
    probes = [pts[0] - F(7, 3)] + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + pts + [pts[-1] + F(5, 2)]
    for lam in probes:
        assert f(lam) == brute_force_s(A, B, lam)
