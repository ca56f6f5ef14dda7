"""Integer kernels for game iteration and maximum cycle means.

Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorised numpy version.  :mod:`maxplus_pencil.accel` picks one set.

Conventions shared by all kernels:

* ``min_w[i, r]`` is the weight of the Min edge from Min node ``i`` to Max
  node ``r``; ``ABSENT_MIN`` marks a missing edge.
* ``max_w[r, j]`` is the weight of the Max edge from Max node ``r`` to Min
  node ``j``; ``ABSENT_MAX`` marks a missing edge.
* In value vectors ``NEG`` stands for -inf and ``POS`` for +inf.
"""

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


NEG = -(1 << 62)
POS = 1 << 62
ABSENT_MAX = NEG
ABSENT_MIN = POS
# anything beyond these is treated as infinite
NEG_CUT = NEG // 2
POS_CUT = POS // 2


# ---------------------------------------------------------------- numba loops


@njit(cache=True)
def _sweep_loop(min_w, max_w, x, out, mv):
    n_min, n_max = min_w.shape
    for r in range(n_max):
        best = NEG
        for j in range(n_min):
            w = max_w[r, j]
            if w > NEG_CUT and x[j] > NEG_CUT:
                if x[j] >= POS_CUT:
                    best = POS
                    break
                v = w + x[j]
                if v > best:
                    best = v
        mv[r] = best
    for i in range(n_min):
        best = POS
        for r in range(n_max):
            w = min_w[i, r]
            if w < POS_CUT:
                if mv[r] <= NEG_CUT:
                    best = NEG
                    break
                if mv[r] >= POS_CUT:
                    continue
                v = w + mv[r]
                if v < best:
                    best = v
        out[i] = best


@njit(cache=True)
def vi_sweeps_numba(min_w, max_w, x0, steps):
    x = x0.copy()
    out = np.empty_like(x)
    mv = np.empty(max_w.shape[0], dtype=np.int64)
    for _ in range(steps):
        _sweep_loop(min_w, max_w, x, out, mv)
        x, out = out, x
    return x


@njit(cache=True)
def energy_down_numba(min_w, max_w, bound, max_sweeps):
    n_min = min_w.shape[0]
    y = np.zeros(n_min, dtype=np.int64)
    hy = np.empty_like(y)
    mv = np.empty(max_w.shape[0], dtype=np.int64)
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        _sweep_loop(min_w, max_w, y, hy, mv)
        changed = False
        for i in range(n_min):
            if y[i] <= NEG_CUT:
                continue
            v = hy[i]
            if v < y[i]:
                changed = True
                y[i] = NEG if v < -bound else v
        if not changed:
            return y, sweeps, True
    return y, sweeps, False


@njit(cache=True)
def energy_up_numba(min_w, max_w, bound, max_sweeps):
    n_min = min_w.shape[0]
    z = np.zeros(n_min, dtype=np.int64)
    hz = np.empty_like(z)
    mv = np.empty(max_w.shape[0], dtype=np.int64)
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        _sweep_loop(min_w, max_w, z, hz, mv)
        changed = False
        for i in range(n_min):
            if z[i] >= POS_CUT:
                continue
            v = hz[i]
            if v > z[i]:
                changed = True
                z[i] = POS if v > bound else v
        if not changed:
            return z, sweeps, True
    return z, sweeps, False


@njit(cache=True)
def karp_numba(w):
    n = w.shape[0]
    d = np.full((n + 1, n), NEG, dtype=np.int64)
    for v in range(n):
        d[0, v] = 0
    for k in range(1, n + 1):
        for v in range(n):
            best = NEG
            for u in range(n):
                if d[k - 1, u] > NEG_CUT and w[u, v] > NEG_CUT:
                    c = d[k - 1, u] + w[u, v]
                    if c > best:
                        best = c
            d[k, v] = best
    best_num = 0
    best_den = 0
    for v in range(n):
        if d[n, v] <= NEG_CUT:
            continue
        # min over k of (d[n,v] - d[k,v]) / (n - k)
        lo_num = 0
        lo_den = 0
        for k in range(n):
            if d[k, v] <= NEG_CUT:
                continue
            num = d[n, v] - d[k, v]
            den = n - k
            if lo_den == 0 or num * lo_den < lo_num * den:
                lo_num = num
                lo_den = den
        if best_den == 0 or lo_num * best_den > best_num * lo_den:
            best_num = lo_num
            best_den = lo_den
    return best_num, best_den


# --------------------------------------------------------------- numpy paths


def _sweep_np(min_w, max_w, x):
    live_max = max_w > NEG_CUT
    xin = x[None, :]
    x_live = (x > NEG_CUT)[None, :]
    use = live_max & x_live
    cand = np.where(use, max_w + np.where(use, xin, 0), NEG)
    mv = cand.max(axis=1)
    pos_hit = (use & (xin >= POS_CUT)).any(axis=1)
    mv = np.where(pos_hit, POS, mv)

    live_min = min_w < POS_CUT
    mvb = mv[None, :]
    neg_hit = (live_min & (mvb <= NEG_CUT)).any(axis=1)
    use = live_min & (mvb > NEG_CUT) & (mvb < POS_CUT)
    cand = np.where(use, min_w + np.where(use, mvb, 0), POS)
    out = cand.min(axis=1)
    return np.where(neg_hit, NEG, out)


def vi_sweeps_numpy(min_w, max_w, x0, steps):
    x = x0.copy()
    for _ in range(steps):
        x = _sweep_np(min_w, max_w, x)
    return x


def energy_down_numpy(min_w, max_w, bound, max_sweeps):
    y = np.zeros(min_w.shape[0], dtype=np.int64)
    for sweeps in range(1, max_sweeps + 1):
        hy = _sweep_np(min_w, max_w, y)
        live = y > NEG_CUT
        dec = live & (hy < y)
        if not dec.any():
            return y, sweeps, True
        y = np.where(dec, np.where(hy < -bound, NEG, hy), y)
    return y, max_sweeps, False


def energy_up_numpy(min_w, max_w, bound, max_sweeps):
    z = np.zeros(min_w.shape[0], dtype=np.int64)
    for sweeps in range(1, max_sweeps + 1):
        hz = _sweep_np(min_w, max_w, z)
        live = z < POS_CUT
        inc = live & (hz > z)
        if not inc.any():
            return z, sweeps, True
        z = np.where(inc, np.where(hz > bound, POS, hz), z)
    return z, max_sweeps, False


def karp_numpy(w):
    n = w.shape[0]
    d = np.full((n + 1, n), NEG, dtype=np.int64)
    d[0] = 0
    live_w = w > NEG_CUT
    for k in range(1, n + 1):
        prev = d[k - 1][:, None]
        use = live_w & (prev > NEG_CUT)
        cand = np.where(use, w + np.where(use, prev, 0), NEG)
        d[k] = cand.max(axis=0)
    final = d[n]
    ok_v = final > NEG_CUT
    if not ok_v.any():
        return 0, 0
    ks = np.arange(n)
    dens = (n - ks)[:, None]
    nums = final[None, :] - d[:n]
    valid = (d[:n] > NEG_CUT) & ok_v[None, :]
    best_num, best_den = 0, 0
    # exact comparison of small fractions; n is tiny so the loop is cheap
    for v in np.flatnonzero(ok_v):
        col = np.flatnonzero(valid[:, v])
        lo_num, lo_den = int(nums[col[0], v]), int(dens[col[0], 0])
        for k in col[1:]:
            num, den = int(nums[k, v]), int(dens[k, 0])
            if num * lo_den < lo_num * den:
                lo_num, lo_den = num, den
        if best_den == 0 or lo_num * best_den > best_num * lo_den:
            best_num, best_den = lo_num, lo_den
    return best_num, best_den
