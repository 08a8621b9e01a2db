"""Compiled inner loops.

Every kernel works on a half-open slice of its outermost index and releases
the GIL, so callers can fan slices out over threads and merge the per-slice
results in slice order.  Integer kernels are exact; float kernels use
Neumaier compensation inside a slice.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numba
import numpy as np

_jit = numba.njit(nogil=True, cache=True)


def map_slices(fn, n: int, threads: int = 1, chunk: int = 1):
    """Evaluate ``fn(lo, hi)`` over consecutive slices of range(n); results in slice order."""
    bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    if threads <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


@_jit
def exp_sum_rows(a_lo, a_hi, F_live, G_live, chars_re, chars_im, p):
    """T[a, b] = sum_y e_p(a F(y) + b G(y)) over live y, rows a_lo <= a < a_hi."""
    rows = a_hi - a_lo
    out = np.zeros((rows, p), dtype=np.complex128)
    n = F_live.shape[0]
    for r in range(rows):
        a = a_lo + r
        for b in range(p):
            s_re = 0.0
            c_re = 0.0
            s_im = 0.0
            c_im = 0.0
            for k in range(n):
                idx = (a * F_live[k] + b * G_live[k]) % p
                x = chars_re[idx]
                t = s_re + x
                if abs(s_re) >= abs(x):
                    c_re += (s_re - t) + x
                else:
                    c_re += (x - t) + s_re
                s_re = t
                x = chars_im[idx]
                t = s_im + x
                if abs(s_im) >= abs(x):
                    c_im += (s_im - t) + x
                else:
                    c_im += (x - t) + s_im
                s_im = t
            out[r, b] = complex(s_re + c_re, s_im + c_im)
    return out


@_jit
def charsum_partials(a_lo, a_hi, T, p):
    """For each a in the slice: sum over (b, b') of |U(a, b, b')|^2, where

    U(a, b, b') = sum_n W_a[n, b] conj(W_a[n, b']),  W_a[n, b] = T(n-b, b) conj(T(n-b, b-a)).

    U(a, b', b) = conj(U(a, b, b')), so only b <= b' is visited.
    """
    rows = a_hi - a_lo
    out = np.zeros(rows, dtype=np.float64)
    W = np.empty((p, p), dtype=np.complex128)
    for r in range(rows):
        a = a_lo + r
        for n in range(p):
            for b in range(p):
                i = (n - b) % p
                W[n, b] = T[i, b] * np.conj(T[i, (b - a) % p])
        acc = 0.0
        comp = 0.0
        for b in range(p):
            for bp in range(b, p):
                u_re = 0.0
                cu_re = 0.0
                u_im = 0.0
                cu_im = 0.0
                for n in range(p):
                    w = W[n, b] * np.conj(W[n, bp])
                    x = w.real
                    t = u_re + x
                    if abs(u_re) >= abs(x):
                        cu_re += (u_re - t) + x
                    else:
                        cu_re += (x - t) + u_re
                    u_re = t
                    x = w.imag
                    t = u_im + x
                    if abs(u_im) >= abs(x):
                        cu_im += (u_im - t) + x
                    else:
                        cu_im += (x - t) + u_im
                    u_im = t
                u_re += cu_re
                u_im += cu_im
                x = u_re * u_re + u_im * u_im
                if bp != b:
                    x *= 2.0
                t = acc + x
                if abs(acc) >= abs(x):
                    comp += (acc - t) + x
                else:
                    comp += (x - t) + acc
                acc = t
        out[r] = acc + comp
    return out


@_jit
def brute_count(i_lo, i_hi, ys, Fv, Gv, p):
    """Full scan of live 8-tuples; y1 ranges over ys[i_lo:i_hi]."""
    n = ys.shape[0]
    total = 0
    for i1 in range(i_lo, i_hi):
        y1 = ys[i1]
        for i2 in range(n):
            y2 = ys[i2]
            for i3 in range(n):
                y3 = ys[i3]
                for i4 in range(n):
                    y4 = ys[i4]
                    for i5 in range(n):
                        y5 = ys[i5]
                        for i6 in range(n):
                            y6 = ys[i6]
                            for i7 in range(n):
                                y7 = ys[i7]
                                for i8 in range(n):
                                    y8 = ys[i8]
                                    e1 = (Fv[y1] - Gv[y1] - Fv[y2] + Gv[y2] - Fv[y3] + Gv[y3] + Fv[y4] - Gv[y4]) % p
                                    e2 = (Fv[y5] - Gv[y5] - Fv[y6] + Gv[y6] - Fv[y7] + Gv[y7] + Fv[y8] - Gv[y8]) % p
                                    e3 = (Fv[y1] - Fv[y3] - Fv[y5] + Fv[y7]) % p
                                    e4 = (Fv[y2] - Fv[y4] - Fv[y6] + Fv[y8]) % p
                                    e5 = (Gv[y3] - Gv[y4] - Gv[y7] + Gv[y8]) % p
                                    if e1 == 0 and e2 == 0 and e3 == 0 and e4 == 0 and e5 == 0:
                                        total += 1
    return total


# stratum slots in the counts vector returned by staged_count
Y_GEN, Y_LOW, Z_GOOD, Z_BAD, Z_LOW = 0, 1, 2, 3, 4


@_jit
def _classify(y1, y2, y3, y4, y5, strat, p):
    # strat rows: 0 F', 1 G', 2 derivative-defined flag, 3 curvature zero-or-undefined flag,
    # 4 E-tilde summand value, 5 summand-defined flag
    for y in (y1, y2, y3, y4, y5):
        if strat[2, y] == 0:
            return Y_LOW
    f1, f2, f3, f4, f5 = strat[0, y1], strat[0, y2], strat[0, y3], strat[0, y4], strat[0, y5]
    g1, g2, g3, g4, g5 = strat[1, y1], strat[1, y2], strat[1, y3], strat[1, y4], strat[1, y5]
    bracket = (g1 * f2 % p * f3 % p * g4 - f1 * g2 % p * g3 % p * f4) % p
    d = (g5 - f5) % p * bracket % p
    if d != 0:
        return Y_GEN
    if f1 * f2 % p * f3 % p * f4 % p * ((g5 - f5) % p) % p == 0:
        return Y_LOW
    if strat[3, y1] != 0 or strat[3, y4] != 0:
        return Z_LOW
    if strat[5, y1] == 0 or strat[5, y4] == 0:
        return Z_LOW
    if strat[4, y1] == strat[4, y4]:
        return Z_BAD
    return Z_GOOD


@_jit
def staged_count(i_lo, i_hi, ys, Fv, Gv, Fptr, Fidx, Gptr, Gidx, p, classify, strat):
    """Enumerate (y1..y5), solve y7, y8, y6 by preimage lookup, accept on the two
    remaining equations.  Returns [total, y_gen, y_low, z_good, z_bad, z_low].

    The y1..y4 equation is tested before the y5 loop since it ignores y5.
    """
    out = np.zeros(6, dtype=np.int64)
    n = ys.shape[0]
    for i1 in range(i_lo, i_hi):
        y1 = ys[i1]
        h1 = Fv[y1] - Gv[y1]
        for i2 in range(n):
            y2 = ys[i2]
            h2 = Fv[y2] - Gv[y2]
            for i3 in range(n):
                y3 = ys[i3]
                h3 = Fv[y3] - Gv[y3]
                for i4 in range(n):
                    y4 = ys[i4]
                    if (h1 - h2 - h3 + Fv[y4] - Gv[y4]) % p != 0:
                        continue
                    for i5 in range(n):
                        y5 = ys[i5]
                        h5 = Fv[y5] - Gv[y5]
                        found = 0
                        v7 = (Fv[y3] + Fv[y5] - Fv[y1]) % p
                        for k7 in range(Fptr[v7], Fptr[v7 + 1]):
                            y7 = Fidx[k7]
                            h7 = Fv[y7] - Gv[y7]
                            v8 = (Gv[y4] + Gv[y7] - Gv[y3]) % p
                            for k8 in range(Gptr[v8], Gptr[v8 + 1]):
                                y8 = Gidx[k8]
                                h8 = Fv[y8] - Gv[y8]
                                v6 = (Fv[y2] - Fv[y4] + Fv[y8]) % p
                                for k6 in range(Fptr[v6], Fptr[v6 + 1]):
                                    y6 = Fidx[k6]
                                    if (h5 - (Fv[y6] - Gv[y6]) - h7 + h8) % p == 0:
                                        found += 1
                        if found:
                            out[0] += found
                            if classify:
                                out[1 + _classify(y1, y2, y3, y4, y5, strat, p)] += found
    return out
