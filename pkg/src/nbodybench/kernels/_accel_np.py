"""NumPy fallback for the compiled kernels.

Row-vectorized over the partner axis: body i's acceleration is a reduction
over a j-vector, so per-body results are independent and thread partitioning
cannot change them.  Thread counts above one dispatch contiguous index
slices to a thread pool; NumPy releases the GIL inside array ops, so the
fallback scales too, though its purpose is portability, not speed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

NAME = "numpy"


def _soa_rows(px, py, pz, m, eps2, recip, block, ax, ay, az, lo, hi):
    n = px.shape[0]
    eps2 = px.dtype.type(eps2)
    tiles = [(0, n)] if block <= 0 else [(j0, min(j0 + block, n)) for j0 in range(0, n, block)]
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(lo, hi):
            sx = sy = sz = px.dtype.type(0)
            for j0, j1 in tiles:
                dx = px[j0:j1] - px[i]
                dy = py[j0:j1] - py[i]
                dz = pz[j0:j1] - pz[i]
                d2 = dx * dx + dy * dy + dz * dz + eps2
                mj = m[j0:j1]
                if recip:
                    w = mj * (1.0 / (d2 * np.sqrt(d2)))
                    if j0 <= i < j1:
                        w[i - j0] = 0.0  # exact-zero self term even when eps2 == 0
                    sx = sx + np.add.reduce(dx * w)
                    sy = sy + np.add.reduce(dy * w)
                    sz = sz + np.add.reduce(dz * w)
                else:
                    s = d2**1.5
                    tx, ty, tz = mj * dx / s, mj * dy / s, mj * dz / s
                    if j0 <= i < j1:
                        tx[i - j0] = ty[i - j0] = tz[i - j0] = 0.0
                    sx = sx + np.add.reduce(tx)
                    sy = sy + np.add.reduce(ty)
                    sz = sz + np.add.reduce(tz)
            ax[i], ay[i], az[i] = sx, sy, sz


def _slices(n, workers):
    chunk = (n + workers - 1) // workers
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def accel_soa(px, py, pz, m, g, eps2, recip, block, threads, ax, ay, az):
    n = px.shape[0]
    if threads <= 1 or n < 2 * threads:
        _soa_rows(px, py, pz, m, eps2, recip, block, ax, ay, az, 0, n)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_soa_rows, px, py, pz, m, eps2, recip, block, ax, ay, az, lo, hi)
                for lo, hi in _slices(n, threads)
            ]
            for f in futures:
                f.result()
    gg = px.dtype.type(g)
    ax *= gg
    ay *= gg
    az *= gg


def accel_aos(pos, m, g, eps2, ax, ay, az):
    n = pos.shape[0]
    eps2 = pos.dtype.type(eps2)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(n):
            d = pos - pos[i]
            d2 = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] + d[:, 2] * d[:, 2] + eps2
            s = d2**1.5
            w = (m / s)[:, None] * d
            w[i, :] = 0.0
            ax[i] = np.add.reduce(w[:, 0])
            ay[i] = np.add.reduce(w[:, 1])
            az[i] = np.add.reduce(w[:, 2])
    gg = pos.dtype.type(g)
    ax *= gg
    ay *= gg
    az *= gg


def step_soa(px, py, pz, vx, vy, vz, ax, ay, az, dt, threads):
    # Element-wise updates: identical results for any thread count, so the
    # fallback applies them in one vectorized pass.
    dtt = px.dtype.type(dt)
    half = px.dtype.type(0.5)
    for p, v, a in ((px, vx, ax), (py, vy, ay), (pz, vz, az)):
        dv = a * dtt
        p += (v + half * dv) * dtt
        v += dv


def step_aos(pos, vel, ax, ay, az, dt):
    dtt = pos.dtype.type(dt)
    half = pos.dtype.type(0.5)
    for k, a in enumerate((ax, ay, az)):
        dv = a * dtt
        pos[:, k] += (vel[:, k] + half * dv) * dtt
        vel[:, k] += dv
