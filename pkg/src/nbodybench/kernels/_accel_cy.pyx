# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False, nonecheck=False, language_level=3
"""Compiled all-pairs force and update kernels.

Hot loops over body pairs in single or double precision; the partner loop is
split around the self index, so the self term is exactly zero for any
softening value without a per-pair branch.  Thread counts above one map to an
OpenMP parallel-for with a static schedule over contiguous body ranges; each
worker writes only its own slice, so runs are bitwise reproducible for a
fixed thread count.
"""

from cython.parallel cimport prange

from libc.math cimport pow, powf, sqrt, sqrtf

NAME = "cext"

ctypedef fused real:
    float
    double


cdef inline void _row_pow(const real* px, const real* py, const real* pz,
                          const real* m, Py_ssize_t i, Py_ssize_t j0,
                          Py_ssize_t j1, real eps2,
                          real* ox, real* oy, real* oz) noexcept nogil:
    """Accumulate pow-then-divide partial sums for body i over [j0, j1)."""
    cdef Py_ssize_t j, lim
    cdef real dx, dy, dz, d2, s
    cdef real pxi = px[i]
    cdef real pyi = py[i]
    cdef real pzi = pz[i]
    cdef real tx = <real>0
    cdef real ty = <real>0
    cdef real tz = <real>0
    lim = i if i < j1 else j1
    for j in range(j0, lim):
        dx = px[j] - pxi
        dy = py[j] - pyi
        dz = pz[j] - pzi
        d2 = dx * dx + dy * dy + dz * dz + eps2
        if real is float:
            s = powf(d2, <float>1.5)
        else:
            s = pow(d2, 1.5)
        tx = tx + m[j] * dx / s
        ty = ty + m[j] * dy / s
        tz = tz + m[j] * dz / s
    lim = i + 1 if i + 1 > j0 else j0
    for j in range(lim, j1):
        dx = px[j] - pxi
        dy = py[j] - pyi
        dz = pz[j] - pzi
        d2 = dx * dx + dy * dy + dz * dz + eps2
        if real is float:
            s = powf(d2, <float>1.5)
        else:
            s = pow(d2, 1.5)
        tx = tx + m[j] * dx / s
        ty = ty + m[j] * dy / s
        tz = tz + m[j] * dz / s
    ox[0] += tx
    oy[0] += ty
    oz[0] += tz


cdef inline void _row_recip(const real* px, const real* py, const real* pz,
                            const real* m, Py_ssize_t i, Py_ssize_t j0,
                            Py_ssize_t j1, real eps2,
                            real* ox, real* oy, real* oz) noexcept nogil:
    """Accumulate reciprocal-multiply partial sums for body i over [j0, j1)."""
    cdef Py_ssize_t j, lim
    cdef real dx, dy, dz, d2, inv, w
    cdef real pxi = px[i]
    cdef real pyi = py[i]
    cdef real pzi = pz[i]
    cdef real tx = <real>0
    cdef real ty = <real>0
    cdef real tz = <real>0
    lim = i if i < j1 else j1
    for j in range(j0, lim):
        dx = px[j] - pxi
        dy = py[j] - pyi
        dz = pz[j] - pzi
        d2 = dx * dx + dy * dy + dz * dz + eps2
        if real is float:
            inv = <float>1.0 / (d2 * sqrtf(d2))
        else:
            inv = 1.0 / (d2 * sqrt(d2))
        w = m[j] * inv
        tx = tx + dx * w
        ty = ty + dy * w
        tz = tz + dz * w
    lim = i + 1 if i + 1 > j0 else j0
    for j in range(lim, j1):
        dx = px[j] - pxi
        dy = py[j] - pyi
        dz = pz[j] - pzi
        d2 = dx * dx + dy * dy + dz * dz + eps2
        if real is float:
            inv = <float>1.0 / (d2 * sqrtf(d2))
        else:
            inv = 1.0 / (d2 * sqrt(d2))
        w = m[j] * inv
        tx = tx + dx * w
        ty = ty + dy * w
        tz = tz + dz * w
    ox[0] += tx
    oy[0] += ty
    oz[0] += tz


def accel_soa(real[::1] px, real[::1] py, real[::1] pz, real[::1] m,
              double g, double eps2, bint recip, Py_ssize_t block,
              int threads, real[::1] ax, real[::1] ay, real[::1] az):
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t i, j0, j1
    cdef real geps = <real>eps2
    cdef real gg = <real>g
    cdef const real* ppx = &px[0]
    cdef const real* ppy = &py[0]
    cdef const real* ppz = &pz[0]
    cdef const real* pm = &m[0]

    ax[:] = <real>0
    ay[:] = <real>0
    az[:] = <real>0

    if block <= 0:
        if recip:
            for i in prange(n, nogil=True, schedule="static", num_threads=threads):
                _row_recip(ppx, ppy, ppz, pm, i, 0, n, geps, &ax[i], &ay[i], &az[i])
        else:
            for i in prange(n, nogil=True, schedule="static", num_threads=threads):
                _row_pow(ppx, ppy, ppz, pm, i, 0, n, geps, &ax[i], &ay[i], &az[i])
    else:
        # j-tiles stay resident in cache while every i sweeps them; partial
        # sums accumulate per body across tiles, i remains the parallel axis.
        for j0 in range(0, n, block):
            j1 = j0 + block if j0 + block < n else n
            if recip:
                for i in prange(n, nogil=True, schedule="static", num_threads=threads):
                    _row_recip(ppx, ppy, ppz, pm, i, j0, j1, geps, &ax[i], &ay[i], &az[i])
            else:
                for i in prange(n, nogil=True, schedule="static", num_threads=threads):
                    _row_pow(ppx, ppy, ppz, pm, i, j0, j1, geps, &ax[i], &ay[i], &az[i])

    for i in range(n):
        ax[i] *= gg
        ay[i] *= gg
        az[i] *= gg


def accel_aos(real[:, ::1] pos, real[::1] m, double g, double eps2,
              real[::1] ax, real[::1] ay, real[::1] az):
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i, j
    cdef real geps = <real>eps2
    cdef real gg = <real>g
    cdef const real* p = &pos[0, 0]
    cdef real pxi, pyi, pzi, dx, dy, dz, d2, s, tx, ty, tz

    with nogil:
        for i in range(n):
            pxi = p[3 * i]
            pyi = p[3 * i + 1]
            pzi = p[3 * i + 2]
            tx = <real>0
            ty = <real>0
            tz = <real>0
            for j in range(i):
                dx = p[3 * j] - pxi
                dy = p[3 * j + 1] - pyi
                dz = p[3 * j + 2] - pzi
                d2 = dx * dx + dy * dy + dz * dz + geps
                if real is float:
                    s = powf(d2, <float>1.5)
                else:
                    s = pow(d2, 1.5)
                tx = tx + m[j] * dx / s
                ty = ty + m[j] * dy / s
                tz = tz + m[j] * dz / s
            for j in range(i + 1, n):
                dx = p[3 * j] - pxi
                dy = p[3 * j + 1] - pyi
                dz = p[3 * j + 2] - pzi
                d2 = dx * dx + dy * dy + dz * dz + geps
                if real is float:
                    s = powf(d2, <float>1.5)
                else:
                    s = pow(d2, 1.5)
                tx = tx + m[j] * dx / s
                ty = ty + m[j] * dy / s
                tz = tz + m[j] * dz / s
            ax[i] = tx
            ay[i] = ty
            az[i] = tz
        for i in range(n):
            ax[i] *= gg
            ay[i] *= gg
            az[i] *= gg


def step_soa(real[::1] px, real[::1] py, real[::1] pz,
             real[::1] vx, real[::1] vy, real[::1] vz,
             const real[::1] ax, const real[::1] ay, const real[::1] az,
             double dt, int threads):
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t i
    cdef real dtt = <real>dt
    cdef real half = <real>0.5
    cdef real dvx, dvy, dvz

    if threads <= 1:
        with nogil:
            for i in range(n):
                dvx = ax[i] * dtt
                dvy = ay[i] * dtt
                dvz = az[i] * dtt
                px[i] += (vx[i] + half * dvx) * dtt
                py[i] += (vy[i] + half * dvy) * dtt
                pz[i] += (vz[i] + half * dvz) * dtt
                vx[i] += dvx
                vy[i] += dvy
                vz[i] += dvz
    else:
        for i in prange(n, nogil=True, schedule="static", num_threads=threads):
            dvx = ax[i] * dtt
            dvy = ay[i] * dtt
            dvz = az[i] * dtt
            px[i] += (vx[i] + half * dvx) * dtt
            py[i] += (vy[i] + half * dvy) * dtt
            pz[i] += (vz[i] + half * dvz) * dtt
            vx[i] += dvx
            vy[i] += dvy
            vz[i] += dvz


def step_aos(real[:, ::1] pos, real[:, ::1] vel,
             const real[::1] ax, const real[::1] ay, const real[::1] az,
             double dt):
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t i
    cdef real dtt = <real>dt
    cdef real half = <real>0.5
    cdef real dvx, dvy, dvz

    with nogil:
        for i in range(n):
            dvx = ax[i] * dtt
            dvy = ay[i] * dtt
            dvz = az[i] * dtt
            pos[i, 0] += (vel[i, 0] + half * dvx) * dtt
            pos[i, 1] += (vel[i, 1] + half * dvy) * dtt
            pos[i, 2] += (vel[i, 2] + half * dvz) * dtt
            vel[i, 0] += dvx
            vel[i, 1] += dvy
            vel[i, 2] += dvz
