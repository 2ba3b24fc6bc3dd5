# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for iterating the circumcenter map.

Twin of circumseq._kernels_py.iterate_circumcenters; see that module for the
full contract.  The linear solve is Gaussian elimination with partial
pivoting on the (small) d x d window system, with a pivot floor of rel_eps
times the largest matrix entry standing in for the fallback's LAPACK
singularity exception.
"""

from libc.math cimport fabs, sqrt

import numpy as np

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_OVERFLOW = 2
STATUS_DEGENERATE = 3


def iterate_circumcenters(seed, n_steps, double rel_eps,
                          double seg_floor, double coord_ceiling, ref):
    seed_arr = np.ascontiguousarray(seed, dtype=np.float64)
    ref_arr = np.ascontiguousarray(ref, dtype=np.float64)
    cdef double[:, ::1] s = seed_arr
    cdef Py_ssize_t m = s.shape[0]
    cdef Py_ssize_t d = s.shape[1]
    cdef Py_ssize_t total = m + <Py_ssize_t> n_steps
    out_arr = np.empty((total, d), dtype=np.float64)
    work_arr = np.empty((d, d + 1), dtype=np.float64)
    cen_arr = np.empty(d, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] w = work_arr
    cdef double[::1] cen = cen_arr
    cdef double[::1] refv = ref_arr
    cdef Py_ssize_t count = m
    cdef Py_ssize_t base, i, j, k, piv
    cdef double acc, q, amax, tmp, factor, r0, dmin, dmax, dist

    for i in range(m):
        for j in range(d):
            out[i, j] = s[i, j]

    while count < total:
        base = count - m
        # window system relative to the first window point: 2 q_i . y = |q_i|^2
        amax = 0.0
        for i in range(d):
            acc = 0.0
            for j in range(d):
                q = out[base + 1 + i, j] - out[base, j]
                w[i, j] = 2.0 * q
                acc += q * q
                if fabs(w[i, j]) > amax:
                    amax = fabs(w[i, j])
            w[i, d] = acc
        if amax == 0.0:
            return out_arr, STATUS_DEGENERATE, count
        for k in range(d):
            piv = k
            for i in range(k + 1, d):
                if fabs(w[i, k]) > fabs(w[piv, k]):
                    piv = i
            if fabs(w[piv, k]) <= rel_eps * amax:
                return out_arr, STATUS_DEGENERATE, count
            if piv != k:
                for j in range(k, d + 1):
                    tmp = w[k, j]
                    w[k, j] = w[piv, j]
                    w[piv, j] = tmp
            for i in range(k + 1, d):
                factor = w[i, k] / w[k, k]
                w[i, k] = 0.0
                for j in range(k + 1, d + 1):
                    w[i, j] -= factor * w[k, j]
        for k in range(d - 1, -1, -1):
            acc = w[k, d]
            for j in range(k + 1, d):
                acc -= w[k, j] * w[j, d]
            w[k, d] = acc / w[k, k]
        r0 = 0.0
        for j in range(d):
            q = w[j, d]
            cen[j] = out[base, j] + q
            r0 += q * q
        r0 = sqrt(r0)
        if r0 <= 0.0:
            return out_arr, STATUS_DEGENERATE, count
        dmin = dmax = r0
        for i in range(1, m):
            acc = 0.0
            for j in range(d):
                q = cen[j] - out[base + i, j]
                acc += q * q
            dist = sqrt(acc)
            if dist < dmin:
                dmin = dist
            if dist > dmax:
                dmax = dist
        if dmax - dmin > rel_eps * r0:
            return out_arr, STATUS_DEGENERATE, count
        acc = 0.0
        for j in range(d):
            q = cen[j] - out[count - 1, j]
            acc += q * q
        if sqrt(acc) < seg_floor:
            return out_arr, STATUS_UNDERFLOW, count
        acc = 0.0
        for j in range(d):
            q = fabs(cen[j] - refv[j])
            if q > acc:
                acc = q
        if acc > coord_ceiling:
            return out_arr, STATUS_OVERFLOW, count
        for j in range(d):
            out[count, j] = cen[j]
        count += 1
    return out_arr, STATUS_OK, count
