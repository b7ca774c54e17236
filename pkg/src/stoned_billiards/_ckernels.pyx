# cython: language_level=3
"""Compiled Monte Carlo kernels; see _pykernels.py for the reference versions."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def chain_walk(const long long[:] offsets, const long long[:] targets, const double[:] cum,
               const double[:] u, long long s0):
    cdef Py_ssize_t steps = u.shape[0]
    path_arr = np.empty(steps + 1, dtype=np.int64)
    cdef long long[:] path = path_arr
    cdef long long s = s0
    cdef long long j, end
    cdef Py_ssize_t k
    cdef double x
    path[0] = s
    for k in range(steps):
        x = u[k]
        j = offsets[s]
        end = offsets[s + 1] - 1
        while j < end and x >= cum[j]:
            j += 1
        s = targets[j]
        path[k + 1] = s
    return path_arr


cdef inline long long _pmod(long long a, long long n) nogil:
    cdef long long r = a % n
    return r + n if r < 0 else r


cdef long long _inv_at(long long[:] w, long long n, long long v) nogil:
    cdef long long k, d
    for k in range(n):
        d = v - w[k]
        if _pmod(d, n) == 0:
            return k + 1 + d
    return 0


def billiard_walk(window, const long long[:] letters, long long phase0, const double[:] u,
                  double p, bint grassmannian):
    cdef long long n = len(window)
    cdef long long N = letters.shape[0]
    cdef Py_ssize_t steps = u.shape[0]
    out_arr = np.empty((steps + 1, n), dtype=np.int64)
    crossed_arr = np.zeros(steps, dtype=np.uint8)
    cdef long long[:, :] out = out_arr
    cdef unsigned char[:] crossed = crossed_arr
    cdef long long[:] w = np.asarray(window, dtype=np.int64).copy()
    cdef long long[:] nw = np.empty(n, dtype=np.int64)
    cdef long long i, a, k, r, m
    cdef bint ok
    for k in range(n):
        out[0, k] = w[k]
    for m in range(steps):
        i = letters[(phase0 + m) % N]
        a = i if i != 0 else n
        if _inv_at(w, n, a) < _inv_at(w, n, a + 1):
            for k in range(n):
                nw[k] = w[k]
                r = _pmod(nw[k], n)
                if r == i:
                    nw[k] += 1
                elif r == (i + 1) % n:
                    nw[k] -= 1
            ok = True
            if grassmannian:
                for k in range(n - 1):
                    if nw[k] > nw[k + 1]:
                        ok = False
                        break
            if ok and u[m] < p:
                for k in range(n):
                    w[k] = nw[k]
                crossed[m] = 1
        for k in range(n):
            out[m + 1, k] = w[k]
    return out_arr, crossed_arr


def scan_sweeps(unsigned char[:] occ, long long nscans, double p, double pt,
                const double[:] u, long long upos):
    cdef long long W = occ.shape[0]
    cdef long long nu = u.shape[0]
    cdef long long R = -1
    cdef long long k, v, i, sc
    cdef double x
    for k in range(W - 1, -1, -1):
        if occ[k]:
            R = k
            break
    for sc in range(nscans):
        v = 0
        while v < W and occ[v]:
            v += 1
        if v == 0 or v >= W:
            return -1
        i = v - 1
        while True:
            if occ[i] == 0 and i > R:
                break
            if i + 1 >= W:
                return -1
            if occ[i] == 1 and occ[i + 1] == 0:
                if upos >= nu:
                    return -1
                x = u[upos]
                upos += 1
                if x < p:
                    occ[i] = 0
                    occ[i + 1] = 1
                    if i + 1 > R:
                        R = i + 1
            elif occ[i] == 0 and occ[i + 1] == 1 and pt > 0:
                if upos >= nu:
                    return -1
                x = u[upos]
                upos += 1
                if x < pt:
                    occ[i] = 1
                    occ[i + 1] = 0
                    if i + 1 == R:
                        R = i
            i += 1
    return upos
