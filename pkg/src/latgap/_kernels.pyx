# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fincke-Pohst enumeration over floating Gram-Schmidt data.

Both entry points return a superset of the integer vectors x with
``sum_i bnorm[i] * (x_i - c_i + sum_{j>i} mu[j, i] (x_j - c_j))**2 <= bound``;
callers re-check candidates exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, floor, ceil, fabs

cnp.import_array()

cdef enum:
    MAXDIM = 64


cdef inline double _pad(double s, double w) nogil:
    return 1e-9 * (1.0 + fabs(s) + w)


def enumerate_ball(double[:, ::1] mu, double[::1] bnorm, double[::1] center, double bound):
    """All candidate coefficient vectors (int64 array of shape (m, d))."""
    cdef Py_ssize_t d = bnorm.shape[0]
    if d > MAXDIM:
        raise ValueError("dimension too large for the compiled kernel")
    cdef double[MAXDIM] partial
    cdef double[MAXDIM] centers
    cdef long long[MAXDIM] x
    cdef long long[MAXDIM] hi
    cdef double s, w, rem, t
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t cap = 1024, count = 0
    out = np.empty((cap, d), dtype=np.int64)
    cdef long long[:, ::1] ov = out
    bound = bound * (1.0 + 1e-9) + 1e-300

    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)

    i = d - 1
    partial[i] = 0.0
    centers[i] = center[i]
    w = sqrt(bound / bnorm[i])
    x[i] = <long long>ceil(centers[i] - w - _pad(centers[i], w))
    hi[i] = <long long>floor(centers[i] + w + _pad(centers[i], w))
    while True:
        if x[i] > hi[i]:
            i += 1
            if i == d:
                break
            x[i] += 1
            continue
        t = <double>x[i] - centers[i]
        rem = partial[i] + bnorm[i] * t * t
        if rem > bound:
            # may still be inside the padded interval; skip this value
            x[i] += 1
            continue
        if i == 0:
            if count == cap:
                cap *= 2
                out = np.resize(out, (cap, d))
                ov = out
            for k in range(d):
                ov[count, k] = x[k]
            count += 1
            x[0] += 1
            continue
        # descend to level i-1
        j = i - 1
        s = center[j]
        for k in range(i, d):
            s -= mu[k, j] * (<double>x[k] - center[k])
        partial[j] = rem
        centers[j] = s
        w = sqrt((bound - rem) / bnorm[j]) if bound > rem else 0.0
        x[j] = <long long>ceil(s - w - _pad(s, w))
        hi[j] = <long long>floor(s + w + _pad(s, w))
        i = j
    return out[:count].copy()


def count_ball(double[:, ::1] mu, double[::1] bnorm, double[::1] center, double bound,
               double margin):
    """Count points with qf <= bound*(1-margin); return (count, ambiguous candidates).

    Ambiguous candidates (qf within the relative band ``margin`` of the bound) are
    returned as an int64 array for exact classification by the caller.
    """
    cdef Py_ssize_t d = bnorm.shape[0]
    if d > MAXDIM:
        raise ValueError("dimension too large for the compiled kernel")
    cdef double[MAXDIM] partial
    cdef double[MAXDIM] centers
    cdef long long[MAXDIM] x
    cdef long long[MAXDIM] hi
    cdef double s, w, rem, t
    cdef double sure = bound * (1.0 - margin)
    cdef double outer = bound * (1.0 + margin) + 1e-300
    cdef Py_ssize_t i, j, k
    cdef long long n_sure = 0
    cdef Py_ssize_t cap = 64, count = 0
    amb = np.empty((cap, d), dtype=np.int64)
    cdef long long[:, ::1] av = amb

    if d == 0:
        return 1, np.zeros((0, 0), dtype=np.int64)

    i = d - 1
    partial[i] = 0.0
    centers[i] = center[i]
    w = sqrt(outer / bnorm[i])
    x[i] = <long long>ceil(centers[i] - w - _pad(centers[i], w))
    hi[i] = <long long>floor(centers[i] + w + _pad(centers[i], w))
    while True:
        if x[i] > hi[i]:
            i += 1
            if i == d:
                break
            x[i] += 1
            continue
        t = <double>x[i] - centers[i]
        rem = partial[i] + bnorm[i] * t * t
        if rem > outer:
            x[i] += 1
            continue
        if i == 0:
            if rem <= sure:
                n_sure += 1
            else:
                if count == cap:
                    cap *= 2
                    amb = np.resize(amb, (cap, d))
                    av = amb
                for k in range(d):
                    av[count, k] = x[k]
                count += 1
            x[0] += 1
            continue
        j = i - 1
        s = center[j]
        for k in range(i, d):
            s -= mu[k, j] * (<double>x[k] - center[k])
        partial[j] = rem
        centers[j] = s
        w = sqrt((outer - rem) / bnorm[j]) if outer > rem else 0.0
        x[j] = <long long>ceil(s - w - _pad(s, w))
        hi[j] = <long long>floor(s + w + _pad(s, w))
        i = j
    return int(n_sure), amb[:count].copy()
