# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels; same signatures and results as ``_core_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def laguerre_table(Py_ssize_t nmax, double a, z):
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t nz = zv.shape[0]
    out_arr = np.empty((nmax + 1, nz))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t col, m
    cdef double prev, cur, nxt, zc
    for col in range(nz):
        zc = zv[col]
        prev = 0.0
        cur = 1.0
        out[0, col] = 1.0
        for m in range(nmax):
            nxt = ((a + 2 * m + 1 - zc) * cur - (a + m) * prev) / (m + 1)
            prev = cur
            cur = nxt
            out[m + 1, col] = cur
    return out_arr


def laguerre_scalar(Py_ssize_t n, double a, double z):
    cdef double prev = 0.0, cur = 1.0, nxt
    cdef Py_ssize_t m
    for m in range(n):
        nxt = ((a + 2 * m + 1 - z) * cur - (a + m) * prev) / (m + 1)
        prev = cur
        cur = nxt
    return cur


def banded_ldlt(bands):
    cdef double[:, ::1] A = np.ascontiguousarray(bands, dtype=np.float64)
    cdef Py_ssize_t kb = A.shape[0] - 1
    cdef Py_ssize_t n = A.shape[1]
    lower_arr = np.zeros((kb + 1, n))
    piv_arr = np.zeros(n)
    cdef double[:, ::1] L = lower_arr
    cdef double[::1] piv = piv_arr
    cdef Py_ssize_t i, j, p, lo
    cdef double s, t, ljp
    for j in range(n):
        s = A[0, j]
        lo = j - kb if j > kb else 0
        for p in range(lo, j):
            ljp = L[j - p, p]
            s -= ljp * ljp * piv[p]
        piv[j] = s
        if not s > 0:
            return j, lower_arr, piv_arr
        for i in range(j + 1, min(n, j + kb + 1)):
            t = A[i - j, j]
            lo = i - kb if i > kb else 0
            for p in range(lo, j):
                t -= L[i - p, p] * L[j - p, p] * piv[p]
            L[i - j, j] = t / s
    return -1, lower_arr, piv_arr


def tridiag_matvec(diag, sup, sub, v):
    cdef double[::1] dv = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(sup, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(sub, dtype=np.float64)
    cdef double[::1] x = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0], i
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    for i in range(n):
        out[i] = dv[i] * x[i]
    for i in range(n - 1):
        out[i] += sv[i] * x[i + 1]
        out[i + 1] += bv[i] * x[i]
    return out_arr


cdef inline double _h(double[::1] dv, double[::1] sv, double[::1] bv,
                      Py_ssize_t i, Py_ssize_t j) nogil:
    if i == j:
        return dv[i]
    if j == i + 1:
        return sv[i]
    if i == j + 1:
        return bv[j]
    return 0.0


cdef inline double _th(double[:, ::1] B, Py_ssize_t kb, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t d = j - i if j >= i else i - j
    if d > kb:
        return 0.0
    return B[d, i if i < j else j]


def dieudonne_maxnorm(diag, sup, sub, bands):
    cdef double[::1] dv = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(sup, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(sub, dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(bands, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0], kb = B.shape[0] - 1
    cdef Py_ssize_t i, j, l
    cdef double s, worst = 0.0
    for i in range(n):
        for j in range(i + 1, min(n, i + kb + 2)):
            s = 0.0
            for l in range(i - 1 if i > 0 else 0, min(n, i + 2)):
                s += _h(dv, sv, bv, l, i) * _th(B, kb, l, j)
            for l in range(j - 1 if j > 0 else 0, min(n, j + 2)):
                s -= _th(B, kb, i, l) * _h(dv, sv, bv, l, j)
            if fabs(s) > worst:
                worst = fabs(s)
    return worst
