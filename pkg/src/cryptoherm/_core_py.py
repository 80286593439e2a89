"""Pure-Python kernels; the reference the compiled ``_core`` must match.

These loops are also generic over the scalar type, which is what the exact
rational pipeline relies on: called with lists of ``Fraction`` they never
round.
"""
from __future__ import annotations

import numpy as np


def laguerre_table(nmax, a, z):
    """Rows L(0..nmax, a, z) for every z, by the three-term recurrence.

    (m+1) L(m+1) = (a + 2m + 1 - z) L(m) - (a + m) L(m-1),  L(-1) = 0, L(0) = 1.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty((nmax + 1, z.shape[0]))
    for col in range(z.shape[0]):
        zc = float(z[col])
        prev, cur = 0.0, 1.0
        out[0, col] = 1.0
        for m in range(nmax):
            prev, cur = cur, ((a + 2 * m + 1 - zc) * cur - (a + m) * prev) / (m + 1)
            out[m + 1, col] = cur
    return out


def laguerre_scalar(n, a, z):
    """Single value L(n, a, z); type-generic (exact for rational a, z)."""
    prev, cur = 0 * z, 1 + 0 * z
    for m in range(n):
        prev, cur = cur, ((a + 2 * m + 1 - z) * cur - (a + m) * prev) / (m + 1)
    return cur


def banded_ldlt(bands):
    """LDL^T of a symmetric band matrix given as ``bands[d][j] = A[j+d, j]``.

    Returns ``(info, lower, pivots)``: ``info`` is -1 when every pivot is
    positive, otherwise the first index j with pivot d_j <= 0 (the
    factorization stops there).  ``lower[d][j]`` holds L[j+d, j].
    """
    kb = len(bands) - 1
    n = len(bands[0])
    zero = bands[0][0] * 0
    lower = [[zero] * n for _ in range(kb + 1)]
    piv = [zero] * n
    for j in range(n):
        s = bands[0][j]
        for p in range(max(0, j - kb), j):
            ljp = lower[j - p][p]
            s = s - ljp * ljp * piv[p]
        piv[j] = s
        if not s > 0:
            return j, lower, piv
        for i in range(j + 1, min(n, j + kb + 1)):
            t = bands[i - j][j]
            for p in range(max(0, i - kb), j):
                t = t - lower[i - p][p] * lower[j - p][p] * piv[p]
            lower[i - j][j] = t / s
    return -1, lower, piv


def tridiag_matvec(diag, sup, sub, v):
    n = len(diag)
    out = [diag[i] * v[i] for i in range(n)]
    for i in range(n - 1):
        out[i] = out[i] + sup[i] * v[i + 1]
        out[i + 1] = out[i + 1] + sub[i] * v[i]
    return out


def dieudonne_maxnorm(diag, sup, sub, bands):
    """max |(H^T Theta - Theta H)_{ij}| for tridiagonal H, banded symmetric Theta.

    The commutator is antisymmetric and (k+1)-banded, so only i < j <= i+k+1
    is visited.
    """
    n = len(diag)
    kb = len(bands) - 1
    zero = diag[0] * 0

    def h(i, j):
        if i == j:
            return diag[i]
        if j == i + 1:
            return sup[i]
        if i == j + 1:
            return sub[j]
        return zero

    def th(i, j):
        d = j - i if j >= i else i - j
        if d > kb:
            return zero
        return bands[d][min(i, j)]

    worst = abs(zero)
    for i in range(n):
        for j in range(i + 1, min(n, i + kb + 2)):
            s = zero
            for l in range(max(0, i - 1), min(n, i + 2)):
                s = s + h(l, i) * th(l, j)
            for l in range(max(0, j - 1), min(n, j + 2)):
                s = s - th(i, l) * h(l, j)
            if abs(s) > worst:
                worst = abs(s)
    return worst
