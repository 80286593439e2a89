"""Positive-definiteness by banded LDL^T, with a witness either way."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _core_py, kernels
from .banded import BandedSymmetricMatrix

PD = "positive-definite"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class PositivityResult:
    """``status`` is PD or INDEFINITE.

    On success ``lower``/``pivots`` hold the LDL^T factor (the witness).
    On failure ``pivot_index`` is the 0-based index of the first
    non-positive pivot and ``direction`` satisfies v^T Theta v <= 0.
    """

    status: str
    lower: Optional[object] = None
    pivots: Optional[object] = None
    pivot_index: Optional[int] = None
    direction: Optional[object] = None

    @property
    def is_pd(self) -> bool:
        return self.status == PD


def _lower_dense(lower, n, upto):
    L = [[0 * lower[0][0] for _ in range(upto)] for _ in range(upto)]
    kb = len(lower) - 1
    for j in range(upto):
        L[j][j] = 1 + 0 * lower[0][0]
        for d in range(1, kb + 1):
            if j + d < upto:
                L[j + d][j] = lower[d][j]
    return L


def _witness(lower, p: int, n: int):
    """v with L^T v = e_p on the leading (p+1) block, so v^T Theta v = d_p."""
    L = _lower_dense(lower, n, p + 1)
    zero = 0 * lower[0][0]
    v = [zero] * n
    v[p] = zero + 1
    for i in range(p - 1, -1, -1):
        s = zero
        for r in range(i + 1, p + 1):
            s = s + L[r][i] * v[r]
        v[i] = -s
    return v


def check_positive_definite(theta: BandedSymmetricMatrix) -> PositivityResult:
    """Classify a symmetric band matrix; exact when its entries are rational."""
    if theta.exact:
        # columns of the factor: bands[d][j] = A[j+d, j] is exactly the stored upper band
        bands = [list(b) + [0 * b[0]] * d for d, b in enumerate(theta.bands)]
        info, lower, piv = _core_py.banded_ldlt(bands)
        direction = None
        if info >= 0:
            direction = _witness(lower, info, theta.n)
        status = PD if info < 0 else INDEFINITE
        return PositivityResult(status, lower, piv, None if info < 0 else info, direction)
    info, lower, piv = kernels.banded_ldlt(theta.band_array())
    if info < 0:
        return PositivityResult(PD, np.asarray(lower), np.asarray(piv))
    v = np.array(_witness(np.asarray(lower).tolist(), info, theta.n), dtype=float)
    return PositivityResult(INDEFINITE, np.asarray(lower), np.asarray(piv), int(info), v)


def cholesky_from_ldlt(result: PositivityResult, n: int) -> np.ndarray:
    """Dense lower Cholesky factor L sqrt(D) from a PD witness."""
    if not result.is_pd:
        raise ValueError("no factor for an indefinite matrix")
    L = np.array(_lower_dense(np.asarray(result.lower, dtype=float).tolist(), n, n), dtype=float)
    return L * np.sqrt(np.asarray(result.pivots, dtype=float))[None, :]
