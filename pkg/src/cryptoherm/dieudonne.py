"""Exact solver for H^T Theta = Theta H on symmetric (2k+1)-banded Theta.

The unknowns theta_{m, m+d} are numbered band-major (d = 0 first).  The
commutator H^T Theta - Theta H is antisymmetric with half-bandwidth k+1,
so its strictly upper part gives sum_{d=1}^{k+1} (n-d) equations in
sum_{d=0}^{k} (n-d) unknowns: at least k+1 free directions.  The
nullspace is computed exactly and reduced to the normal form in which
P_j has first row e_{j+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import _core_py, kernels
from .banded import BandedSymmetricMatrix, linear_combination
from .errors import DimensionError, NormalizationError, StructureError
from .exact_linalg import nullspace, solve
from .model import ModelParams, TridiagonalHamiltonian, build_laguerre_hamiltonian


def dieudonne_residual(H: TridiagonalHamiltonian, theta: BandedSymmetricMatrix):
    """max |H^T Theta - Theta H|; an exact ``Fraction`` when both inputs are exact."""
    if H.n != theta.n:
        raise DimensionError(f"H is {H.n}x{H.n} but Theta is {theta.n}x{theta.n}")
    if H.n == 1:
        return Fraction(0) if H.exact and theta.exact else 0.0
    if H.exact and theta.exact:
        return _core_py.dieudonne_maxnorm(H.diag, H.sup, H.sub, theta.bands)
    return float(
        kernels.dieudonne_maxnorm(
            np.array(H.diag, float), np.array(H.sup, float), np.array(H.sub, float), theta.band_array()
        )
    )


def dieudonne_commutator(H: TridiagonalHamiltonian, theta: BandedSymmetricMatrix) -> np.ndarray:
    """Dense H^T Theta - Theta H (object dtype when exact)."""
    if H.n != theta.n:
        raise DimensionError("dimension mismatch")
    Hd, T = H.to_dense(), theta.to_dense()
    if Hd.dtype == object or T.dtype == object:
        Hd, T = Hd.astype(object), T.astype(object)
    return Hd.T.dot(T) - T.dot(Hd)


def _offsets(n: int, k: int) -> List[int]:
    off, acc = [], 0
    for d in range(k + 1):
        off.append(acc)
        acc += n - d
    off.append(acc)
    return off


def _as_exact(H: TridiagonalHamiltonian) -> TridiagonalHamiltonian:
    if H.exact:
        return H
    return TridiagonalHamiltonian(
        [Fraction(x) for x in H.diag], [Fraction(x) for x in H.sup], [Fraction(x) for x in H.sub]
    )


def constraint_rows(H: TridiagonalHamiltonian, k: int) -> List[dict]:
    """Sparse rows of the linear map Theta -> upper part of H^T Theta - Theta H."""
    n = H.n
    off = _offsets(n, k)

    def var(p, q):
        d = abs(p - q)
        return off[d] + min(p, q) if d <= k else None

    rows = []
    for i in range(n):
        for j in range(i + 1, min(n, i + k + 2)):
            row: dict = {}
            # (H^T Theta)_{ij} = sum_l H[l, i] Theta[l, j]
            for l in range(max(0, i - 1), min(n, i + 2)):
                v = var(l, j)
                h = H.entry(l, i)
                if v is not None and h:
                    row[v] = row.get(v, 0) + h
            # (Theta H)_{ij} = sum_l Theta[i, l] H[l, j]
            for l in range(max(0, j - 1), min(n, j + 2)):
                v = var(i, l)
                h = H.entry(l, j)
                if v is not None and h:
                    row[v] = row.get(v, 0) - h
            row = {c: x for c, x in row.items() if x}
            if row:
                rows.append(row)
    return rows


def _vector_to_banded(x: Sequence, n: int, k: int) -> BandedSymmetricMatrix:
    off = _offsets(n, k)
    return BandedSymmetricMatrix(n, [x[off[d]: off[d + 1]] for d in range(k + 1)])


def band_nullspace(H: TridiagonalHamiltonian, k: int) -> List[BandedSymmetricMatrix]:
    """Exact basis of all symmetric (2k+1)-banded solutions of the Dieudonne equation."""
    if not 0 <= k <= H.n - 1:
        raise DimensionError(f"band half-width k={k} needs 0 <= k <= n-1 (n={H.n})")
    He = _as_exact(H)
    n = He.n
    ncols = _offsets(n, k)[-1]
    basis = nullspace(constraint_rows(He, k), ncols)
    return [_vector_to_banded(x, n, k) for x in basis]


def nullspace_dimension(H: TridiagonalHamiltonian, k: int) -> int:
    return len(band_nullspace(H, k))


def reduce_to_normal_form(mats: Sequence[BandedSymmetricMatrix]) -> List[BandedSymmetricMatrix]:
    """Recombine k+1 solutions so that element j has first row e_{j+1}.

    Uniquely defined whenever the first-row block of the basis is
    invertible; otherwise raises ``NormalizationError``.
    """
    if not mats:
        raise NormalizationError("empty basis")
    k = max(m.k for m in mats)
    mats = [m.widen(k) for m in mats]
    if len(mats) != k + 1:
        raise NormalizationError(f"{len(mats)} matrices cannot span a normal form of size {k + 1}")
    # F[b][d] = first-row element d of basis matrix b
    F = [[Fraction(m.bands[d][0]) for d in range(k + 1)] for m in mats]
    Ft = [[F[b][d] for b in range(k + 1)] for d in range(k + 1)]
    eye = [[Fraction(int(i == j)) for j in range(k + 1)] for i in range(k + 1)]
    try:
        W = solve(Ft, eye)  # column j of W holds the weights producing P_j
    except ZeroDivisionError as exc:
        raise NormalizationError("first-row block of the nullspace basis is singular") from exc
    out = []
    for j in range(k + 1):
        out.append(linear_combination([W[b][j] for b in range(k + 1)], mats))
    return out


@dataclass(frozen=True)
class PseudometricSet:
    """P_0..P_k with P_j of half-bandwidth j, each solving the Dieudonne equation."""

    hamiltonian: TridiagonalHamiltonian
    k: int
    P: tuple
    params: Optional[ModelParams] = None

    def to_json(self) -> dict:
        out = {"N": self.hamiltonian.n}
        if self.params is not None:
            a = self.params.a
            out["a"] = str(Fraction(a)) if self.params.exact else float(a)
        out["k"] = self.k
        out["P"] = [{"j": j, "bands": p.to_json()} for j, p in enumerate(self.P)]
        return out


def _trim(m: BandedSymmetricMatrix, j: int) -> BandedSymmetricMatrix:
    for d in range(j + 1, m.k + 1):
        if any(x != 0 for x in m.bands[d]):
            raise StructureError(f"P_{j} has nonzero entries on band {d}")
    return BandedSymmetricMatrix(m.n, m.bands[: j + 1])


def solve_band_pseudometrics(H, k: int) -> PseudometricSet:
    """Exact pseudometrics P_0..P_k for a tridiagonal H (or ``ModelParams``)."""
    params = None
    if isinstance(H, ModelParams):
        params, H = H, build_laguerre_hamiltonian(H)
    if H.n < k + 1:
        raise DimensionError(f"n={H.n} too small for k={k}")
    basis = band_nullspace(H, k)
    if len(basis) != k + 1:
        raise StructureError(f"nullspace has dimension {len(basis)}, expected {k + 1}")
    normal = reduce_to_normal_form(basis)
    P = tuple(_trim(m, j) for j, m in enumerate(normal))
    if not H.exact:
        P = tuple(p.to_float() for p in P)
    return PseudometricSet(H, k, P, params)


def solve_general_metric(H, k: int, alphas: Sequence) -> BandedSymmetricMatrix:
    """Theta = P_0 + sum_j alpha_j P_j."""
    if len(alphas) != k:
        raise DimensionError(f"need {k} coefficients, got {len(alphas)}")
    ps = solve_band_pseudometrics(H, k)
    return linear_combination([1, *alphas], list(ps.P))
