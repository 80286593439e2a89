"""Laguerre polynomials, the real spectrum of H^(N)(a), and biorthogonal eigenvectors."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from . import kernels
from ._core_py import laguerre_scalar
from .errors import DegeneracyError, DomainError, NumericError
from .model import ModelParams, build_laguerre_hamiltonian, conjugate_transpose

DEGENERACY_RTOL = 1e-12


def laguerre_eval(n: int, a, z):
    """L(n, a, z) with L(-1) = 0, L(0) = 1 and the recurrence

    (m+1) L(m+1) = (a + 2m + 1 - z) L(m) - (a + m) L(m-1).

    Exact for rational ``a`` and ``z``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    return laguerre_scalar(n, a, z)


def symmetrized_bands(params: ModelParams):
    """Diagonal and off-diagonal of D H D^{-1}, D = sqrt(diagonal metric).

    The off-diagonal is -sqrt(n (a + n)), n = 1..N-1.
    """
    N, a = params.N, float(params.a)
    diag = a + 2.0 * np.arange(1, N + 1) - 1.0
    n = np.arange(1, N, dtype=float)
    w = n * (a + n)
    if np.any(w <= 0):
        raise DomainError(f"non-positive symmetrization weight at a = {a}")
    return diag, -np.sqrt(w)


def compute_spectrum(params: ModelParams) -> np.ndarray:
    """The N real zeros of L(N, a, .) in ascending order."""
    if float(params.a) <= -1:
        raise DomainError("the real-spectrum route needs a > -1")
    diag, off = symmetrized_bands(params)
    if params.N == 1:
        return diag.copy()
    try:
        return eigh_tridiagonal(diag, off, eigvals_only=True)
    except LinAlgError as exc:
        raise NumericError(str(exc)) from exc


def laguerre_zeros_bisection(N: int, a: float, tol: float = 1e-14) -> np.ndarray:
    """Zeros of L(N, a, .) by bisection on interlacing brackets.

    Debug oracle that never touches a matrix: the zeros of L(m) separate
    those of L(m+1), and all of them lie in (0, B) with B a Gershgorin
    bound of the symmetrized matrix.
    """
    a = float(a)
    if a <= -1:
        raise DomainError("needs a > -1")
    upper = a + 2 * N + 2 * math.sqrt(N * (a + N)) + 1.0

    def f(m, z):
        return laguerre_scalar(m, a, z)

    roots = np.array([])
    for m in range(1, N + 1):
        edges = np.concatenate(([0.0], roots, [upper]))
        new = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            flo = f(m, lo)
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = f(m, mid)
                if (fm > 0) == (flo > 0) and fm != 0:
                    lo, flo = mid, fm
                else:
                    hi = mid
                if hi - lo <= tol * max(1.0, abs(hi)):
                    break
            new.append(0.5 * (lo + hi))
        roots = np.array(new)
    return roots


def right_eigenvector(params: ModelParams, E, normalize: bool = False) -> np.ndarray:
    """Column (L(0,a,E), ..., L(N-1,a,E)); first component 1 unless ``normalize``."""
    psi = kernels.laguerre_table(params.N - 1, float(params.a), np.array([float(E)]))[:, 0]
    if normalize:
        psi = psi / np.linalg.norm(psi)
    return psi


def diagonal_metric_float(params: ModelParams) -> np.ndarray:
    """theta_nn = (n-1)! / prod_{i=1}^{n-1}(a+i), via theta_{n+1} = n theta_n / (a+n)."""
    a = float(params.a)
    out = np.empty(params.N)
    out[0] = 1.0
    for n in range(1, params.N):
        out[n] = out[n - 1] * n / (a + n)
    return out


@dataclass(frozen=True)
class SpectralData:
    """Energies with right/left eigenvectors stored as columns.

    ``pairings[n] = <xi_n | psi_n>`` is positive by construction.
    """

    params: ModelParams
    energies: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    pairings: np.ndarray

    def biorthogonality_defect(self) -> float:
        G = self.left_vectors.T @ self.right_vectors
        G = G / np.sqrt(np.outer(np.abs(np.diag(G)), np.abs(np.diag(G))))
        return float(np.max(np.abs(G - np.eye(len(G)))))


def check_nondegenerate(energies) -> None:
    e = np.asarray(energies, dtype=float)
    if len(e) < 2:
        return
    span = e[-1] - e[0]
    gaps = np.diff(e)
    if np.any(gaps <= DEGENERACY_RTOL * span):
        raise DegeneracyError(f"energies closer than {DEGENERACY_RTOL:g} of the spectral span")


def left_eigenvectors(params: ModelParams, energies, method: str = "metric"):
    """Left eigenvectors xi_n (columns) solving H^T xi = E_n xi, and t_n = <xi_n|psi_n>.

    ``method="metric"`` uses xi_n = Theta_0 psi_n, exact because the diagonal
    metric intertwines H and H^T.  ``method="inverse"`` runs inverse
    iteration on the transposed matrix instead and is kept as a cross-check.
    """
    energies = np.asarray(energies, dtype=float)
    check_nondegenerate(energies)
    N = params.N
    psi = kernels.laguerre_table(N - 1, float(params.a), energies)
    if method == "metric":
        xi = diagonal_metric_float(params)[:, None] * psi
    elif method == "inverse":
        xi = _inverse_iteration_transposed(params, energies)
    else:
        raise ValueError(f"unknown method {method!r}")
    t = np.einsum("ij,ij->j", xi, psi)
    sign = np.where(t < 0, -1.0, 1.0)
    return xi * sign, t * sign


def _inverse_iteration_transposed(params: ModelParams, energies) -> np.ndarray:
    Ht = conjugate_transpose(build_laguerre_hamiltonian(params.as_float())).to_dense().astype(float)
    N = params.N
    rng = np.random.default_rng(12345)
    scale = np.max(np.abs(energies)) + 1.0
    out = np.empty((N, len(energies)))
    for col, E in enumerate(energies):
        shift = E + 1e-13 * scale
        M = Ht - shift * np.eye(N)
        v = rng.standard_normal(N)
        for _ in range(3):
            v = np.linalg.solve(M, v)
            v /= np.linalg.norm(v)
        out[:, col] = v
    return out


def spectral_data(params: ModelParams, left_method: str = "metric") -> SpectralData:
    E = compute_spectrum(params)
    psi = kernels.laguerre_table(params.N - 1, float(params.a), E)
    xi, t = left_eigenvectors(params, E, method=left_method)
    return SpectralData(params, E, psi, xi, t)


def spectrum_record(params: ModelParams, energies) -> dict:
    a = params.a
    return {
        "N": params.N,
        "a": float(a),
        "energies": [float(e) for e in energies],
    }
