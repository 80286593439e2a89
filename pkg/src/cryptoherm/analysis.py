"""Physics on top of an assembled metric.

Positivity rays, Dyson maps, the hidden conjugate, spectral weights of the
metric, the smeared position operator, and time evolution of site
probabilities.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .banded import BandedSymmetricMatrix
from .closed_forms import assemble_metric, pseudometrics_for
from .errors import DimensionError, DomainError, ReconstructionError
from .exact_linalg import solve as exact_solve
from .model import ModelParams, TridiagonalHamiltonian, build_laguerre_hamiltonian
from .positivity import PD, check_positive_definite
from .spectrum import SpectralData, diagonal_metric_float, spectral_data

SQRT = "symmetric-sqrt"
FIRST_ORDER = "first-order"


def _dense(theta) -> np.ndarray:
    if isinstance(theta, BandedSymmetricMatrix):
        return theta.to_float().to_dense()
    return np.asarray(theta, dtype=float)


# -- positivity rays ---------------------------------------------------------

@dataclass(frozen=True)
class AlphaBoundary:
    alpha_max: float
    capped: bool
    lower: float
    upper: float
    direction: tuple


def find_alpha_boundary(
    params: ModelParams,
    k: int,
    direction: Sequence[float] = (),
    cap: float = 1e6,
    rtol: float = 1e-10,
    source: str = "closed",
) -> AlphaBoundary:
    """Largest t with Theta(t * direction) positive definite, by bisection.

    The PD set along a ray is an interval containing 0, so the returned
    ``alpha_max`` satisfies: PD at alpha_max (1 - rtol), not PD at
    alpha_max (1 + rtol).  If positivity survives up to ``cap`` the cap is
    returned with ``capped=True``.
    """
    fparams = params.as_float()
    P = [p.to_float() for p in pseudometrics_for(params, k, source)]
    if k == 0:
        return AlphaBoundary(cap, True, cap, cap, ())
    u = np.asarray(direction, dtype=float)
    if u.shape != (k,):
        raise DimensionError(f"direction must have {k} components")
    norm = np.linalg.norm(u)
    if norm == 0:
        raise DimensionError("zero direction")
    u = u / norm
    base = P[0].widen(k).band_array()
    step = sum(c * p.widen(k).band_array() for c, p in zip(u, P[1:]))

    def pd(t):
        return kernels.banded_ldlt(base + t * step)[0] < 0

    if not pd(0.0):
        raise DomainError(f"Theta is not PD at alpha = 0 for {fparams}")
    lo, hi = 0.0, 1.0
    while pd(hi):
        lo = hi
        if hi >= cap:
            return AlphaBoundary(cap, True, cap, cap, tuple(u))
        hi = min(2.0 * hi, cap)
    while hi - lo > rtol * 0.5 * (lo + hi):
        mid = 0.5 * (lo + hi)
        if pd(mid):
            lo = mid
        else:
            hi = mid
    return AlphaBoundary(0.5 * (lo + hi), False, lo, hi, tuple(u))


# -- Dyson maps --------------------------------------------------------------

@dataclass(frozen=True)
class DysonMap:
    """Omega with Theta = Omega^T Omega (exactly for the square root, to O(alpha^2) otherwise)."""

    omega: np.ndarray
    variant: str

    def metric(self) -> np.ndarray:
        return self.omega.T @ self.omega


def dyson_sqrt(theta) -> DysonMap:
    T = _dense(theta)
    w, V = np.linalg.eigh(T)
    if w[0] <= 0:
        raise DomainError(f"metric is not positive definite (smallest eigenvalue {w[0]:.3e})")
    omega = (V * np.sqrt(w)) @ V.T
    return DysonMap(0.5 * (omega + omega.T), SQRT)


def dyson_first_order(params: ModelParams, alpha: float) -> DysonMap:
    """Omega = D + alpha/2 D^{-1} P_1, with D^2 the diagonal metric."""
    N = params.N
    d = np.sqrt(diagonal_metric_float(params))
    P1 = pseudometrics_for(params.as_float(), 1)[1].to_dense() if N >= 2 else np.zeros((1, 1))
    omega = np.diag(d) + 0.5 * alpha * (P1 / d[:, None])
    return DysonMap(omega, FIRST_ORDER)


def hidden_conjugate(H: TridiagonalHamiltonian, theta):
    """H^double-dagger = Theta^{-1} H^T Theta; exact for rational inputs."""
    if isinstance(theta, BandedSymmetricMatrix) and theta.exact and H.exact:
        T = theta.to_dense()
        rhs = H.to_dense().T.dot(T)
        try:
            return np.array(exact_solve(T.tolist(), rhs.tolist()), dtype=object)
        except ZeroDivisionError as exc:
            raise DomainError("singular metric") from exc
    T = _dense(theta)
    Hd = H.to_float().to_dense()
    try:
        return np.linalg.solve(T, Hd.T @ T)
    except np.linalg.LinAlgError as exc:
        raise DomainError("singular metric") from exc


def hermitian_image(H: TridiagonalHamiltonian, dyson: DysonMap) -> np.ndarray:
    """h = Omega H Omega^{-1}, symmetric whenever Omega^T Omega solves the Dieudonne equation."""
    Om = dyson.omega
    OH = Om @ H.to_float().to_dense()
    return np.linalg.solve(Om.T, OH.T).T


# -- spectral weights --------------------------------------------------------

def spectral_decompose(theta, spectral: SpectralData, rtol: float = 1e-10) -> np.ndarray:
    """Weights kappa_n^2 with Theta = sum_n kappa_n^2 |xi_n><xi_n|.

    kappa_n^2 = <psi_n|Theta|psi_n> / t_n^2.  A reconstruction error above
    ``rtol`` means Theta does not solve the Dieudonne equation.
    """
    T = _dense(theta)
    psi, xi, t = spectral.right_vectors, spectral.left_vectors, spectral.pairings
    kappa2 = np.einsum("in,ij,jn->n", psi, T, psi) / t**2
    err = np.linalg.norm(reconstruct_metric(kappa2, spectral) - T) / np.linalg.norm(T)
    if err > rtol:
        raise ReconstructionError(f"relative reconstruction error {err:.3e} exceeds {rtol:g}")
    return kappa2


def reconstruct_metric(kappa2, spectral: SpectralData) -> np.ndarray:
    xi = spectral.left_vectors
    return (xi * np.asarray(kappa2)[None, :]) @ xi.T


# -- position ----------------------------------------------------------------

@dataclass(frozen=True)
class PositionModel:
    """Q = Omega^{-1} q Omega with eigenvectors chi_s = Omega^{-1} e_s (columns of ``chi``)."""

    sites: np.ndarray
    q_hat: np.ndarray
    Q: np.ndarray
    chi: np.ndarray


def position_operator(dyson: DysonMap, sites: Optional[Sequence[float]] = None) -> PositionModel:
    Om = dyson.omega
    N = Om.shape[0]
    q = np.arange(1, N + 1, dtype=float) if sites is None else np.asarray(sites, dtype=float)
    if q.shape != (N,):
        raise DimensionError(f"need {N} site coordinates")
    if np.any(np.diff(q) <= 0):
        raise DomainError("site coordinates must be strictly increasing")
    try:
        Oinv = np.linalg.inv(Om)
    except np.linalg.LinAlgError as exc:
        raise DomainError("singular Dyson map") from exc
    q_hat = np.diag(q)
    return PositionModel(q, q_hat, Oinv @ q_hat @ Om, Oinv)


def off_tridiagonal_mass(Q: np.ndarray) -> float:
    i, j = np.indices(Q.shape)
    return float(np.linalg.norm(Q[np.abs(i - j) > 1]))


# -- evolution ---------------------------------------------------------------

@dataclass(frozen=True)
class EvolutionResult:
    """Rows index time, columns index site s = 1..N.

    ``states`` is psi(t); ``smeared`` is sum_{s'} Theta_{ss'} psi(t)_{s'};
    ``site_probabilities`` is |<chi_s|Theta|psi(t)>|^2 normalized over s.
    """

    times: np.ndarray
    states: np.ndarray
    smeared: np.ndarray
    site_probabilities: np.ndarray
    theta_norms: np.ndarray


def evolve(
    params: ModelParams,
    theta,
    initial: Sequence,
    times: Sequence[float],
    sites: Optional[Sequence[float]] = None,
    dyson: Optional[DysonMap] = None,
) -> EvolutionResult:
    fparams = params.as_float()
    T = _dense(theta)
    band = theta if isinstance(theta, BandedSymmetricMatrix) else BandedSymmetricMatrix.from_dense(T, T.shape[0] - 1)
    if check_positive_definite(band.to_float()).status != PD:
        raise DomainError("metric is not positive definite; site probabilities are undefined")
    psi0 = np.asarray(initial, dtype=complex)
    if psi0.shape != (params.N,):
        raise DimensionError(f"initial state must have {params.N} components")
    if not np.any(psi0):
        raise DomainError("initial state is zero")
    sd = spectral_data(fparams)
    coeffs = (sd.left_vectors.T @ psi0) / sd.pairings
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, sd.energies)) * coeffs[None, :]
    states = phases @ sd.right_vectors.T
    smeared = states @ T.T
    pos = position_operator(dyson if dyson is not None else dyson_sqrt(T), sites)
    amp = smeared @ pos.chi  # amp[t, s] = chi_s^T Theta psi(t)
    weight = np.abs(amp) ** 2
    rho = weight / weight.sum(axis=1, keepdims=True)
    norms = np.real(np.einsum("ti,ti->t", states.conj(), smeared))
    return EvolutionResult(times, states, smeared, rho, norms)


# -- reporting ---------------------------------------------------------------

def analysis_report(
    params: ModelParams,
    k: int,
    alphas: Sequence = (),
    rays: Sequence[Sequence[float]] = (),
    source: str = "closed",
) -> dict:
    fam = assemble_metric(params, k, alphas, source)
    report = {"N": params.N, "a": float(params.a), "k": k, "alphas": [float(x) for x in alphas]}
    report["positivity"] = fam.positivity
    bounds = [find_alpha_boundary(params, k, ray, source=source) for ray in rays]
    report["alpha_max"] = [None if b.capped else b.alpha_max for b in bounds]
    report["alpha_max_capped"] = [b.capped for b in bounds]
    sd = spectral_data(params.as_float())
    report["kappa2"] = [float(x) for x in spectral_decompose(fam.theta, sd)]
    return report


def laguerre_metric(params: ModelParams, k: int, alphas: Sequence = (), source: str = "closed"):
    """Convenience: (H, Theta) for the Laguerre lattice."""
    return build_laguerre_hamiltonian(params), assemble_metric(params, k, alphas, source).theta
