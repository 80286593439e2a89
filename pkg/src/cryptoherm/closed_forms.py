"""Closed-form pseudometrics P_0..P_3 of the Laguerre lattice.

Notation (1-based n): Pi(m) = prod_{i=1}^{m} (a+i), Pi(0) = 1.

    P_0:  theta_nn      = (n-1)! / Pi(n-1)
    P_1:  theta_nn      = -2 (n-1) (n-1)! / Pi(n-1)
          theta_n,n+1   = n! / Pi(n-1)
    P_2:  theta_nn      = (n-1) (n-1)! (a+3n-4) / Pi(n-1)
          theta_n,n+1   = -2 (n-1) n! / Pi(n-1)
          theta_n,n+2   = (n+1)! / (2 Pi(n-1))
          theta_NN      = (N-2) (N-1)! (a+5N-4) / (2 Pi(N-1))              [boundary]
    P_3:  theta_nn      = -2 (n-1)(n-2) (n-1)! (3a+5n-6) / (3 Pi(n-1))
          theta_n,n+1   = (n-1) n! (a+5n-7) / (2 Pi(n-1))
          theta_n,n+2   = -(n-1) (n+1)! / Pi(n-1)
          theta_n,n+3   = (n+2)! / (6 Pi(n-1))
          theta_NN      = -(N-3) (N-1)! [(3N-4)a + 7N^2 - 16N + 8] / (3 Pi(N-1))  [boundary]
          theta_N-1,N   = (N-3) (N-1)! (a+7N-12) / (3 Pi(N-2))              [boundary]

Two tempting variants are wrong: a P_1 diagonal equal to the P_0 formula,
and a P_3 diagonal with (a+5n-6) in place of (3a+5n-6).  Neither solves
the Dieudonne equation; the forms above agree with the exact nullspace
solver and every tabulated reference element.

Boundary elements depend on the cutoff N and are only conjectured; they
are checked by an exact residual evaluation on every call unless
``verify=False``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .banded import BandedSymmetricMatrix, linear_combination
from .errors import ConjectureViolation, DimensionError, DomainError
from .model import ModelParams, build_laguerre_hamiltonian
from .positivity import check_positive_definite

FORMULA = {0: "lemma1", 1: "lemma2-corrected", 2: "lemma3", 3: "lemma4-corrected"}
BOUNDARY = {(2, "NN"): "conjecture1", (3, "NN"): "conjecture2", (3, "N-1N"): "conjecture3"}
FLOAT_VERIFY_RTOL = 1e-10


def _r(n: int, a):
    """(n-1)! / Pi(n-1), accumulated as prod i/(a+i) so floats never overflow."""
    out = Fraction(1) if isinstance(a, Fraction) else 1.0
    for i in range(1, n):
        if a + i == 0:
            raise DomainError(f"denominator factor a+{i} vanishes at a = {a}")
        out = out * i / (a + i)
    return out


def _r_table(N: int, a) -> list:
    """[r(1), ..., r(N)] in O(N)."""
    out = [Fraction(1) if isinstance(a, Fraction) else 1.0]
    for i in range(1, N):
        if a + i == 0:
            raise DomainError(f"denominator factor a+{i} vanishes at a = {a}")
        out.append(out[-1] * i / (a + i))
    return out


def p0_element(n: int, a, r=None):
    return _r(n, a) if r is None else r


def p1_element(n: int, d: int, a, r=None):
    r = _r(n, a) if r is None else r
    if d == 0:
        return -2 * (n - 1) * r
    return n * r


def p2_element(n: int, d: int, a, r=None):
    r = _r(n, a) if r is None else r
    if d == 0:
        return (n - 1) * (a + 3 * n - 4) * r
    if d == 1:
        return -2 * (n - 1) * n * r
    return n * (n + 1) * r / 2


def p2_boundary_NN(N: int, a):
    return (N - 2) * (a + 5 * N - 4) * _r(N, a) / 2


def p3_element(n: int, d: int, a, r=None):
    r = _r(n, a) if r is None else r
    if d == 0:
        return -2 * (n - 1) * (n - 2) * (3 * a + 5 * n - 6) * r / 3
    if d == 1:
        return (n - 1) * n * (a + 5 * n - 7) * r / 2
    if d == 2:
        return -(n - 1) * n * (n + 1) * r
    return n * (n + 1) * (n + 2) * r / 6


def p3_boundary_NN(N: int, a):
    poly = (3 * N - 4) * a + 7 * N * N - 16 * N + 8
    return -(N - 3) * poly * _r(N, a) / 3


def p3_boundary_N1N(N: int, a):
    # (N-1)! / Pi(N-2) = r(N) (a + N - 1)
    return (N - 3) * (a + 7 * N - 12) * (a + N - 1) * _r(N, a) / 3


_BULK = {
    0: lambda n, d, a, r=None: p0_element(n, a, r),
    1: p1_element,
    2: p2_element,
    3: p3_element,
}


@dataclass(frozen=True)
class ClosedFormTable:
    """One closed-form pseudometric with a provenance tag per stored element."""

    params: ModelParams
    j: int
    matrix: BandedSymmetricMatrix
    provenance: Tuple[Tuple[str, ...], ...]

    def exceptional(self) -> Dict[Tuple[int, int], str]:
        out = {}
        for d, band in enumerate(self.provenance):
            for m, tag in enumerate(band):
                if tag.startswith("conjecture"):
                    out[(m + 1, m + 1 + d)] = tag
        return out

    def to_json(self) -> dict:
        return {"j": self.j, "bands": self.matrix.to_json(), "provenance": [list(b) for b in self.provenance]}


def pseudometric_table(params: ModelParams, j: int, verify: bool = True) -> ClosedFormTable:
    """P_j from closed forms, boundary elements included.

    The bulk formulas are established for N >= j+2.  At N = j+1 the
    table is still produced but always checked against the Dieudonne
    equation, whatever ``verify`` says.
    """
    if j not in _BULK:
        raise DimensionError("closed forms exist for j <= 3 only; use the nullspace solver")
    N, a = params.N, params.a
    if N < j + 1:
        raise DimensionError(f"P_{j} needs N >= {j + 1}, got N = {N}")
    bulk = _BULK[j]
    r = _r_table(N, a)
    bands, prov = [], []
    for d in range(j + 1):
        bands.append([bulk(m, d, a, r[m - 1]) for m in range(1, N - d + 1)])
        prov.append([FORMULA[j]] * (N - d))
    if j == 2:
        bands[0][N - 1] = p2_boundary_NN(N, a)
        prov[0][N - 1] = BOUNDARY[(2, "NN")]
    elif j == 3:
        bands[0][N - 1] = p3_boundary_NN(N, a)
        prov[0][N - 1] = BOUNDARY[(3, "NN")]
        bands[1][N - 2] = p3_boundary_N1N(N, a)
        prov[1][N - 2] = BOUNDARY[(3, "N-1N")]
    table = ClosedFormTable(params, j, BandedSymmetricMatrix(N, bands), tuple(tuple(p) for p in prov))
    if (verify and j >= 2) or N == j + 1:
        verify_boundary(table)
    return table


def verify_boundary(table: ClosedFormTable) -> None:
    """Raise ``ConjectureViolation`` unless the table solves H^T P = P H.

    With the first row fixed, a solution is unique, so a zero residual
    certifies the boundary elements against the nullspace solver.
    """
    from .dieudonne import dieudonne_residual

    H = build_laguerre_hamiltonian(table.params)
    res = dieudonne_residual(H, table.matrix)
    if table.params.exact:
        ok = res == 0
    else:
        scale = max(abs(x) for b in table.matrix.bands for x in b) * max(abs(x) for x in H.diag)
        ok = res <= FLOAT_VERIFY_RTOL * scale
    if not ok:
        tags = sorted(set(table.exceptional().values()))
        raise ConjectureViolation(
            f"P_{table.j} at N={table.params.N}, a={table.params.a}: residual {res} ({', '.join(tags)})"
        )


def p0(params: ModelParams) -> BandedSymmetricMatrix:
    return pseudometric_table(params, 0).matrix


def p1(params: ModelParams) -> BandedSymmetricMatrix:
    return pseudometric_table(params, 1).matrix


def p2(params: ModelParams, verify: bool = True) -> BandedSymmetricMatrix:
    return pseudometric_table(params, 2, verify).matrix


def p3(params: ModelParams, verify: bool = True) -> BandedSymmetricMatrix:
    return pseudometric_table(params, 3, verify).matrix


def closed_form_pseudometrics(params: ModelParams, k: int, verify: bool = True):
    return [pseudometric_table(params, j, verify).matrix for j in range(k + 1)]


@dataclass(frozen=True)
class MetricFamily:
    """Theta = P_0 + sum_j alpha_j P_j with its positivity verdict."""

    params: ModelParams
    k: int
    alphas: tuple
    theta: BandedSymmetricMatrix
    positivity: str = "unknown"
    pseudometrics: tuple = field(default=(), repr=False)


def pseudometrics_for(params: ModelParams, k: int, source: str = "closed"):
    if source == "closed":
        if k > 3:
            raise DimensionError("closed forms stop at k = 3; use source='oracle'")
        return closed_form_pseudometrics(params, k)
    if source == "oracle":
        from .dieudonne import solve_band_pseudometrics

        exact = params if params.exact else ModelParams(params.N, Fraction(params.a))
        P = solve_band_pseudometrics(exact, k).P
        return [p if params.exact else p.to_float() for p in P]
    raise ValueError(f"unknown source {source!r}")


def assemble_metric(
    params: ModelParams, k: int, alphas: Sequence = (), source: str = "closed", classify: bool = True
) -> MetricFamily:
    """Assemble the (2k+1)-diagonal metric candidate and classify it."""
    alphas = tuple(alphas)
    if len(alphas) != k:
        raise DimensionError(f"k={k} needs {k} coefficients, got {len(alphas)}")
    P = pseudometrics_for(params, k, source)
    theta = linear_combination([1, *alphas], P) if k else P[0]
    if not params.exact or any(isinstance(x, float) for x in alphas):
        theta = theta.to_float()
    status = check_positive_definite(theta).status if classify else "unknown"
    return MetricFamily(params, k, alphas, theta, status, tuple(P))
