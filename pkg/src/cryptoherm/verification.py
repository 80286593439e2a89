"""Verification matrix for the closed forms against the exact nullspace solver."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence

import numpy as np

from .closed_forms import ClosedFormTable, pseudometric_table
from .dieudonne import dieudonne_residual, solve_band_pseudometrics
from .errors import ConjectureViolation
from .model import ModelParams, build_laguerre_hamiltonian
from .reference_data import ELEMENTS, SPECTRA
from .spectrum import compute_spectrum

DEFAULT_AS = (Fraction(1), Fraction(2), Fraction(3))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def check_cell(j: int, N: int, a: Fraction, oracle: bool = True) -> Check:
    """Exact residual of closed-form P_j and, optionally, equality with the oracle."""
    name = f"P{j} N={N} a={a}"
    params = ModelParams(N, a)
    try:
        table = pseudometric_table(params, j, verify=False)
    except ConjectureViolation as exc:
        return Check(name, False, str(exc))
    res = dieudonne_residual(build_laguerre_hamiltonian(params), table.matrix)
    if res != 0:
        return Check(name, False, f"residual {res}")
    if oracle:
        P = solve_band_pseudometrics(params, j).P[j]
        if P != table.matrix:
            return Check(name, False, "differs from nullspace solver")
        return Check(name, True, "residual 0, oracle-equal")
    return Check(name, True, "residual 0")


def _cell(args):
    return check_cell(*args)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CRYPTOHERM_THREADS", "1")))
    except ValueError:
        return 1


def residual_matrix(
    js: Sequence[int] = (0, 1, 2, 3), Nmax: int = 12, avals: Iterable = DEFAULT_AS, oracle_Nmax: int = 12
) -> List[Check]:
    cells = [(j, N, Fraction(a), N <= oracle_Nmax) for a in avals for j in js for N in range(j + 2, Nmax + 1)]
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_cell, cells))
    return [_cell(c) for c in cells]


def listed_element_checks(avals: Iterable = DEFAULT_AS) -> List[Check]:
    out = []
    for a in avals:
        a = Fraction(a)
        for (j, N, m, mp), f in ELEMENTS.items():
            table = pseudometric_table(ModelParams(N, a), j)
            got, want = table.matrix.element(m, mp), f(a)
            out.append(Check(f"listed P{j}[{m},{mp}] N={N} a={a}", got == want, f"{got} vs {want}"))
    return out


def spectrum_checks(rtol: float = 1e-8) -> List[Check]:
    out = []
    for (N, a), ref in SPECTRA.items():
        E = compute_spectrum(ModelParams(N, a))
        got = np.array([E[0], E[1], E[-2], E[-1]])
        err = float(np.max(np.abs(got - ref) / np.abs(ref)))
        out.append(Check(f"spectrum N={N} a={a}", err <= rtol, f"max rel err {err:.2e}"))
    return out


def verify_all(Nmax: int = 12, avals: Iterable = DEFAULT_AS) -> List[Check]:
    avals = list(avals)
    return spectrum_checks() + residual_matrix(Nmax=Nmax, avals=avals) + listed_element_checks(avals)
