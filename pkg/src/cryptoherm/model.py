"""Laguerre-lattice Hamiltonian and general tridiagonal Hamiltonians.

Formulas are quoted with 1-based site indices n = 1..N; storage is
0-based, so ``diag[n-1]`` holds a_n, ``sup[n-1]`` holds c_n and
``sub[n-1]`` holds b_{n+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError
from .scalars import RATIONAL, Scalar, convert, from_json_scalar, is_exact, to_json_scalar


@dataclass(frozen=True)
class ModelParams:
    """Dimension ``N`` and coupling ``a`` of the truncated Laguerre model.

    ``a`` may be a ``Fraction`` (exact pipeline) or a float (sweeps).
    Any ``a`` avoiding the poles a = -1, ..., -(N-1) is accepted; the
    physically motivated regime is a > 0.
    """

    N: int
    a: Scalar

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise DimensionError(f"N must be a positive integer, got {self.N!r}")
        a = self.a
        if isinstance(a, int):
            object.__setattr__(self, "a", Fraction(a))
        for i in range(1, self.N):
            if self.a + i == 0:
                raise DomainError(f"a = {self.a} is a pole of the metric denominators")

    @property
    def exact(self) -> bool:
        return is_exact(self.a)

    def as_float(self) -> "ModelParams":
        return ModelParams(self.N, float(self.a))


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """Three-band matrix with diagonal a_n, super-diagonal c_n, sub-diagonal b_{n+1}."""

    diag: tuple
    sup: tuple
    sub: tuple

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(self.diag))
        object.__setattr__(self, "sup", tuple(self.sup))
        object.__setattr__(self, "sub", tuple(self.sub))
        n = len(self.diag)
        if n < 1:
            raise DimensionError("empty Hamiltonian")
        if len(self.sup) != n - 1 or len(self.sub) != n - 1:
            raise DimensionError(
                f"band lengths {len(self.sup)}, {len(self.sub)} do not match n-1 = {n - 1}"
            )

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for x in self.diag + self.sup + self.sub)

    def entry(self, i: int, j: int):
        """0-based element H[i, j]."""
        if i == j:
            return self.diag[i]
        if j == i + 1:
            return self.sup[i]
        if i == j + 1:
            return self.sub[j]
        return Fraction(0) if self.exact else 0.0

    def to_dense(self) -> np.ndarray:
        dtype = object if self.exact else float
        out = np.zeros((self.n, self.n), dtype=dtype)
        if self.exact:
            out[:] = Fraction(0)
        for i, x in enumerate(self.diag):
            out[i, i] = x
        for i, x in enumerate(self.sup):
            out[i, i + 1] = x
        for i, x in enumerate(self.sub):
            out[i + 1, i] = x
        return out

    def to_float(self) -> "TridiagonalHamiltonian":
        return TridiagonalHamiltonian(
            [float(x) for x in self.diag], [float(x) for x in self.sup], [float(x) for x in self.sub]
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "diag": [to_json_scalar(x) for x in self.diag],
            "super": [to_json_scalar(x) for x in self.sup],
            "sub": [to_json_scalar(x) for x in self.sub],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TridiagonalHamiltonian":
        h = cls(
            [from_json_scalar(x) for x in data["diag"]],
            [from_json_scalar(x) for x in data["super"]],
            [from_json_scalar(x) for x in data["sub"]],
        )
        if h.n != data["n"]:
            raise DimensionError(f"declared n={data['n']} but diag has {h.n} entries")
        return h


def build_laguerre_hamiltonian(params: ModelParams) -> TridiagonalHamiltonian:
    """Truncated Laguerre Hamiltonian H^(N)(a).

    Row n (1-based) reads ( -(a+n-1), a+2n-1, -n ), i.e.
    a_n = a + 2n - 1, c_n = -n, b_{n+1} = -(a + n).
    """
    if not isinstance(params, ModelParams):
        raise DimensionError("expected ModelParams")
    N, a = params.N, params.a
    backend = RATIONAL if params.exact else "float"
    diag = [a + 2 * n - 1 for n in range(1, N + 1)]
    sup = [convert(-n, backend) for n in range(1, N)]
    sub = [-(a + n) for n in range(1, N)]
    return TridiagonalHamiltonian(diag, sup, sub)


def conjugate_transpose(H: TridiagonalHamiltonian) -> TridiagonalHamiltonian:
    # entries are real, so conjugation is transposition
    return TridiagonalHamiltonian(H.diag, H.sub, H.sup)


def apply(H: TridiagonalHamiltonian, v: Sequence) -> list:
    """Matrix-vector product in O(N), generic over the scalar type of ``v``."""
    n = H.n
    if len(v) != n:
        raise DimensionError(f"vector of length {len(v)} for an {n}x{n} matrix")
    out = [H.diag[i] * v[i] for i in range(n)]
    for i in range(n - 1):
        out[i] += H.sup[i] * v[i + 1]
        out[i + 1] += H.sub[i] * v[i]
    return out
