"""Real symmetric (2k+1)-diagonal matrices stored by upper bands."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError
from .scalars import from_json_scalar, is_exact, to_json_scalar


@dataclass(frozen=True)
class BandedSymmetricMatrix:
    """Symmetric band matrix; ``bands[d][m]`` is theta_{m+1, m+1+d} (1-based).

    Only the upper bands d = 0..k are stored, so symmetry is structural
    and every element beyond the band is identically zero.
    """

    n: int
    bands: tuple

    def __post_init__(self):
        bands = tuple(tuple(b) for b in self.bands)
        object.__setattr__(self, "bands", bands)
        if self.n < 1:
            raise DimensionError("dimension must be positive")
        if not bands or len(bands) > self.n:
            raise DimensionError(f"band half-width {len(bands) - 1} impossible for n={self.n}")
        for d, band in enumerate(bands):
            if len(band) != self.n - d:
                raise DimensionError(f"band {d} has {len(band)} entries, expected {self.n - d}")

    @property
    def k(self) -> int:
        return len(self.bands) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for band in self.bands for x in band)

    @classmethod
    def zeros(cls, n: int, k: int, exact: bool = True) -> "BandedSymmetricMatrix":
        z = Fraction(0) if exact else 0.0
        return cls(n, [[z] * (n - d) for d in range(k + 1)])

    @classmethod
    def from_dense(cls, A, k: int) -> "BandedSymmetricMatrix":
        A = np.asarray(A)
        n = A.shape[0]
        return cls(n, [[A[m, m + d] for m in range(n - d)] for d in range(k + 1)])

    @classmethod
    def from_elements(cls, n: int, k: int, elements: dict, exact: bool = True):
        """Build from ``{(m, m'): value}`` with 1-based m <= m'."""
        z = Fraction(0) if exact else 0.0
        bands = [[z] * (n - d) for d in range(k + 1)]
        for (m, mp), value in elements.items():
            if mp < m:
                m, mp = mp, m
            d = mp - m
            if d > k or m < 1 or mp > n:
                raise DimensionError(f"element ({m}, {mp}) outside the band")
            bands[d][m - 1] = value
        return cls(n, bands)

    def element(self, m: int, mp: int):
        """theta_{m, m'} with 1-based indices; zero outside the band."""
        if not (1 <= m <= self.n and 1 <= mp <= self.n):
            raise IndexError((m, mp))
        if mp < m:
            m, mp = mp, m
        d = mp - m
        if d > self.k:
            return Fraction(0) if self.exact else 0.0
        return self.bands[d][m - 1]

    def to_dense(self) -> np.ndarray:
        exact = self.exact
        out = np.zeros((self.n, self.n), dtype=object if exact else float)
        if exact:
            out[:] = Fraction(0)
        for d, band in enumerate(self.bands):
            for m, x in enumerate(band):
                out[m, m + d] = x
                out[m + d, m] = x
        return out

    def to_float(self) -> "BandedSymmetricMatrix":
        return BandedSymmetricMatrix(self.n, [[float(x) for x in b] for b in self.bands])

    def band_array(self) -> np.ndarray:
        """Float ``(k+1, n)`` array, row d holding band d left-aligned and zero padded."""
        out = np.zeros((self.k + 1, self.n))
        for d, band in enumerate(self.bands):
            out[d, : self.n - d] = [float(x) for x in band]
        return out

    def widen(self, k: int) -> "BandedSymmetricMatrix":
        if k < self.k:
            raise DimensionError("cannot narrow a band matrix")
        z = Fraction(0) if self.exact else 0.0
        extra = [[z] * (self.n - d) for d in range(self.k + 1, k + 1)]
        return BandedSymmetricMatrix(self.n, list(self.bands) + extra)

    def scale(self, c) -> "BandedSymmetricMatrix":
        return BandedSymmetricMatrix(self.n, [[c * x for x in b] for b in self.bands])

    def __add__(self, other: "BandedSymmetricMatrix") -> "BandedSymmetricMatrix":
        if other.n != self.n:
            raise DimensionError("dimension mismatch")
        k = max(self.k, other.k)
        a, b = self.widen(k), other.widen(k)
        return BandedSymmetricMatrix(
            self.n, [[x + y for x, y in zip(ba, bb)] for ba, bb in zip(a.bands, b.bands)]
        )

    def __sub__(self, other: "BandedSymmetricMatrix") -> "BandedSymmetricMatrix":
        return self + other.scale(-1)

    def matvec(self, v: Sequence) -> list:
        n = self.n
        if len(v) != n:
            raise DimensionError("length mismatch")
        out = [self.bands[0][i] * v[i] for i in range(n)]
        for d in range(1, self.k + 1):
            band = self.bands[d]
            for m in range(n - d):
                out[m] += band[m] * v[m + d]
                out[m + d] += band[m] * v[m]
        return out

    def to_json(self) -> list:
        return [[to_json_scalar(x) for x in band] for band in self.bands]

    @classmethod
    def from_json(cls, n: int, bands: Iterable) -> "BandedSymmetricMatrix":
        return cls(n, [[from_json_scalar(x) for x in band] for band in bands])


def linear_combination(coeffs: Sequence, mats: Sequence[BandedSymmetricMatrix]):
    if len(coeffs) != len(mats) or not mats:
        raise DimensionError("need one coefficient per matrix")
    out = mats[0].scale(coeffs[0])
    for c, m in zip(coeffs[1:], mats[1:]):
        out = out + m.scale(c)
    return out
