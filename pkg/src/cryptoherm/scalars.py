"""Scalar backends: exact rationals (``fractions.Fraction``) and IEEE doubles.

Every matrix type in the package is generic over the scalar it stores.
Integers are promoted to ``Fraction`` on the exact path so that no
operation ever rounds.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def parse_scalar(text: str, backend: str = FLOAT) -> Scalar:
    """Parse ``"3"``, ``"5/2"`` or ``"2.5"`` into the requested backend.

    Decimal strings are read exactly on the rational backend, so
    ``parse_scalar("0.1", "rational") == Fraction(1, 10)``.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    text = text.strip()
    if backend == RATIONAL:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {text!r}") from exc
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def convert(x, backend: str) -> Scalar:
    if backend == RATIONAL:
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ValueError("non-finite value has no rational form")
            return Fraction(x)
        return Fraction(x)
    return float(x)


def backend_of(*values) -> str:
    """Rational only if every value is exact; one float makes it float."""
    return RATIONAL if all(is_exact(v) for v in values) else FLOAT


def to_json_scalar(x):
    """Fractions become canonical ``"p/q"`` strings, floats stay numbers."""
    if is_exact(x):
        return str(Fraction(x))
    return float(x)


def from_json_scalar(x) -> Scalar:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


def rising_product(a, m: int):
    """Return prod_{i=1}^{m} (a + i); the empty product (m <= 0) is 1."""
    out = Fraction(1) if is_exact(a) else 1.0
    for i in range(1, m + 1):
        out *= a + i
    return out


def max_abs(values: Iterable[Scalar]):
    best = 0
    for v in values:
        if abs(v) > best:
            best = abs(v)
    return best
