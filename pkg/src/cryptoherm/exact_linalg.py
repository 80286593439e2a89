"""Fraction-exact Gaussian elimination on sparse rows.

Rows are dicts ``{column: Fraction}`` with no stored zeros.  Pivots are
chosen by smallest bit size to keep coefficient growth down.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Row = Dict[int, Fraction]


def _bits(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def rref(rows: Sequence[Row], ncols: int) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form; returns (pivot rows normalized to 1, pivot columns)."""
    pending = [dict(r) for r in rows if r]
    done: List[Row] = []
    pivcols: List[int] = []
    # column -> rows (pending) that touch it, rebuilt lazily
    for col in range(ncols):
        cands = [i for i, r in enumerate(pending) if col in r]
        if not cands:
            continue
        best = min(cands, key=lambda i: (_bits(pending[i][col]), len(pending[i])))
        prow = pending.pop(best)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for r in pending:
            f = r.get(col)
            if f is not None:
                _axpy(r, prow, -f)
        for r in done:
            f = r.get(col)
            if f is not None:
                _axpy(r, prow, -f)
        done.append(prow)
        pivcols.append(col)
        pending = [r for r in pending if r]
    return done, pivcols


def _axpy(target: Row, src: Row, f: Fraction) -> None:
    for c, v in src.items():
        nv = target.get(c, 0) + f * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def nullspace(rows: Sequence[Row], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : rows . x = 0}, one vector per free column (that entry is 1)."""
    red, pivcols = rref(rows, ncols)
    pivset = set(pivcols)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for prow, pc in zip(red, pivcols):
            v = prow.get(f)
            if v is not None:
                x[pc] = -v
        basis.append(x)
    return basis


def solve(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List[Fraction]]:
    """Solve A X = B exactly for square nonsingular A; raises ZeroDivisionError if singular."""
    n = len(A)
    m = len(B[0]) if B else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(x) for x in B[i]] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col] != 0 and (piv is None or _bits(M[r][col]) < _bits(M[piv][col])):
                piv = r
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M][:n] if m else []


def inverse(A: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(A)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve(A, eye)
