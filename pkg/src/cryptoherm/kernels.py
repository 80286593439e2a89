"""Hot float kernels, compiled when available.

The Cython extension ``cryptoherm._core`` is imported if it was built;
otherwise the pure-Python ``_core_py`` is used.  Set
``CRYPTOHERM_PURE_PYTHON=1`` to force the fallback.  Exact (``Fraction``)
inputs always go through ``_core_py``, whose loops are type-generic.
"""
from __future__ import annotations

import os

from . import _core_py

_compiled = None
if os.environ.get("CRYPTOHERM_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _core as _compiled
    except ImportError:
        _compiled = None

impl = _compiled if _compiled is not None else _core_py
BACKEND = "cython" if _compiled is not None else "python"

laguerre_table = impl.laguerre_table
banded_ldlt = impl.banded_ldlt
tridiag_matvec = impl.tridiag_matvec
dieudonne_maxnorm = impl.dieudonne_maxnorm


def available_implementations() -> dict:
    out = {"python": _core_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
