"""Backend selection for the F_p kernels.

The compiled ``_core`` extension is used when importable; otherwise the
pure-Python ``_core_py`` module.  Set ``FROBSKEW_PURE=1`` to force the
fallback.
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("FROBSKEW_PURE", "") not in ("", "0"):
    _backend = _core_py
    BACKEND = "python"
else:
    try:
        from . import _core as _backend  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _backend = _core_py
        BACKEND = "python"

rref_modp = _backend.rref_modp
poly_mul_modp = _backend.poly_mul_modp
poly_divmod_modp = _backend.poly_divmod_modp

__all__ = ["BACKEND", "rref_modp", "poly_mul_modp", "poly_divmod_modp"]
