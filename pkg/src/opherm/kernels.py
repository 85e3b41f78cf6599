"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module is used. Setting the environment
variable ``OPHERM_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("OPHERM_PURE_PYTHON", "") not in ("", "0"):
    _backend = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _backend
        BACKEND = "cython"
    except ImportError:
        _backend = _pykernels
        BACKEND = "python"

wick_product = _backend.wick_product
hermite_values = _backend.hermite_values
wavefunction_values = _backend.wavefunction_values
gauss_hermite = _backend.gauss_hermite

__all__ = ["BACKEND", "wick_product", "hermite_values", "wavefunction_values", "gauss_hermite"]
