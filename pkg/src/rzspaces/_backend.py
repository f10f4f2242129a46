"""Kernel backend selection.

Kernels are written once in numba-compatible Python. They are compiled with
``numba.njit`` unless ``RZSPACES_NUMBA=0`` is set (or numba is missing), in
which case the identical source runs under CPython on numpy arrays.
"""
import os

_flag = os.environ.get("RZSPACES_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    def jit(func):
        return numba.njit(cache=True)(func)
else:
    def jit(func):
        return func

BACKEND = "numba" if USE_NUMBA else "numpy"
