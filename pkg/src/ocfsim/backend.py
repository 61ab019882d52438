"""Numeric backend selection.

The hot kernels (rule valuation, knapsack tables, LDA E-step) exist in two
equivalent implementations: numba-jitted loops and pure numpy. The active one
is chosen once at import time from the OCFSIM_BACKEND environment variable:

    OCFSIM_BACKEND=auto    use numba when importable, else numpy (default)
    OCFSIM_BACKEND=numba   require numba, fail loudly if missing
    OCFSIM_BACKEND=numpy   force the pure-numpy path

``benchmarks/bench_kernels.py`` times the two side by side.
"""

import os

_CHOICES = ("auto", "numba", "numpy")


def _probe_numba() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


_requested = os.environ.get("OCFSIM_BACKEND", "auto").strip().lower()
if _requested not in _CHOICES:
    raise RuntimeError(
        f"OCFSIM_BACKEND must be one of {_CHOICES}, got {_requested!r}"
    )

if _requested == "numpy":
    USE_NUMBA = False
elif _requested == "numba":
    if not _probe_numba():
        raise RuntimeError("OCFSIM_BACKEND=numba but numba is not importable")
    USE_NUMBA = True
else:
    USE_NUMBA = _probe_numba()

BACKEND = "numba" if USE_NUMBA else "numpy"
