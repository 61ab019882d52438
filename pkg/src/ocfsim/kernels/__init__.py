"""Backend-dispatched numeric kernels (see ocfsim.backend)."""

from ..backend import BACKEND, USE_NUMBA

if USE_NUMBA:
    from . import numba_backend as _impl
else:
    from . import numpy_backend as _impl

digamma = _impl.digamma
rules_base_value = _impl.rules_base_value
knapsack_tables = _impl.knapsack_tables
lda_estep_batch = _impl.lda_estep_batch

__all__ = [
    "BACKEND",
    "digamma",
    "rules_base_value",
    "knapsack_tables",
    "lda_estep_batch",
]
