"""Numba-jitted implementations of the hot kernels.

Loop order mirrors numpy_backend so that both paths agree: integer results
are identical, float results match to reassociation rounding.
"""

import math

import numpy as np
from numba import njit, vectorize


@njit(cache=True)
def _digamma_scalar(x):
    acc = 0.0
    while x < 6.0:
        acc -= 1.0 / x
        x += 1.0
    f = 1.0 / (x * x)
    tail = f * (-1.0 / 12.0 + f * (1.0 / 120.0 + f * (-1.0 / 252.0 + f * (
        1.0 / 240.0 + f * (-1.0 / 132.0 + f * (691.0 / 32760.0 + f * (-1.0 / 12.0)))))))
    return acc + math.log(x) - 0.5 / x + tail


@vectorize(["float64(float64)"], cache=True)
def _digamma_ufunc(x):
    return _digamma_scalar(x)


def digamma(x):
    """Digamma for positive scalars or arrays (see numpy_backend.digamma)."""
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise ValueError("digamma requires positive arguments")
    out = _digamma_ufunc(arr)
    return float(out) if arr.ndim == 0 else out


@njit(cache=True)
def rules_base_value(member_flat, offsets, sizes, values, pi, mask):
    total = 0.0
    n_rules = len(sizes)
    for r in range(n_rules):
        lo = offsets[r]
        hi = offsets[r + 1]
        ok = True
        for a in range(lo, hi):
            if not mask[member_flat[a]]:
                ok = False
                break
        if not ok:
            continue
        pi_sum = 0.0
        for a in range(lo, hi):
            pi_sum += pi[member_flat[a]]
        total += pi_sum / sizes[r] * values[r]
    return total


@njit(cache=True)
def knapsack_tables(values, weights, capacity):
    m = len(values)
    val = np.zeros((m + 1, capacity + 1))
    wt = np.zeros((m + 1, capacity + 1), dtype=np.int64)
    for i in range(m - 1, -1, -1):
        w_i = weights[i]
        for c in range(capacity + 1):
            bv = val[i + 1, c]
            bw = wt[i + 1, c]
            if w_i <= c:
                cv = val[i + 1, c - w_i] + values[i]
                cw = wt[i + 1, c - w_i] + w_i
                if cv > bv or (cv == bv and cw < bw):
                    bv = cv
                    bw = cw
            val[i, c] = bv
            wt[i, c] = bw
    return val, wt


@njit(cache=True)
def lda_estep_batch(lam, alpha, tol, max_iters, offsets, ids, cts, gamma0):
    K, V = lam.shape
    n_docs = len(offsets) - 1
    elog_beta = np.empty((K, V))
    for k in range(K):
        row_sum = 0.0
        for w in range(V):
            row_sum += lam[k, w]
        d_row = _digamma_scalar(row_sum)
        for w in range(V):
            elog_beta[k, w] = _digamma_scalar(lam[k, w]) - d_row
    gamma = gamma0.copy()
    sstats = np.zeros((K, V))
    eltheta = np.empty((n_docs, K))
    niters = np.zeros(n_docs, dtype=np.int64)
    elt = np.empty(K)
    exp_elt = np.empty(K)
    for d in range(n_docs):
        lo = offsets[d]
        hi = offsets[d + 1]
        nw = hi - lo
        phi = np.empty((nw, K))
        # exp(E[log beta]) for the document's words, hoisted out of the loop:
        # phi ~ exp(elt_k) * exp(eb_kw) needs only K fresh exps per iteration.
        exp_eb = np.empty((nw, K))
        for a in range(nw):
            w = ids[lo + a]
            for k in range(K):
                exp_eb[a, k] = math.exp(elog_beta[k, w])
        for it in range(max_iters):
            gsum = 0.0
            for k in range(K):
                gsum += gamma[d, k]
            d_gsum = _digamma_scalar(gsum)
            for k in range(K):
                elt[k] = _digamma_scalar(gamma[d, k]) - d_gsum
                exp_elt[k] = math.exp(elt[k])
            for a in range(nw):
                norm = 0.0
                for k in range(K):
                    p = exp_elt[k] * exp_eb[a, k]
                    phi[a, k] = p
                    norm += p
                norm += 1e-100
                for k in range(K):
                    phi[a, k] /= norm
            change = 0.0
            for k in range(K):
                gnew = alpha
                for a in range(nw):
                    gnew += cts[lo + a] * phi[a, k]
                change += abs(gnew - gamma[d, k])
                gamma[d, k] = gnew
            niters[d] = it + 1
            if change / K < tol:
                break
        for k in range(K):
            eltheta[d, k] = elt[k]
        for a in range(nw):
            w = ids[lo + a]
            for k in range(K):
                sstats[k, w] += cts[lo + a] * phi[a, k]
    return gamma, sstats, eltheta, niters
