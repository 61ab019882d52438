"""Pure-numpy implementations of the hot kernels.

Semantics must match ``numba_backend`` exactly where integers are involved
(knapsack tables, rule applicability) and to float rounding where sums are
reassociated (LDA E-step). Rule values are accumulated sequentially in rule
order so that full-investment coalitions reproduce the plain rule-value sum
bit for bit.
"""

import numpy as np

_EULER = 0.57721566490153286060


def digamma(x):
    """Digamma via argument-shift recurrence plus the asymptotic series.

    Accepts scalars or arrays of positive reals; relative accuracy is better
    than 1e-10 for arguments >= 1e-3.
    """
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).copy()
    if np.any(x <= 0.0):
        raise ValueError("digamma requires positive arguments")
    acc = np.zeros_like(x)
    while True:
        small = x < 6.0
        if not small.any():
            break
        acc[small] -= 1.0 / x[small]
        x[small] += 1.0
    f = 1.0 / (x * x)
    tail = f * (-1.0 / 12.0 + f * (1.0 / 120.0 + f * (-1.0 / 252.0 + f * (
        1.0 / 240.0 + f * (-1.0 / 132.0 + f * (691.0 / 32760.0 + f * (-1.0 / 12.0)))))))
    out = acc + np.log(x) - 0.5 / x + tail
    return float(out[0]) if scalar else out


def rules_base_value(member_flat, offsets, sizes, values, pi, mask):
    """Sum of applicable rule contributions for one coalition.

    member_flat/offsets/sizes/values describe the rule set in CSR form
    (members are 0-based agent indices, sorted within each rule). ``pi`` holds
    r_{i,C}/r_i per agent (0 for non-members) and ``mask`` the membership
    flags. A rule applies when every rule member is in the coalition; it then
    contributes mean-of-pi times its value.

    Accumulation is column-by-column over a padded member matrix so each
    rule's pi values add in member order, bit-identical to the jitted loop
    (reduceat does not guarantee within-segment ordering).
    """
    n_rules = len(sizes)
    if n_rules == 0:
        return 0.0
    n_agents = len(pi)
    width = int(sizes.max())
    padded = np.full((n_rules, width), n_agents, dtype=np.int64)
    rows = np.repeat(np.arange(n_rules), sizes)
    cols = np.arange(len(member_flat)) - np.repeat(offsets[:-1], sizes)
    padded[rows, cols] = member_flat
    pi_ext = np.append(pi, 0.0)
    mask_ext = np.append(mask, True)
    applies = np.ones(n_rules, dtype=bool)
    pi_sums = np.zeros(n_rules)
    for c in range(width):
        column = padded[:, c]
        applies &= mask_ext[column]
        pi_sums = pi_sums + pi_ext[column]
    if not applies.any():
        return 0.0
    terms = pi_sums[applies] / sizes[applies] * values[applies]
    total = 0.0
    for term in terms:
        total += term
    return total


def knapsack_tables(values, weights, capacity):
    """Suffix DP tables for 0/1 knapsack.

    val[i, c] is the best total value over items i.. with capacity c; wt[i, c]
    the smallest total weight achieving it. Ties prefer the smaller weight.
    """
    m = len(values)
    val = np.zeros((m + 1, capacity + 1))
    wt = np.zeros((m + 1, capacity + 1), dtype=np.int64)
    for i in range(m - 1, -1, -1):
        w_i = int(weights[i])
        bv = val[i + 1]
        bw = wt[i + 1]
        if w_i > capacity:
            val[i] = bv
            wt[i] = bw
            continue
        cv = np.empty(capacity + 1)
        cw = np.empty(capacity + 1, dtype=np.int64)
        cv[:w_i] = -np.inf
        cw[:w_i] = 0
        cv[w_i:] = val[i + 1, : capacity + 1 - w_i] + values[i]
        cw[w_i:] = wt[i + 1, : capacity + 1 - w_i] + w_i
        better = (cv > bv) | ((cv == bv) & (cw < bw))
        val[i] = np.where(better, cv, bv)
        wt[i] = np.where(better, cw, bw)
    return val, wt


def lda_estep_batch(lam, alpha, tol, max_iters, offsets, ids, cts, gamma0):
    """Variational E-step over a document batch.

    Documents are given in CSR form with unique word ids per document. Returns
    per-document gamma, the pooled sufficient statistics sum_d n_dw*phi_dwk,
    the last E[log theta] per document (from which phi can be reconstructed),
    and the iteration counts.
    """
    K, V = lam.shape
    n_docs = len(offsets) - 1
    elog_beta = digamma(lam) - digamma(lam.sum(axis=1))[:, None]
    gamma = gamma0.copy()
    sstats = np.zeros((K, V))
    eltheta = np.empty((n_docs, K))
    niters = np.zeros(n_docs, dtype=np.int64)
    for d in range(n_docs):
        lo, hi = offsets[d], offsets[d + 1]
        ids_d = ids[lo:hi]
        cts_d = cts[lo:hi]
        exp_eb = np.exp(elog_beta[:, ids_d])
        gam = gamma[d]
        phi = None
        elt = None
        for it in range(max_iters):
            elt = digamma(gam) - digamma(gam.sum())
            raw = np.exp(elt)[:, None] * exp_eb
            phi = raw / (raw.sum(axis=0) + 1e-100)
            gnew = alpha + phi @ cts_d
            change = np.abs(gnew - gam).mean()
            gamma[d] = gnew
            gam = gnew
            niters[d] = it + 1
            if change < tol:
                break
        eltheta[d] = elt
        sstats[:, ids_d] += phi * cts_d
    return gamma, sstats, eltheta, niters
