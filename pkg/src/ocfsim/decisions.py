"""Shared decision kernels: exact 0/1 knapsack, softmax sampling, schedules."""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels


@dataclass(frozen=True)
class KnapsackItem:
    value: float
    weight: int
    tag: object

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError("item weight must be >= 1")


def knapsack_01(items: list[KnapsackItem], capacity: int) -> set:
    """Exact 0/1 knapsack by weight-indexed DP.

    Returns the tags of a value-maximal subset with total weight <= capacity.
    Ties prefer smaller total weight, then the lexicographically smallest tag
    set, so the result is reproducible.
    """
    if capacity < 0:
        raise ValueError("capacity must be nonnegative")
    if not items or capacity == 0:
        return set()
    order = sorted(range(len(items)), key=lambda i: items[i].tag)
    values = np.array([items[i].value for i in order])
    weights = np.array([items[i].weight for i in order], dtype=np.int64)
    val, wt = kernels.knapsack_tables(values, weights, capacity)
    chosen = set()
    c = capacity
    for pos in range(len(order)):
        w = int(weights[pos])
        if w <= c:
            cand_v = val[pos + 1, c - w] + values[pos]
            cand_w = wt[pos + 1, c - w] + w
            if cand_v == val[pos, c] and cand_w == wt[pos, c]:
                chosen.add(items[order[pos]].tag)
                c -= w
    return chosen


def softmax_probs(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("softmax over an empty list")
    shifted = np.exp(v - v.max())
    return shifted / shifted.sum()


def softmax_sample(values, rng: np.random.Generator) -> int:
    """Index i with probability exp(v_i - max v) / sum_j exp(v_j - max v)."""
    probs = softmax_probs(values)
    u = rng.random()
    return int(np.searchsorted(np.cumsum(probs), u, side="right").clip(0, len(probs) - 1))


def _check_t(t: int, total: int) -> None:
    if not 1 <= t <= total:
        raise ValueError(f"iteration {t} outside [1, {total}]")


def z_schedule(t: int, total: int, start: float = 1.0, end: float = 1e-3) -> float:
    """Exploration share: quadratic decay from start at t=1 to end at t=total."""
    _check_t(t, total)
    if total == 1:
        return start
    frac = (t - 1) / (total - 1)
    return end + (start - end) * (1.0 - frac) ** 2


def c_schedule(t: int, total: int, start: float = 1.0, end: float = 0.5) -> float:
    """Responder strictness: linear decay from start at t=1 to end at t=total."""
    _check_t(t, total)
    if total == 1:
        return start
    return start + (end - start) * (t - 1) / (total - 1)


def delta_schedule(t: int, base: float) -> float:
    """Q-learning rate base**t for the global iteration t."""
    if t < 1:
        raise ValueError("iteration must be >= 1")
    if not 0.0 < base < 1.0:
        raise ValueError("base must lie in (0, 1)")
    return base**t


@dataclass(frozen=True)
class Schedules:
    iterations: int
    z_start: float = 1.0
    z_end: float = 1e-3
    c_start: float = 1.0
    c_end: float = 0.5
    delta_base: float = 0.95

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        for start, end in ((self.z_start, self.z_end), (self.c_start, self.c_end)):
            if not 0.0 < end <= start:
                raise ValueError("schedule ends must lie in (0, start]")

    def z(self, t: int) -> float:
        return z_schedule(t, self.iterations, self.z_start, self.z_end)

    def c(self, t: int) -> float:
        return c_schedule(t, self.iterations, self.c_start, self.c_end)

    def delta(self, t: int) -> float:
        return delta_schedule(t, self.delta_base)


def fraction_threshold(fraction: float, size: int) -> int:
    """Smallest member count satisfying 'at least fraction of size', resolving
    float fuzz at exact multiples toward the lower integer."""
    return math.ceil(fraction * size - 1e-9)
