"""Decision strategies and the name-keyed factory used by the harness."""

import numpy as np

from ..decisions import Schedules
from ..lda import LdaConfig
from .base import ProposalDraft, Strategy
from .greedy import GreedyStrategy
from .overpro import (
    OverproStrategy,
    good_bad_topics,
    significant_agents,
    significant_topics,
)
from .qlearn import QLearningStrategy, QState, q_update

STRATEGY_NAMES = ("overpro", "greedy", "qlearning")


def build_strategy(
    name: str,
    params: dict,
    agent_id: int,
    n: int,
    endowment: int,
    schedules: Schedules,
    rng: np.random.Generator,
    endowment_mean: float | None = None,
) -> Strategy:
    """Instantiate a strategy from its harness-level spec.

    The rng is the agent's own stream; OVERPRO draws its topic initialization
    from it. endowment_mean feeds the default corpus-size estimate
    (mean endowment times the iteration count).
    """
    params = dict(params or {})
    if name == "overpro":
        topics = int(params.pop("topics"))
        d_estimate = params.pop("d_estimate", None)
        if d_estimate is None:
            if endowment_mean is None:
                raise ValueError("overpro needs endowment_mean or an explicit d_estimate")
            d_estimate = max(1, round(endowment_mean * schedules.iterations))
        config = LdaConfig(
            topics=topics,
            alpha=params.pop("alpha", None) or 1.0 / topics,
            eta=params.pop("eta", None) or 1.0 / topics,
            tau0=float(params.pop("tau0")),
            kappa=float(params.pop("kappa")),
            d_estimate=int(d_estimate),
            gamma_tol=float(params.pop("gamma_tol", 1e-3)),
            max_e_iters=int(params.pop("max_e_iters", 100)),
            # seeded-random per-document gamma init: breaks the topic symmetry
            # that a fixed init leaves in place, while staying reproducible
            gamma_init=params.pop("gamma_init", "random"),
        )
        utility_scale = int(params.pop("utility_scale", 1))
        _reject_leftovers(name, params)
        return OverproStrategy(agent_id, n, endowment, schedules, config, rng, utility_scale)
    if name == "greedy":
        k = int(params.pop("k"))
        _reject_leftovers(name, params)
        return GreedyStrategy(agent_id, n, endowment, schedules, k)
    if name == "qlearning":
        delta_base = float(params.pop("delta_base", 0.95))
        _reject_leftovers(name, params)
        return QLearningStrategy(agent_id, n, endowment, schedules, delta_base)
    raise ValueError(f"unknown strategy {name!r}, expected one of {STRATEGY_NAMES}")


def _reject_leftovers(name: str, params: dict) -> None:
    if params:
        raise ValueError(f"unknown parameters for {name}: {sorted(params)}")


__all__ = [
    "ProposalDraft",
    "Strategy",
    "OverproStrategy",
    "GreedyStrategy",
    "QLearningStrategy",
    "QState",
    "q_update",
    "significant_topics",
    "good_bad_topics",
    "significant_agents",
    "build_strategy",
    "STRATEGY_NAMES",
]
