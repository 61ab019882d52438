"""Two-level Q-learning: running value estimates per partner agent and per
coalition size, updated toward each observed coalition value with rate
delta_t = base**t."""

import math
from dataclasses import dataclass

import numpy as np

from ..decisions import KnapsackItem, Schedules, delta_schedule, softmax_sample
from ..rules import Coalition
from .base import ProposalDraft, Strategy, settle_responses


@dataclass
class QState:
    q_agents: dict[int, float]
    q_sizes: dict[int, float]


def q_update(state: QState, self_id: int, coalition: Coalition, value: float, delta: float) -> QState:
    """Move the partner values of every other member, and the size value of
    |C|-1, a delta step toward the observed coalition value."""
    for j in coalition.members:
        if j == self_id:
            continue
        state.q_agents[j] += delta * (value - state.q_agents[j])
    h = len(coalition.members) - 1
    state.q_sizes[h] += delta * (value - state.q_sizes[h])
    return state


class QLearningStrategy(Strategy):
    name = "qlearning"

    def __init__(
        self,
        agent_id: int,
        n: int,
        endowment: int,
        schedules: Schedules,
        delta_base: float = 0.95,
    ):
        super().__init__(agent_id, n, endowment, schedules)
        self.delta_base = delta_base
        self.qstate = QState(
            q_agents={int(j): 0.0 for j in self._others},
            q_sizes={h: 0.0 for h in range(1, n)},
        )

    def observe(self, t, formed, rng):
        delta = delta_schedule(t, self.delta_base)
        for coalition, value in formed:
            q_update(self.qstate, self.agent_id, coalition, float(value), delta)

    def propose(self, t, rng):
        drafts = []
        remaining = self.exploitation_budget(t)
        size_values = [self.qstate.q_sizes[h] for h in range(1, self.n)]
        while remaining >= 1:
            offer = int(rng.integers(1, remaining + 1))
            size = 1 + softmax_sample(size_values, rng)
            candidates = [int(j) for j in self._others]
            values = [self.qstate.q_agents[j] for j in candidates]
            demands = np.zeros(self.n, dtype=np.int64)
            for _ in range(size):
                pick = softmax_sample(values, rng)
                member = candidates.pop(pick)
                values.pop(pick)
                demands[member - 1] = max(1, math.floor(offer * rng.uniform(0.9, 1.1) + 0.5))
            drafts.append(ProposalDraft(offer=offer, demands=demands, kind="exploit"))
            remaining -= offer
        drafts.extend(self.exploration_drafts(t, rng))
        return drafts

    def respond(self, t, incoming, rng):
        c_t = self.schedules.c(t)
        decisions: dict[int, bool] = {}
        items: list[KnapsackItem] = []
        fallback: list[tuple[int, int]] = []
        for proposal in incoming:
            members = self.proposal_members(proposal, exclude=self.agent_id)
            demand = int(proposal.demands[self.agent_id - 1])
            strength = sum(self.qstate.q_agents[m] for m in members)
            if strength > 0:
                total_r = proposal.offer + int(proposal.demands.sum())
                items.append(
                    KnapsackItem(value=strength * demand / total_r, weight=demand, tag=proposal.id)
                )
            else:
                fallback.append((proposal.id, demand))
        return settle_responses(decisions, items, fallback, self.endowment, c_t, rng)
