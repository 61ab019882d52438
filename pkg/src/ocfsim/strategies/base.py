"""Strategy interface and machinery shared by all three decision methods.

A strategy lives inside one agent: propose() drafts coalitions as the round's
proposer, respond() answers the proposals that name the agent, observe()
digests the agent's own formed coalitions. All randomness flows through the
rng argument supplied by the engine, so runs are reproducible.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..decisions import KnapsackItem, Schedules, knapsack_01


@dataclass
class ProposalDraft:
    offer: int
    demands: np.ndarray
    kind: str = "exploit"


class Strategy:
    name = "base"

    def __init__(self, agent_id: int, n: int, endowment: int, schedules: Schedules):
        self.agent_id = agent_id
        self.n = n
        self.endowment = endowment
        self.schedules = schedules
        self._others = np.array(
            [a for a in range(1, n + 1) if a != agent_id], dtype=np.int64
        )

    def propose(self, t: int, rng: np.random.Generator) -> list[ProposalDraft]:
        raise NotImplementedError

    def respond(self, t: int, incoming: list, rng: np.random.Generator) -> dict[int, bool]:
        raise NotImplementedError

    def observe(self, t: int, formed: list, rng: np.random.Generator) -> None:
        pass

    # -- shared helpers -------------------------------------------------

    def exploration_count(self, t: int) -> int:
        return math.floor(self.endowment * self.schedules.z(t))

    def exploitation_budget(self, t: int) -> int:
        """ceil(endowment * (1 - z_t)), written as the exact complement of the
        exploration spend so the two can never overcommit the endowment."""
        return self.endowment - self.exploration_count(t)

    def exploration_drafts(
        self, t: int, rng: np.random.Generator, max_size: int | None = None
    ) -> list[ProposalDraft]:
        """Random coalitions offering (and demanding) the minimum quantity 1.

        Sizes are uniform over {1..n-1} unless capped by max_size.
        """
        drafts = []
        top = self.n - 1 if max_size is None else min(max_size, self.n - 1)
        for _ in range(self.exploration_count(t)):
            size = int(rng.integers(1, top + 1))
            members = rng.choice(self._others, size=size, replace=False)
            demands = np.zeros(self.n, dtype=np.int64)
            demands[members - 1] = 1
            drafts.append(ProposalDraft(offer=1, demands=demands, kind="explore"))
        return drafts

    @staticmethod
    def proposal_members(proposal, exclude: int) -> list[int]:
        """Members of the proposed coalition (proposer plus demanded agents)
        other than `exclude`, ascending."""
        members = [int(j) + 1 for j in np.nonzero(proposal.demands)[0]]
        if proposal.proposer != exclude:
            members.append(proposal.proposer)
        members = [m for m in members if m != exclude]
        return sorted(members)


def settle_responses(
    decisions: dict[int, bool],
    items: list[KnapsackItem],
    fallback: list[tuple[int, int]],
    capacity: int,
    c_t: float,
    rng: np.random.Generator,
) -> dict[int, bool]:
    """Accept the knapsack solution over `items`, reject the other items, then
    walk `fallback` (proposal id, demand) in order: a demand of 1 is accepted
    while capacity remains, larger demands with probability c_t."""
    used = 0
    if items:
        take = knapsack_01(items, capacity)
        for item in items:
            ok = item.tag in take
            decisions[item.tag] = ok
            if ok:
                used += item.weight
    leftover = capacity - used
    for pid, demand in fallback:
        if demand > leftover:
            decisions[pid] = False
        elif demand == 1:
            decisions[pid] = True
            leftover -= 1
        elif rng.random() < c_t:
            decisions[pid] = True
            leftover -= demand
        else:
            decisions[pid] = False
    return decisions
