"""OVERPRO: coalition decisions driven by a per-agent streaming topic model.

Formed coalitions are read back as documents; the learned topics are split
into Good (gain-dominant) and Bad (loss-dominant) ones and each topic's
significant agents are the candidates that stand out against the mean agent
probability. Proposals target Good topics, responses veto coalitions that a
Bad topic explains and solve a knapsack over the ones a Good topic supports.
"""

import math

import numpy as np

from .. import lda
from ..decisions import KnapsackItem, Schedules, fraction_threshold
from ..documents import Vocabulary, batch_for_agent
from ..lda import LdaConfig, TopicMatrix
from .base import ProposalDraft, Strategy, settle_responses


def significant_topics(topic_matrix: TopicMatrix, epsilon: float) -> set[int]:
    """Topics whose |gain - loss| probability gap exceeds epsilon. The gain
    and loss words are the last two vocabulary entries."""
    beta = topic_matrix.beta
    gap = np.abs(beta[:, -2] - beta[:, -1])
    return set(np.nonzero(gap > epsilon)[0].tolist())


def good_bad_topics(topic_matrix: TopicMatrix, epsilon: float) -> tuple[set[int], set[int]]:
    beta = topic_matrix.beta
    significant = significant_topics(topic_matrix, epsilon)
    gap = beta[:, -2] - beta[:, -1]
    good = {k for k in significant if gap[k] > 0}
    bad = {k for k in significant if gap[k] < 0}
    return good, bad


def significant_agents(beta_row: np.ndarray, self_id: int) -> set[int]:
    """Agents whose word probability in the topic exceeds mean + population
    std of all n agent words (the row's last two entries are gain/loss and
    are ignored); the owner is never her own significant agent."""
    agent_probs = beta_row[:-2]
    cut = agent_probs.mean() + agent_probs.std()
    picked = np.nonzero(agent_probs > cut)[0] + 1
    return {int(a) for a in picked if int(a) != self_id}


class OverproStrategy(Strategy):
    name = "overpro"

    def __init__(
        self,
        agent_id: int,
        n: int,
        endowment: int,
        schedules: Schedules,
        lda_config: LdaConfig,
        rng: np.random.Generator,
        utility_scale: int = 1,
    ):
        super().__init__(agent_id, n, endowment, schedules)
        self.vocab = Vocabulary(n)
        self.lda_config = lda_config
        self.state = lda.init_state(lda_config, self.vocab.size, rng)
        self.epsilon = 1.0 / (n + 2)
        self.utility_scale = utility_scale
        self._cache = None

    # -- topic bookkeeping ----------------------------------------------

    def topic_matrix(self) -> TopicMatrix:
        return lda.topics(self.state)

    def _topic_view(self):
        """(beta, gain-loss gap, sorted good list, sorted bad list, SA sets)."""
        if self._cache is None:
            tm = self.topic_matrix()
            beta = tm.beta
            gap = beta[:, -2] - beta[:, -1]
            good, bad = good_bad_topics(tm, self.epsilon)
            sa = {
                k: tuple(sorted(significant_agents(beta[k], self.agent_id)))
                for k in good | bad
            }
            self._cache = (beta, gap, sorted(good), sorted(bad), sa)
        return self._cache

    # -- protocol hooks ---------------------------------------------------

    def observe(self, t, formed, rng):
        if not formed:
            return
        docs = batch_for_agent(self.agent_id, formed, self.vocab, self.utility_scale)
        self.state = lda.update(self.state, self.lda_config, docs, rng)
        self._cache = None

    def propose(self, t, rng):
        beta, gap, good, _, sa = self._topic_view()
        budget = self.exploitation_budget(t)
        drafts = []
        if budget >= 1 and good:
            self_idx = self.agent_id - 1
            scored = []
            for k in good:
                if not sa[k]:
                    continue
                scored.append((beta[k, self_idx] * gap[k], k))
            total = sum(s for s, _ in scored)
            if scored and total > 0:
                scored.sort(key=lambda pair: (-pair[0], pair[1]))
                remaining = budget
                for score, k in scored:
                    if remaining < 1:
                        break
                    offer = min(max(1, math.floor(budget * score / total)), remaining)
                    demands = np.zeros(self.n, dtype=np.int64)
                    for j in sa[k]:
                        ask = offer * beta[k, j - 1] / beta[k, self_idx]
                        demands[j - 1] = max(1, math.floor(ask + 0.5))
                    drafts.append(ProposalDraft(offer=offer, demands=demands, kind="exploit"))
                    remaining -= offer
        drafts.extend(self.exploration_drafts(t, rng))
        return drafts

    def respond(self, t, incoming, rng):
        _, gap, good, bad, sa = self._topic_view()
        c_t = self.schedules.c(t)
        decisions: dict[int, bool] = {}
        items: list[KnapsackItem] = []
        fallback: list[tuple[int, int]] = []
        for proposal in incoming:
            members = self.proposal_members(proposal, exclude=self.agent_id)
            demand = int(proposal.demands[self.agent_id - 1])
            reject_at = fraction_threshold(c_t, len(members))
            if any(
                sum(1 for m in members if m in sa[k]) >= reject_at for k in bad
            ):
                decisions[proposal.id] = False
                continue
            match_at = fraction_threshold(1.0 - c_t, len(members))
            best_gap = 0.0
            matched = False
            for k in good:
                if sum(1 for m in members if m in sa[k]) >= match_at and gap[k] > best_gap:
                    best_gap = gap[k]
                    matched = True
            if matched:
                total_r = proposal.offer + int(proposal.demands.sum())
                items.append(
                    KnapsackItem(value=demand / total_r * best_gap, weight=demand, tag=proposal.id)
                )
            else:
                fallback.append((proposal.id, demand))
        return settle_responses(decisions, items, fallback, self.endowment, c_t, rng)
