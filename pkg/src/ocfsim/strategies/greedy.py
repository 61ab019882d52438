"""Greedy top-k: remember the k most valuable coalitions seen and re-propose
them, splitting the exploitation budget by softmax over their stored values."""

import math
from dataclasses import dataclass

import numpy as np

from ..decisions import KnapsackItem, Schedules, fraction_threshold, softmax_probs
from .base import ProposalDraft, Strategy, settle_responses


@dataclass
class TopRecord:
    contributions: dict[int, int]
    value: float
    seq: int


class GreedyStrategy(Strategy):
    name = "greedy"

    def __init__(self, agent_id: int, n: int, endowment: int, schedules: Schedules, k: int):
        super().__init__(agent_id, n, endowment, schedules)
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.records: list[TopRecord] = []
        self._seq = 0

    def observe(self, t, formed, rng):
        for coalition, value in formed:
            for record in self.records:
                if record.contributions == coalition.contributions:
                    record.value = float(value)
                    break
            else:
                self.records.append(
                    TopRecord(dict(coalition.contributions), float(value), self._seq)
                )
                self._seq += 1
        self.records.sort(key=lambda r: (-r.value, r.seq))
        del self.records[self.k :]

    def propose(self, t, rng):
        budget = self.exploitation_budget(t)
        drafts = []
        if budget >= 1 and self.records:
            weights = softmax_probs([r.value for r in self.records])
            raw = np.array(
                [r.contributions[self.agent_id] for r in self.records], dtype=np.float64
            ) * weights
            total = float(raw.sum())
            order = sorted(range(len(self.records)), key=lambda i: (-raw[i], self.records[i].seq))
            remaining = budget
            for i in order:
                if remaining < 1:
                    break
                record = self.records[i]
                offer = min(max(1, math.floor(budget * raw[i] / total)), remaining)
                mine = record.contributions[self.agent_id]
                demands = np.zeros(self.n, dtype=np.int64)
                for j in sorted(record.contributions):
                    if j == self.agent_id:
                        continue
                    ask = offer * (record.contributions[j] / mine) * rng.uniform(0.9, 1.1)
                    demands[j - 1] = max(1, math.floor(ask + 0.5))
                if not demands.any():
                    continue
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
            members = set(self.proposal_members(proposal, exclude=self.agent_id))
            demand = int(proposal.demands[self.agent_id - 1])
            need = fraction_threshold(1.0 - c_t, len(members))
            known = 0.0
            matched = False
            for record in self.records:
                overlap = sum(1 for m in members if m in record.contributions)
                if overlap >= need:
                    known += record.value
                    matched = True
            if matched and known > 0:
                total_r = proposal.offer + int(proposal.demands.sum())
                items.append(
                    KnapsackItem(value=known * demand / total_r, weight=demand, tag=proposal.id)
                )
            else:
                fallback.append((proposal.id, demand))
        return settle_responses(decisions, items, fallback, self.endowment, c_t, rng)
