"""Bag-of-words encoding of formed coalitions.

The vocabulary has n+2 words: ids 0..n-1 are the contribution words of agents
1..n, id n means gain, id n+1 means loss. A formed coalition with earned value
u becomes one document: each member's word appears as often as her invested
quantity, and the gain (loss) word appears |u| times for positive (negative)
u. Zero utility writes no utility word.
"""

import math
from dataclasses import dataclass

import numpy as np

from .rules import Coalition


@dataclass(frozen=True)
class Vocabulary:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one agent")

    @property
    def size(self) -> int:
        return self.n + 2

    @property
    def gain_id(self) -> int:
        return self.n

    @property
    def loss_id(self) -> int:
        return self.n + 1

    def label(self, word_id: int) -> str:
        if 0 <= word_id < self.n:
            return f"ag{word_id + 1}"
        if word_id == self.gain_id:
            return "gain"
        if word_id == self.loss_id:
            return "loss"
        raise ValueError(f"word id {word_id} outside vocabulary of size {self.size}")

    def labels(self) -> list[str]:
        return [self.label(w) for w in range(self.size)]


@dataclass
class CoalitionDocument:
    """Sparse word counts; ids are unique and sorted ascending."""

    word_ids: np.ndarray
    counts: np.ndarray

    @property
    def length(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[int, int]:
        return {int(w): int(c) for w, c in zip(self.word_ids, self.counts)}


def encode(
    coalition: Coalition, earned: int, vocab: Vocabulary, utility_scale: int = 1
) -> CoalitionDocument:
    """One document for one formed coalition with floored earned value.

    utility_scale > 1 divides |earned| (ceiling, floor of 1) to keep utility
    word counts moderate when values run large.
    """
    if utility_scale < 1:
        raise ValueError("utility_scale must be >= 1")
    ids = []
    cts = []
    for agent in coalition.members:
        if agent > vocab.n:
            raise ValueError(f"agent {agent} outside vocabulary for n={vocab.n}")
        ids.append(agent - 1)
        cts.append(coalition.contributions[agent])
    if earned > 0:
        ids.append(vocab.gain_id)
        cts.append(max(1, math.ceil(earned / utility_scale)))
    elif earned < 0:
        ids.append(vocab.loss_id)
        cts.append(max(1, math.ceil(-earned / utility_scale)))
    return CoalitionDocument(
        word_ids=np.array(ids, dtype=np.int64), counts=np.array(cts, dtype=np.int64)
    )


def decode(doc: CoalitionDocument, vocab: Vocabulary) -> tuple[Coalition, int]:
    """Inverse of encode at utility_scale 1: contribution vector and earned value."""
    contributions = {}
    earned = 0
    for w, c in zip(doc.word_ids, doc.counts):
        w = int(w)
        c = int(c)
        if w < vocab.n:
            contributions[w + 1] = c
        elif w == vocab.gain_id:
            earned = c
        elif w == vocab.loss_id:
            earned = -c
        else:
            raise ValueError(f"word id {w} outside vocabulary")
    return Coalition(contributions), earned


def batch_for_agent(
    agent: int,
    formed: list[tuple[Coalition, int]],
    vocab: Vocabulary,
    utility_scale: int = 1,
) -> list[CoalitionDocument]:
    """Documents for the coalitions the agent joined this round, in order."""
    docs = []
    for coalition, earned in formed:
        if agent not in coalition:
            raise ValueError(f"agent {agent} is not a member of {coalition}")
        docs.append(encode(coalition, earned, vocab, utility_scale))
    return docs


def dump_corpus(docs: list[CoalitionDocument], path) -> None:
    """One line per document as 'wordid:count' pairs, for offline inspection."""
    with open(path, "w") as fh:
        for doc in docs:
            fh.write(" ".join(f"{int(w)}:{int(c)}" for w, c in zip(doc.word_ids, doc.counts)))
            fh.write("\n")
