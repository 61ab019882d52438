"""Repeated overlapping-coalition-formation engine.

Each round: one uniformly drawn proposer drafts coalitions (an offer plus an
integer demand per named agent), every named responder answers each proposal,
and a coalition forms only under unanimous acceptance. Formed coalitions are
valued by the hidden rule game, payoffs split proportionally to contributions,
and each member observes only her own coalitions. All coalitions dissolve and
endowments replenish at the round's end.

Randomness is split into named streams derived from one master seed (proposer
draws, value noise, one stream per agent), so changing one agent's strategy
cannot shift anyone else's draws.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .decisions import Schedules
from .rules import Coalition, RuleGame, realized_coalition_value
from .strategies import Strategy, build_strategy


class ProtocolViolation(RuntimeError):
    """A strategy broke a feasibility rule the engine enforces."""


@dataclass
class Proposal:
    id: int
    proposer: int
    offer: int
    demands: np.ndarray
    kind: str = "exploit"

    def demanded_agents(self) -> list[int]:
        return [int(j) + 1 for j in np.nonzero(self.demands)[0]]


@dataclass
class FormedCoalition:
    coalition: Coalition
    proposal_id: int
    value: int
    payoffs: dict[int, float]


@dataclass
class RoundRecord:
    t: int
    proposer: int
    n_proposals: int
    formed: list[FormedCoalition]
    utilities: dict[int, float]
    proposals: list[Proposal] | None = None
    decisions: dict[int, dict[int, bool]] | None = None


@dataclass
class GameLog:
    n: int
    iterations: int
    rounds: list[RoundRecord]
    social_welfare: float = 0.0
    participation: float = 0.0
    efficiency: float = 0.0
    invested: int = 0
    elapsed_s: float = 0.0


@dataclass
class GameConfig:
    game: RuleGame
    iterations: int
    strategy: str
    params: dict = field(default_factory=dict)
    master_seed: int = 0
    record: str = "formed"
    schedules: Schedules | None = None


def rng_streams(master_seed: int, n: int):
    """(proposer, value-noise, per-agent) generators split from one seed."""
    children = np.random.SeedSequence(master_seed).spawn(2 + n)
    proposer_rng = np.random.default_rng(children[0])
    value_rng = np.random.default_rng(children[1])
    agent_rngs = [np.random.default_rng(c) for c in children[2:]]
    return proposer_rng, value_rng, agent_rngs


def select_proposer(n: int, rng: np.random.Generator) -> int:
    if n < 2:
        raise ValueError("need at least two agents to have responders")
    return int(rng.integers(1, n + 1))


def allocate_payoffs(value: int, coalition: Coalition) -> dict[int, float]:
    """Split the coalition value proportionally to contributions."""
    total = coalition.total
    return {agent: value * amount / total for agent, amount in coalition.contributions.items()}


def resolve(
    proposals: list[Proposal], decisions: dict[int, dict[int, bool]]
) -> list[tuple[Proposal, Coalition]]:
    """Coalitions from unanimously accepted proposals, in proposal order."""
    out = []
    for proposal in proposals:
        demanded = proposal.demanded_agents()
        if all(decisions[proposal.id][j] for j in demanded):
            contributions = {j: int(proposal.demands[j - 1]) for j in demanded}
            contributions[proposal.proposer] = proposal.offer
            out.append((proposal, Coalition(contributions)))
    return out


def _validated_proposals(drafts, proposer: int, game: RuleGame) -> list[Proposal]:
    proposals = []
    total_offer = 0
    for i, draft in enumerate(drafts):
        demands = np.asarray(draft.demands, dtype=np.int64)
        offer = int(draft.offer)
        if demands.shape != (game.n,):
            raise ProtocolViolation(f"proposal {i}: demands vector must have length {game.n}")
        if offer < 1:
            raise ProtocolViolation(f"proposal {i}: offer must be >= 1")
        if demands[proposer - 1] != 0:
            raise ProtocolViolation(f"proposal {i}: proposer cannot demand from herself")
        if (demands < 0).any() or not demands.any():
            raise ProtocolViolation(f"proposal {i}: demands must be nonnegative with one positive entry")
        total_offer += offer
        proposals.append(
            Proposal(id=i, proposer=proposer, offer=offer, demands=demands, kind=draft.kind)
        )
    if total_offer > game.endowments[proposer]:
        raise ProtocolViolation(
            f"proposer {proposer} offered {total_offer} above endowment {game.endowments[proposer]}"
        )
    return proposals


def run_iteration(
    t: int,
    game: RuleGame,
    strategies: list[Strategy],
    proposer_rng: np.random.Generator,
    value_rng: np.random.Generator,
    agent_rngs: list[np.random.Generator],
    record_full: bool = False,
) -> RoundRecord:
    n = game.n
    proposer = select_proposer(n, proposer_rng)
    drafts = strategies[proposer - 1].propose(t, agent_rngs[proposer - 1])
    proposals = _validated_proposals(drafts, proposer, game)

    # Route each proposal to its demanded agents; infeasible demands are
    # rejected on the agent's behalf before her strategy sees them.
    inboxes: dict[int, list[Proposal]] = {}
    decisions: dict[int, dict[int, bool]] = {p.id: {} for p in proposals}
    for proposal in proposals:
        for j in proposal.demanded_agents():
            if proposal.demands[j - 1] > game.endowments[j]:
                decisions[proposal.id][j] = False
            else:
                inboxes.setdefault(j, []).append(proposal)

    for j in sorted(inboxes):
        inbox = inboxes[j]
        answers = strategies[j - 1].respond(t, inbox, agent_rngs[j - 1])
        accepted_total = 0
        for proposal in inbox:
            if proposal.id not in answers:
                raise ProtocolViolation(f"agent {j} left proposal {proposal.id} undecided")
            accept = bool(answers[proposal.id])
            decisions[proposal.id][j] = accept
            if accept:
                accepted_total += int(proposal.demands[j - 1])
        if accepted_total > game.endowments[j]:
            raise ProtocolViolation(
                f"agent {j} accepted {accepted_total} above endowment {game.endowments[j]}"
            )

    formed = []
    for proposal, coalition in resolve(proposals, decisions):
        value = realized_coalition_value(game, coalition, value_rng)
        formed.append(
            FormedCoalition(
                coalition=coalition,
                proposal_id=proposal.id,
                value=value,
                payoffs=allocate_payoffs(value, coalition),
            )
        )

    observations: dict[int, list[tuple[Coalition, int]]] = {}
    utilities: dict[int, float] = {}
    for fc in formed:
        for agent in fc.coalition.members:
            observations.setdefault(agent, []).append((fc.coalition, fc.value))
            utilities[agent] = utilities.get(agent, 0.0) + fc.payoffs[agent]
    for agent in range(1, n + 1):
        strategies[agent - 1].observe(t, observations.get(agent, []), agent_rngs[agent - 1])

    return RoundRecord(
        t=t,
        proposer=proposer,
        n_proposals=len(proposals),
        formed=formed,
        utilities=utilities,
        proposals=proposals if record_full else None,
        decisions=decisions if record_full else None,
    )


def run_rounds(
    game: RuleGame,
    strategies: list[Strategy],
    iterations: int,
    streams,
    record: str = "formed",
    hook=None,
) -> GameLog:
    """Drive a full game with pre-built strategies.

    `streams` is the (proposer, value, per-agent) tuple from rng_streams; the
    same tuple must have been used to build the strategies so that their
    initialization draws and in-game draws come from one stream per agent.
    `hook(t, strategies)`, when given, runs after each round; the topic-dump
    command and the structure-recovery checks use it to snapshot agent state.
    """
    if record not in ("formed", "full"):
        raise ValueError("record must be 'formed' or 'full'")
    if len(strategies) != game.n:
        raise ValueError("need exactly one strategy per agent")
    proposer_rng, value_rng, agent_rngs = streams
    rounds = []
    started = time.perf_counter()
    for t in range(1, iterations + 1):
        rounds.append(
            run_iteration(
                t, game, strategies, proposer_rng, value_rng, agent_rngs,
                record_full=(record == "full"),
            )
        )
        if hook is not None:
            hook(t, strategies)
    elapsed = time.perf_counter() - started

    welfare = 0.0
    memberships = 0
    invested = 0
    for rec in rounds:
        for fc in rec.formed:
            welfare += fc.value
            memberships += len(fc.coalition.members)
            invested += fc.coalition.total
    denominator = game.n * iterations
    return GameLog(
        n=game.n,
        iterations=iterations,
        rounds=rounds,
        social_welfare=welfare,
        participation=memberships / denominator if denominator else 0.0,
        efficiency=welfare / invested if invested else 0.0,
        invested=invested,
        elapsed_s=elapsed,
    )


def build_strategies(config: GameConfig, agent_rngs) -> list[Strategy]:
    schedules = config.schedules or Schedules(iterations=config.iterations)
    endowment_mean = float(np.mean(list(config.game.endowments.values())))
    return [
        build_strategy(
            config.strategy,
            config.params,
            agent_id=a,
            n=config.game.n,
            endowment=config.game.endowments[a],
            schedules=schedules,
            rng=agent_rngs[a - 1],
            endowment_mean=endowment_mean,
        )
        for a in range(1, config.game.n + 1)
    ]


def run_game(config: GameConfig, hook=None) -> GameLog:
    """Build the homogeneous strategy population and run the full game."""
    streams = rng_streams(config.master_seed, config.game.n)
    strategies = build_strategies(config, streams[2])
    return run_rounds(
        config.game, strategies, config.iterations, streams,
        record=config.record, hook=hook,
    )
