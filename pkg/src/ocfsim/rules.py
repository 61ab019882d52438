"""Relational-rule games: hidden collaboration structure and coalition values.

A game over agents 1..n holds a list of rules. Each rule names a member set A
and a value; it applies to a coalition C when A is contained in C's members,
contributing mean(r_{i,C}/r_i for i in A) * value to C's value. Contributions
are positive integers (a zero contribution means non-membership), so when
every rule member invests her full endowment the rule contributes exactly its
value.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels


@dataclass(frozen=True)
class RelationalRule:
    members: tuple[int, ...]
    value: float

    def __post_init__(self):
        if len(self.members) == 0:
            raise ValueError("rule member set must be non-empty")
        ordered = tuple(sorted(int(m) for m in self.members))
        if len(set(ordered)) != len(ordered):
            raise ValueError("rule members must be distinct")
        if ordered[0] < 1:
            raise ValueError("agent ids are 1-based")
        object.__setattr__(self, "members", ordered)
        object.__setattr__(self, "value", float(self.value))


@dataclass
class Coalition:
    """Contribution vector: agent id -> invested integer quantity (>= 1)."""

    contributions: dict[int, int]

    def __post_init__(self):
        clean = {}
        for agent, amount in self.contributions.items():
            agent = int(agent)
            if int(amount) != amount or int(amount) < 1:
                raise ValueError(
                    f"contribution of agent {agent} must be a positive integer, got {amount!r}"
                )
            if agent < 1:
                raise ValueError("agent ids are 1-based")
            clean[agent] = int(amount)
        if not clean:
            raise ValueError("coalition must have at least one member")
        self.contributions = clean

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(self.contributions))

    @property
    def total(self) -> int:
        return sum(self.contributions.values())

    def __contains__(self, agent: int) -> bool:
        return agent in self.contributions


@dataclass
class RuleGame:
    n: int
    endowments: dict[int, int]
    rules: list[RelationalRule]
    noise_prob: float = 0.0
    noise_sigma: float = 0.0
    _compiled: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one agent")
        self.endowments = {int(a): int(r) for a, r in self.endowments.items()}
        if set(self.endowments) != set(range(1, self.n + 1)):
            raise ValueError("endowments must cover agents 1..n exactly")
        if any(r < 1 for r in self.endowments.values()):
            raise ValueError("endowments must be >= 1")
        if not 0.0 <= self.noise_prob <= 1.0:
            raise ValueError("noise_prob must lie in [0, 1]")
        if self.noise_sigma < 0.0:
            raise ValueError("noise_sigma must be nonnegative")
        for rule in self.rules:
            if rule.members[-1] > self.n:
                raise ValueError(f"rule {rule} names an agent beyond n={self.n}")

    def endowment_array(self) -> np.ndarray:
        return self.compiled()[4]

    def compiled(self):
        """CSR view of the rule set plus the endowment vector, built lazily."""
        if self._compiled is None:
            sizes = np.array([len(r.members) for r in self.rules], dtype=np.int64)
            offsets = np.zeros(len(self.rules) + 1, dtype=np.int64)
            np.cumsum(sizes, out=offsets[1:])
            flat = np.empty(int(offsets[-1]), dtype=np.int64)
            pos = 0
            for rule in self.rules:
                for m in rule.members:
                    flat[pos] = m - 1
                    pos += 1
            values = np.array([r.value for r in self.rules], dtype=np.float64)
            endow = np.array(
                [self.endowments[a] for a in range(1, self.n + 1)], dtype=np.float64
            )
            self._compiled = (flat, offsets, sizes, values, endow)
        return self._compiled


def rule_applies(rule: RelationalRule, coalition: Coalition) -> bool:
    return all(m in coalition.contributions for m in rule.members)


def rule_value(rule: RelationalRule, coalition: Coalition, endowments: dict[int, int]) -> float:
    """Contribution of one applicable rule: mean invested fraction times value."""
    if not rule_applies(rule, coalition):
        raise ValueError(f"rule {rule} does not apply to {coalition}")
    pi_sum = 0.0
    for m in rule.members:
        pi = coalition.contributions[m] / endowments[m]
        if pi > 1.0:
            raise ValueError(
                f"agent {m} invests {coalition.contributions[m]} above endowment {endowments[m]}"
            )
        pi_sum += pi
    return pi_sum / len(rule.members) * rule.value


def _coalition_arrays(game: RuleGame, coalition: Coalition):
    endow = game.endowment_array()
    pi = np.zeros(game.n)
    mask = np.zeros(game.n, dtype=np.bool_)
    for agent, amount in coalition.contributions.items():
        if agent > game.n:
            raise ValueError(f"agent {agent} not in game of {game.n} agents")
        if amount > game.endowments[agent]:
            raise ValueError(
                f"agent {agent} invests {amount} above endowment {game.endowments[agent]}"
            )
        pi[agent - 1] = amount / endow[agent - 1]
        mask[agent - 1] = True
    return pi, mask


def base_coalition_value(game: RuleGame, coalition: Coalition) -> float:
    """Deterministic coalition value: sum over applicable rules, 0 if none."""
    pi, mask = _coalition_arrays(game, coalition)
    flat, offsets, sizes, values, _ = game.compiled()
    return float(kernels.rules_base_value(flat, offsets, sizes, values, pi, mask))


def realized_coalition_value(game: RuleGame, coalition: Coalition, rng: np.random.Generator) -> int:
    """Earned value: base value, perturbed with probability noise_prob by a
    Normal(0, noise_sigma^2) factor, floored to an integer."""
    value = base_coalition_value(game, coalition)
    if game.noise_prob > 0.0 and rng.random() < game.noise_prob:
        value *= rng.normal(0.0, game.noise_sigma)
    return int(np.floor(value))


def generate_random_game(
    n: int,
    rule_count: int,
    value_mean: float,
    value_sigma: float,
    endowment_low: int,
    endowment_high: int,
    max_rule_size: int,
    noise_prob: float,
    noise_sigma: float,
    rng: np.random.Generator,
    min_rule_size: int = 1,
    center_values: bool = False,
) -> RuleGame:
    """Random game: uniform integer endowments, rules with uniform sizes in
    {min_rule_size..max_rule_size}, members sampled without replacement,
    Normal values.

    center_values subtracts the sample mean from the rule values, so the full
    grand coalition at uniform investment is worth ~0: without it, the sign of
    the one random sum over all rule values dominates every strategy's welfare
    (invest-everything-with-everyone becomes a per-game money printer or
    furnace), drowning structure-level differences between strategies.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if rule_count < 1:
        raise ValueError("need at least one rule")
    if not 1 <= min_rule_size <= max_rule_size <= n:
        raise ValueError("need 1 <= min_rule_size <= max_rule_size <= n")
    if not 1 <= endowment_low <= endowment_high:
        raise ValueError("need 1 <= endowment_low <= endowment_high")
    if value_sigma < 0.0:
        raise ValueError("value_sigma must be nonnegative")
    endowments = {
        a: int(r)
        for a, r in zip(
            range(1, n + 1), rng.integers(endowment_low, endowment_high + 1, size=n)
        )
    }
    member_sets = []
    values = np.empty(rule_count)
    for r in range(rule_count):
        size = int(rng.integers(min_rule_size, max_rule_size + 1))
        member_sets.append(
            tuple(sorted(int(m) + 1 for m in rng.choice(n, size=size, replace=False)))
        )
        values[r] = rng.normal(value_mean, value_sigma)
    if center_values:
        values = values - values.mean() + value_mean
    rules = [RelationalRule(m, float(v)) for m, v in zip(member_sets, values)]
    return RuleGame(n, endowments, rules, noise_prob, noise_sigma)


def game_to_json(game: RuleGame) -> str:
    doc = {
        "n": game.n,
        "endowments": {str(a): game.endowments[a] for a in range(1, game.n + 1)},
        "noise_prob": game.noise_prob,
        "noise_sigma": game.noise_sigma,
        "rules": [{"members": list(r.members), "value": r.value} for r in game.rules],
    }
    return json.dumps(doc)


def game_from_json(text: str) -> RuleGame:
    doc = json.loads(text)
    return RuleGame(
        n=int(doc["n"]),
        endowments={int(a): int(r) for a, r in doc["endowments"].items()},
        rules=[RelationalRule(tuple(r["members"]), r["value"]) for r in doc["rules"]],
        noise_prob=float(doc["noise_prob"]),
        noise_sigma=float(doc["noise_sigma"]),
    )
