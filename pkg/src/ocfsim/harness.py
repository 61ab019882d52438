"""Experiment orchestration: seeded batches of games, metrics, persistence.

A run grid is the cross product of strategy cohorts and seeds. The hidden rule
game for a given seed is shared by every cohort, so strategies are compared on
identical environments. metrics.csv carries one row per run with a fixed
column order; floats are written with 6 significant digits so reruns are
byte-identical (timing aside).
"""

import json
import multiprocessing
import os
from dataclasses import dataclass

import numpy as np

from .documents import Vocabulary
from .protocol import GameConfig, run_game
from .rules import RuleGame, generate_random_game
from .strategies import STRATEGY_NAMES

METRICS_HEADER = "run_id,strategy,params,sw,participation,efficiency,time_s"

# Entropy tag separating game generation from the protocol streams that are
# seeded with the bare run seed.
_GAME_STREAM_TAG = 0x47414D45


@dataclass
class ExperimentConfig:
    n: int
    iterations: int
    rule_count: int
    cohorts: list[dict]
    runs: int
    base_seed: int = 0
    seeds: list[int] | None = None
    value_mean: float = 0.0
    value_sigma: float = 100.0
    endowment_low: int = 475
    endowment_high: int = 525
    max_rule_size: int = 4
    min_rule_size: int = 1
    noise_prob: float = 0.05
    noise_sigma: float = 5.0
    center_rule_values: bool = True
    record_rounds: bool = False

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.cohorts:
            raise ValueError("need at least one cohort")
        for cohort in self.cohorts:
            if cohort.get("strategy") not in STRATEGY_NAMES:
                raise ValueError(
                    f"cohort strategy must be one of {STRATEGY_NAMES}: {cohort}"
                )
        if self.seeds is not None and len(self.seeds) != self.runs:
            raise ValueError("seeds list must have exactly `runs` entries")

    def run_seeds(self, seed_offset: int = 0) -> list[int]:
        base = self.seeds if self.seeds is not None else [
            self.base_seed + i for i in range(self.runs)
        ]
        return [s + seed_offset for s in base]

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            doc = json.load(fh)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)


@dataclass
class MetricsRow:
    run_id: str
    strategy: str
    params: str
    sw: float
    participation: float
    efficiency: float
    time_s: float

    def csv_line(self) -> str:
        return ",".join(
            [
                self.run_id,
                self.strategy,
                self.params,
                format(self.sw, ".6g"),
                format(self.participation, ".6g"),
                format(self.efficiency, ".6g"),
                format(self.time_s, ".6g"),
            ]
        )


def params_slug(strategy: str, params: dict) -> str:
    """Stable short form of a cohort's parameters for run ids and CSV."""
    params = dict(params or {})
    parts = []
    if strategy == "overpro":
        parts.append(f"K={params.pop('topics')}")
        parts.append(f"tau0={format(float(params.pop('tau0')), 'g')}")
        parts.append(f"kappa={format(float(params.pop('kappa')), 'g')}")
    elif strategy == "greedy":
        parts.append(f"k={params.pop('k')}")
    elif strategy == "qlearning":
        parts.append(f"delta={format(float(params.pop('delta_base', 0.95)), 'g')}")
    for key in sorted(params):
        parts.append(f"{key}={params[key]}")
    return ";".join(parts)


def build_game(config: ExperimentConfig, seed: int) -> RuleGame:
    rng = np.random.default_rng(np.random.SeedSequence([seed, _GAME_STREAM_TAG]))
    return generate_random_game(
        n=config.n,
        rule_count=config.rule_count,
        value_mean=config.value_mean,
        value_sigma=config.value_sigma,
        endowment_low=config.endowment_low,
        endowment_high=config.endowment_high,
        max_rule_size=config.max_rule_size,
        noise_prob=config.noise_prob,
        noise_sigma=config.noise_sigma,
        rng=rng,
        min_rule_size=config.min_rule_size,
        center_values=config.center_rule_values,
    )


def _round_to_record(run_id: str, rec) -> dict:
    return {
        "run_id": run_id,
        "t": rec.t,
        "proposer": rec.proposer,
        "n_proposals": rec.n_proposals,
        "formed": [
            {
                "contributions": {str(a): q for a, q in sorted(fc.coalition.contributions.items())},
                "value": fc.value,
                "payoffs": {str(a): p for a, p in sorted(fc.payoffs.items())},
            }
            for fc in rec.formed
        ],
        "utilities": {str(a): u for a, u in sorted(rec.utilities.items())},
    }


def _run_single(args) -> tuple[int, int, MetricsRow, list[str]]:
    config, cohort_idx, run_idx, seed = args
    cohort = config.cohorts[cohort_idx]
    strategy = cohort["strategy"]
    params = cohort.get("params", {})
    game = build_game(config, seed)
    log = run_game(
        GameConfig(
            game=game,
            iterations=config.iterations,
            strategy=strategy,
            params=params,
            master_seed=seed,
        )
    )
    slug = params_slug(strategy, params)
    run_id = f"{strategy}[{slug}]s{seed}"
    row = MetricsRow(
        run_id=run_id,
        strategy=strategy,
        params=slug,
        sw=log.social_welfare,
        participation=log.participation,
        efficiency=log.efficiency,
        time_s=log.elapsed_s / (config.n * config.iterations) if config.iterations else 0.0,
    )
    lines = []
    if config.record_rounds:
        lines = [json.dumps(_round_to_record(run_id, rec)) for rec in log.rounds]
    return cohort_idx, run_idx, row, lines


def run_experiment(
    config: ExperimentConfig,
    out_dir,
    jobs: int = 1,
    seed_offset: int = 0,
) -> list[MetricsRow]:
    """Run every cohort against every seed, write metrics.csv and summary.csv
    (plus rounds.ndjson when configured), and return the per-run rows."""
    os.makedirs(out_dir, exist_ok=True)
    seeds = config.run_seeds(seed_offset)
    tasks = [
        (config, ci, ri, seed)
        for ci in range(len(config.cohorts))
        for ri, seed in enumerate(seeds)
    ]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            outcomes = pool.map(_run_single, tasks)
    else:
        outcomes = [_run_single(task) for task in tasks]
    outcomes.sort(key=lambda item: (item[0], item[1]))

    rows = [row for _, _, row, _ in outcomes]
    with open(os.path.join(out_dir, "metrics.csv"), "w") as fh:
        fh.write(METRICS_HEADER + "\n")
        for row in rows:
            fh.write(row.csv_line() + "\n")

    with open(os.path.join(out_dir, "summary.csv"), "w") as fh:
        fh.write("strategy,params,runs,mean_sw,mean_participation,mean_efficiency\n")
        for ci, cohort in enumerate(config.cohorts):
            cohort_rows = [row for idx, _, row, _ in outcomes if idx == ci]
            fh.write(
                ",".join(
                    [
                        cohort["strategy"],
                        params_slug(cohort["strategy"], cohort.get("params", {})),
                        str(len(cohort_rows)),
                        format(float(np.mean([r.sw for r in cohort_rows])), ".6g"),
                        format(float(np.mean([r.participation for r in cohort_rows])), ".6g"),
                        format(float(np.mean([r.efficiency for r in cohort_rows])), ".6g"),
                    ]
                )
                + "\n"
            )

    if config.record_rounds:
        with open(os.path.join(out_dir, "rounds.ndjson"), "w") as fh:
            for _, _, _, lines in outcomes:
                for line in lines:
                    fh.write(line + "\n")
    return rows


def dump_topics(strategies, t: int, out_dir) -> list[str]:
    """One topics_a<agent>_t<t>.json per agent holding the labeled K x (n+2)
    topic probabilities of her model at iteration t."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for strategy in strategies:
        if not hasattr(strategy, "topic_matrix"):
            raise ValueError("topic dumps need OVERPRO strategies")
        vocab = Vocabulary(strategy.n)
        beta = strategy.topic_matrix().beta
        path = os.path.join(out_dir, f"topics_a{strategy.agent_id}_t{t}.json")
        with open(path, "w") as fh:
            json.dump(
                {
                    "agent": strategy.agent_id,
                    "t": t,
                    "words": vocab.labels(),
                    "topics": [[float(p) for p in row] for row in beta],
                },
                fh,
            )
        written.append(path)
    return written


def run_topic_dump(config: ExperimentConfig, checkpoints: list[int], out_dir) -> list[str]:
    """Run the first OVERPRO cohort on the first seed, dumping every agent's
    topics at each checkpoint iteration."""
    cohort = next((c for c in config.cohorts if c["strategy"] == "overpro"), None)
    if cohort is None:
        raise ValueError("config has no overpro cohort to dump topics from")
    bad = [t for t in checkpoints if not 1 <= t <= config.iterations]
    if bad:
        raise ValueError(f"checkpoints outside [1, {config.iterations}]: {bad}")
    seed = config.run_seeds()[0]
    game = build_game(config, seed)
    wanted = set(checkpoints)
    written: list[str] = []

    def hook(t, strategies):
        if t in wanted:
            written.extend(dump_topics(strategies, t, out_dir))

    run_game(
        GameConfig(
            game=game,
            iterations=config.iterations,
            strategy="overpro",
            params=cohort.get("params", {}),
            master_seed=seed,
        ),
        hook=hook,
    )
    return written
