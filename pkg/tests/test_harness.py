"""Metrics definitions, CSV determinism, topic dumps, config parsing."""

import json
import os

import numpy as np
import pytest

from ocfsim.harness import (
    ExperimentConfig,
    build_game,
    dump_topics,
    params_slug,
    run_experiment,
    run_topic_dump,
)
from ocfsim.protocol import rng_streams, run_rounds
from ocfsim.rules import RelationalRule, RuleGame
from ocfsim.strategies.base import Strategy

import test_protocol


def small_config(tmp_out=None, **kw):
    base = dict(
        n=8,
        iterations=12,
        rule_count=25,
        cohorts=[
            {"strategy": "overpro", "params": {"topics": 4, "tau0": 50, "kappa": 0.9}},
            {"strategy": "greedy", "params": {"k": 4}},
            {"strategy": "qlearning", "params": {"delta_base": 0.95}},
        ],
        runs=2,
        base_seed=7,
        endowment_low=10,
        endowment_high=14,
        value_sigma=60.0,
        max_rule_size=3,
    )
    base.update(kw)
    return ExperimentConfig(**base)


class TestMetricsDefinitions:
    def test_hand_computed_fixture(self):
        """Scripted 2-agent, 3-round game: one coalition {1:2, 2:2} worth 8
        forms in round 1 only -> sw=8, participation=2/(2*3), efficiency=2."""
        game = RuleGame(2, {1: 2, 2: 2}, [RelationalRule((1, 2), 8.0)])
        strategies = [
            test_protocol.StubStrategy(1, 2, drafts={1: [test_protocol.draft(2, 2, {2: 2})]}),
            test_protocol.StubStrategy(2, 2, drafts={1: [test_protocol.draft(2, 2, {1: 2})]}),
        ]
        log = run_rounds(game, strategies, 3, rng_streams(0, 2))
        assert log.social_welfare == 8.0
        assert log.participation == pytest.approx(2 / 6)
        assert log.efficiency == pytest.approx(2.0)

    def test_single_round_full_participation(self):
        game = RuleGame(2, {1: 2, 2: 2}, [RelationalRule((1, 2), 8.0)])
        strategies = [
            test_protocol.StubStrategy(1, 2, drafts={1: [test_protocol.draft(2, 2, {2: 2})]}),
            test_protocol.StubStrategy(2, 2, drafts={1: [test_protocol.draft(2, 2, {1: 2})]}),
        ]
        log = run_rounds(game, strategies, 1, rng_streams(0, 2))
        assert log.social_welfare == 8.0
        assert log.participation == 1.0
        assert log.efficiency == 2.0

    def test_no_formation_reports_zero_efficiency(self):
        game = RuleGame(2, {1: 2, 2: 2}, [])
        strategies = [test_protocol.StubStrategy(a, 2) for a in (1, 2)]
        log = run_rounds(game, strategies, 4, rng_streams(0, 2))
        assert log.social_welfare == 0.0
        assert log.participation == 0.0
        assert log.efficiency == 0.0


class TestExperimentRuns:
    def test_metrics_csv_written_and_deterministic(self, tmp_path):
        config = small_config()
        rows_a = run_experiment(config, tmp_path / "a", jobs=1)
        rows_b = run_experiment(config, tmp_path / "b", jobs=2)
        text_a = (tmp_path / "a" / "metrics.csv").read_text().splitlines()
        text_b = (tmp_path / "b" / "metrics.csv").read_text().splitlines()
        assert text_a[0] == "run_id,strategy,params,sw,participation,efficiency,time_s"
        strip = lambda lines: [",".join(l.split(",")[:-1]) for l in lines]
        assert strip(text_a) == strip(text_b)
        assert len(rows_a) == len(rows_b) == 6

    def test_summary_means_match_rows(self, tmp_path):
        config = small_config()
        rows = run_experiment(config, tmp_path, jobs=1)
        lines = (tmp_path / "summary.csv").read_text().splitlines()[1:]
        greedy_rows = [r for r in rows if r.strategy == "greedy"]
        greedy_line = next(l for l in lines if l.startswith("greedy"))
        mean_sw = float(greedy_line.split(",")[3])
        assert mean_sw == pytest.approx(np.mean([r.sw for r in greedy_rows]), rel=1e-5)

    def test_same_seed_same_game_across_cohorts(self):
        config = small_config()
        assert build_game(config, 7).endowments == build_game(config, 7).endowments
        a = build_game(config, 7)
        b = build_game(config, 8)
        assert any(
            ra.value != rb.value or ra.members != rb.members
            for ra, rb in zip(a.rules, b.rules)
        )

    def test_seed_offset_changes_runs(self, tmp_path):
        config = small_config(runs=1, cohorts=[{"strategy": "greedy", "params": {"k": 3}}])
        rows0 = run_experiment(config, tmp_path / "o0", jobs=1, seed_offset=0)
        rows1 = run_experiment(config, tmp_path / "o1", jobs=1, seed_offset=100)
        assert rows0[0].run_id != rows1[0].run_id

    def test_rounds_ndjson(self, tmp_path):
        config = small_config(runs=1, record_rounds=True, iterations=5,
                              cohorts=[{"strategy": "greedy", "params": {"k": 3}}])
        run_experiment(config, tmp_path, jobs=1)
        lines = (tmp_path / "rounds.ndjson").read_text().splitlines()
        assert len(lines) == 5
        rec = json.loads(lines[0])
        assert {"run_id", "t", "proposer", "n_proposals", "formed", "utilities"} <= set(rec)
        for fc in rec["formed"]:
            assert sum(fc["payoffs"].values()) == pytest.approx(fc["value"], abs=1e-9)


class TestParamsSlug:
    def test_overpro(self):
        assert params_slug("overpro", {"topics": 15, "tau0": 200, "kappa": 0.9}) == \
            "K=15;tau0=200;kappa=0.9"

    def test_greedy_and_q(self):
        assert params_slug("greedy", {"k": 10}) == "k=10"
        assert params_slug("qlearning", {"delta_base": 0.99}) == "delta=0.99"

    def test_extra_params_sorted(self):
        slug = params_slug("overpro", {"topics": 5, "tau0": 1, "kappa": 0.9,
                                       "gamma_init": "random", "alpha": 0.01})
        assert slug.endswith("alpha=0.01;gamma_init=random")


class TestConfigParsing:
    def test_from_json_round_trip(self, tmp_path):
        path = tmp_path / "config.json"
        doc = dict(
            n=8, iterations=5, rule_count=10, runs=1, base_seed=3,
            cohorts=[{"strategy": "greedy", "params": {"k": 2}}],
        )
        path.write_text(json.dumps(doc))
        config = ExperimentConfig.from_json(path)
        assert config.n == 8
        assert config.cohorts[0]["strategy"] == "greedy"

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(dict(
            n=8, iterations=5, rule_count=10, runs=1,
            cohorts=[{"strategy": "greedy"}], bogus=1,
        )))
        with pytest.raises(ValueError):
            ExperimentConfig.from_json(path)

    def test_bad_cohort_rejected(self):
        with pytest.raises(ValueError):
            small_config(cohorts=[{"strategy": "sorcery"}])

    def test_seed_list_length_checked(self):
        with pytest.raises(ValueError):
            small_config(seeds=[1, 2, 3])


class TestTopicDumps:
    def test_dump_files_schema(self, tmp_path):
        config = small_config(iterations=6, runs=1)
        written = run_topic_dump(config, [3, 6], tmp_path)
        assert len(written) == 16  # 8 agents x 2 checkpoints
        sample = json.loads(open(os.path.join(tmp_path, "topics_a1_t3.json")).read())
        assert sample["agent"] == 1 and sample["t"] == 3
        assert sample["words"] == [f"ag{i}" for i in range(1, 9)] + ["gain", "loss"]
        for row in sample["topics"]:
            assert len(row) == 10
            assert sum(row) == pytest.approx(1.0, abs=1e-9)

    def test_empty_checkpoints_no_dumps(self, tmp_path):
        config = small_config(iterations=6, runs=1)
        assert run_topic_dump(config, [], tmp_path) == []

    def test_checkpoint_out_of_range(self, tmp_path):
        with pytest.raises(ValueError):
            run_topic_dump(small_config(iterations=6), [99], tmp_path)

    def test_requires_overpro_cohort(self, tmp_path):
        config = small_config(cohorts=[{"strategy": "greedy", "params": {"k": 2}}])
        with pytest.raises(ValueError):
            run_topic_dump(config, [1], tmp_path)

    def test_non_overpro_strategies_rejected_by_dump(self, tmp_path):
        class Fake(Strategy):
            def propose(self, t, rng):
                return []

        with pytest.raises(ValueError):
            dump_topics([Fake(1, 4, 10, None)], 1, tmp_path)
