"""Knapsack, softmax and schedule kernels against oracles and stated endpoints."""

import numpy as np
import pytest

from ocfsim.decisions import (
    KnapsackItem,
    Schedules,
    c_schedule,
    delta_schedule,
    fraction_threshold,
    knapsack_01,
    softmax_probs,
    softmax_sample,
    z_schedule,
)

from oracles import brute_force_knapsack


def items_from(pairs):
    return [KnapsackItem(value=v, weight=w, tag=i) for i, (v, w) in enumerate(pairs)]


class TestKnapsack:
    def test_worked_example(self):
        # values/weights (10,5) (6,4) (5,3), capacity 7 -> items 1 and 2
        assert knapsack_01(items_from([(10, 5), (6, 4), (5, 3)]), 7) == {1, 2}

    def test_empty_items(self):
        assert knapsack_01([], 11) == set()

    def test_zero_capacity(self):
        assert knapsack_01(items_from([(3, 1)]), 0) == set()

    def test_item_heavier_than_capacity_skipped(self):
        assert knapsack_01(items_from([(10, 9), (1, 2)]), 3) == {1}

    def test_tie_prefers_smaller_weight(self):
        # both subsets reach value 5; {1} weighs 2, {0} weighs 3
        picked = knapsack_01(items_from([(5, 3), (5, 2)]), 3)
        assert picked == {1}

    def test_tie_prefers_lexicographically_smallest_tags(self):
        # {0} and {1,2} both give value 5 at weight 3
        picked = knapsack_01(items_from([(5, 3), (4, 2), (1, 1)]), 3)
        assert picked == {0}

    def test_against_brute_force(self):
        rng = np.random.default_rng(31)
        for _ in range(400):
            m = int(rng.integers(1, 13))
            # dyadic values keep float sums exact, so tie-breaking is testable
            values = rng.integers(0, 65, size=m) / 8.0
            weights = rng.integers(1, 12, size=m)
            capacity = int(rng.integers(0, 30))
            items = [KnapsackItem(float(v), int(w), i) for i, (v, w) in enumerate(zip(values, weights))]
            got = knapsack_01(items, capacity)
            want = brute_force_knapsack(values.tolist(), weights.tolist(), capacity)
            assert got == want

    def test_capacity_respected(self):
        rng = np.random.default_rng(32)
        for _ in range(100):
            m = int(rng.integers(1, 25))
            items = [
                KnapsackItem(float(rng.random() * 10), int(rng.integers(1, 9)), i)
                for i in range(m)
            ]
            capacity = int(rng.integers(0, 40))
            picked = knapsack_01(items, capacity)
            assert sum(items[i].weight for i in picked) <= capacity

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(ValueError):
            KnapsackItem(value=1.0, weight=0, tag=0)


class TestSoftmax:
    def test_equal_values_uniform(self):
        np.testing.assert_allclose(softmax_probs([3.0, 3.0, 3.0, 3.0]), 0.25)

    def test_log_two_gap(self):
        np.testing.assert_allclose(softmax_probs([0.0, np.log(2.0)]), [1 / 3, 2 / 3])

    def test_shift_invariance(self):
        values = np.array([0.4, -1.2, 3.3])
        np.testing.assert_allclose(
            softmax_probs(values), softmax_probs(values + 123.0), rtol=1e-12
        )

    def test_single_element_always_zero(self):
        rng = np.random.default_rng(0)
        assert all(softmax_sample([5.0], rng) == 0 for _ in range(10))

    def test_sampling_frequencies(self):
        rng = np.random.default_rng(123)
        values = [0.0, np.log(2.0)]
        counts = np.bincount([softmax_sample(values, rng) for _ in range(30_000)], minlength=2)
        assert abs(counts[1] / 30_000 - 2 / 3) < 0.01

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            softmax_probs([])


class TestSchedules:
    def test_endpoints_exact(self):
        for total in (2, 3, 200, 1000):
            assert z_schedule(1, total) == 1.0
            assert z_schedule(total, total) == 1e-3
            assert c_schedule(1, total) == 1.0
            assert c_schedule(total, total) == 0.5

    def test_c_midpoint(self):
        assert c_schedule(101, 201) == pytest.approx(0.75, abs=1e-12)

    def test_delta_second_step(self):
        assert delta_schedule(2, 0.95) == pytest.approx(0.9025, abs=1e-12)

    def test_monotone_nonincreasing(self):
        total = 137
        zs = [z_schedule(t, total) for t in range(1, total + 1)]
        cs = [c_schedule(t, total) for t in range(1, total + 1)]
        ds = [delta_schedule(t, 0.95) for t in range(1, total + 1)]
        for series in (zs, cs, ds):
            assert all(a >= b for a, b in zip(series, series[1:]))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            z_schedule(0, 10)
        with pytest.raises(ValueError):
            c_schedule(11, 10)
        with pytest.raises(ValueError):
            delta_schedule(1, 1.0)

    def test_single_round_game_uses_start_values(self):
        sched = Schedules(iterations=1)
        assert sched.z(1) == 1.0
        assert sched.c(1) == 1.0

    def test_schedules_validation(self):
        with pytest.raises(ValueError):
            Schedules(iterations=0)
        with pytest.raises(ValueError):
            Schedules(iterations=10, z_end=2.0)


class TestFractionThreshold:
    @pytest.mark.parametrize(
        "fraction,size,want",
        [
            (0.75, 4, 3),
            (0.5, 2, 1),
            (1.0, 3, 3),
            (0.0, 5, 0),
            (0.51, 2, 2),
            (2 / 3, 3, 2),
        ],
    )
    def test_values(self, fraction, size, want):
        assert fraction_threshold(fraction, size) == want
