import math
import random

import pytest

from stabkit.noise import (
    depolarizing,
    derive_seed,
    error_probabilities,
    iid_x,
    iid_xz,
    sample,
)
from stabkit.pauli import identity, weight


class TestModels:
    def test_probability_range_checked(self):
        with pytest.raises(ValueError):
            iid_x(1.2)
        with pytest.raises(ValueError):
            iid_xz(0.1, -0.5)

    def test_headline_rates(self):
        assert iid_x(0.03).headline_rate == 0.03
        assert depolarizing(0.2).headline_rate == 0.2


class TestSample:
    def test_zero_rate_identity(self):
        rng = random.Random(0)
        for _ in range(50):
            assert sample(iid_x(0.0), 4, rng) == identity(4)

    def test_unit_rate_all_x(self):
        rng = random.Random(0)
        for _ in range(20):
            draw = sample(iid_x(1.0), 3, rng)
            assert draw.x_bits == 0b111 and draw.z_bits == 0

    def test_reproducible_streams(self):
        model = iid_xz(0.3, 0.2)
        a = [sample(model, 5, random.Random(derive_seed(42, i))) for i in range(100)]
        b = [sample(model, 5, random.Random(derive_seed(42, i))) for i in range(100)]
        assert a == b
        c = [sample(model, 5, random.Random(derive_seed(43, i))) for i in range(100)]
        assert a != c

    def test_iid_x_weight_distribution(self):
        # (0.9 + 0.1)^2 expansion: P(w=0)=0.81, P(w=1)=0.18, P(w=2)=0.01
        rng = random.Random(123)
        counts = [0, 0, 0]
        trials = 200_000
        for _ in range(trials):
            counts[weight(sample(iid_x(0.1), 2, rng))] += 1
        for count, expect in zip(counts, (0.81, 0.18, 0.01)):
            sigma = math.sqrt(expect * (1 - expect) / trials)
            assert abs(count / trials - expect) < 5 * sigma

    def test_per_qubit_flip_frequency(self):
        rng = random.Random(7)
        p = 0.05
        trials = 1_000_000
        flips = 0
        for _ in range(trials):
            flips += sample(iid_x(p), 1, rng).x_bits
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(flips / trials - p) < 5 * sigma

    def test_depolarizing_letter_balance(self):
        rng = random.Random(11)
        p = 0.3
        trials = 100_000
        counts = {"X": 0, "Y": 0, "Z": 0, "I": 0}
        for _ in range(trials):
            draw = sample(depolarizing(p), 1, rng)
            counts[draw.letter(1)] += 1
        sigma = math.sqrt((p / 3) * (1 - p / 3) / trials)
        for letter in "XYZ":
            assert abs(counts[letter] / trials - p / 3) < 5 * sigma
        assert abs(counts["I"] / trials - (1 - p)) < 5 * math.sqrt(p * (1 - p) / trials)

    def test_iid_xz_y_coincidence(self):
        rng = random.Random(19)
        trials = 100_000
        y_count = 0
        model = iid_xz(0.2, 0.3)
        for _ in range(trials):
            if sample(model, 1, rng).letter(1) == "Y":
                y_count += 1
        expect = 0.2 * 0.3
        sigma = math.sqrt(expect * (1 - expect) / trials)
        assert abs(y_count / trials - expect) < 5 * sigma


class TestErrorProbabilities:
    def test_binomial_values(self):
        dist = error_probabilities(iid_x(0.1), 3)
        assert dist.weight_probabilities[0] == pytest.approx(0.729)
        assert dist.weight_probabilities[2] == pytest.approx(0.027)
        assert dist.mean_weight == pytest.approx(0.3)

    def test_zero_rate(self):
        dist = error_probabilities(iid_x(0.0), 5)
        assert dist.weight_probabilities[0] == 1.0

    def test_iid_xz_site_rate(self):
        dist = error_probabilities(iid_xz(0.1, 0.1), 2)
        q = 1 - 0.9 * 0.9
        assert dist.mean_weight == pytest.approx(2 * q)

    def test_tail_guard(self):
        with pytest.raises(ValueError):
            error_probabilities(iid_x(0.1), 31)
