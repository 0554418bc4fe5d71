import json
import math

import pytest

from fibquilt.decomposition import is_fq_legal
from fibquilt.engine import replay
from fibquilt.simulation import (
    DEFAULT_SEED,
    DegenerateDistributionError,
    gaussian_moment_diffs,
    random_playout,
    run_distribution,
    splitmix64,
    trial_seed,
)


class TestPlayout:
    def test_n_one_has_no_moves(self):
        assert random_playout(1, 7).length == 0

    def test_n_four_always_three_moves(self):
        for seed in range(25):
            assert random_playout(4, seed).length == 3

    def test_n_six_lengths(self):
        lengths = {random_playout(6, seed).length for seed in range(60)}
        assert lengths <= {4, 5}
        assert lengths == {4, 5}  # both occur across seeds

    def test_deterministic_replay(self):
        a = random_playout(30, 12345)
        b = random_playout(30, 12345)
        assert a == b

    def test_different_seeds_differ_somewhere(self):
        records = {random_playout(30, s).moves for s in range(10)}
        assert len(records) > 1

    def test_record_validates_through_engine(self):
        for seed in range(10):
            rec = random_playout(25, seed)
            again = replay(25, rec.moves)
            assert again.final == rec.final
            assert is_fq_legal(rec.final)

    def test_r2a_at_most_once_and_winner_parity(self):
        for seed in range(50):
            rec = random_playout(20, seed)
            assert sum(1 for m in rec.moves if m.rule == "R2a") <= 1
            assert rec.winner == ("Player1" if rec.length % 2 else "Player2")

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            random_playout(0, 1)


class TestSeedMixing:
    def test_splitmix_is_stable(self):
        # frozen reference values; a silent change would break reproducibility
        assert splitmix64(0) == 16294208416658607535
        assert splitmix64(1) == 10451216379200822465

    def test_trial_seeds_distinct(self):
        seeds = {trial_seed(DEFAULT_SEED, t) for t in range(1000)}
        assert len(seeds) == 1000


class TestDistribution:
    def test_histogram_totals(self):
        dist = run_distribution(10, trials=200, seed=3)
        assert sum(dist.histogram.values()) == 200
        assert dist.trials == 200

    def test_n_four_degenerate_histogram(self):
        dist = run_distribution(4, trials=100, seed=1)
        assert dist.histogram == {3: 100}
        assert dist.mean == 3.0 and dist.stddev == 0.0

    def test_mean_and_moments_consistent(self):
        dist = run_distribution(12, trials=500, seed=9)
        lengths = [length for length, c in dist.histogram.items() for _ in range(c)]
        assert dist.mean == pytest.approx(sum(lengths) / len(lengths))
        m2 = sum((x - dist.mean) ** 2 for x in lengths) / len(lengths)
        assert dist.central_moments["m2"] == pytest.approx(m2)
        assert dist.stddev == pytest.approx(math.sqrt(m2))

    def test_determinism_of_json_form(self):
        a = run_distribution(15, trials=300, seed=42).to_json_dict()
        b = run_distribution(15, trials=300, seed=42).to_json_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_json_carries_prng_metadata(self):
        d = run_distribution(6, trials=5, seed=0).to_json_dict()
        assert "mersenne" in d["prng"]["algorithm"]
        assert "splitmix64" in d["prng"]["trial_seed_derivation"]


class TestMomentDiffs:
    def test_d2_exactly_zero(self):
        dist = run_distribution(20, trials=400, seed=5)
        d2, d4, d6 = gaussian_moment_diffs(dist)
        assert d2 == 0.0
        assert d4 >= 0 and d6 >= 0

    def test_degenerate_raises(self):
        dist = run_distribution(4, trials=50, seed=2)
        with pytest.raises(DegenerateDistributionError):
            gaussian_moment_diffs(dist)

    def test_diffs_populated_on_run(self):
        dist = run_distribution(20, trials=400, seed=5)
        assert dist.gaussian_diffs["d2"] == 0.0
        assert dist.gaussian_diffs["d4"] == pytest.approx(
            gaussian_moment_diffs(dist)[1]
        )
