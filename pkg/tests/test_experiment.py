from __future__ import annotations

import json
import math

import pytest

from clquant.datasets import large_run_coordinates, load_basis
from clquant.experiment import (
    ExperimentConfig,
    ExperimentResult,
    export_result,
    format_coordinates,
    parse_coordinates,
    result_from_histogram,
    run_experiment,
)
from clquant.reduce import reduction_length
from clquant.sample import RandomSource, random_term
from clquant.term import SK

from reference_values import LARGE_RUN_LOG2_N, LARGE_RUN_MEAN, LARGE_RUN_UNNORMALIZED


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(samples=0, size=1, fuel=1),
            dict(samples=1, size=-1, fuel=1),
            dict(samples=1, size=1, fuel=0),
            dict(samples=1, size=1, fuel=1, seed=-1),
            dict(samples=1, size=1, fuel=1, workers=0),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)


class TestRun:
    def test_primitives_are_normal(self):
        res = run_experiment(ExperimentConfig(samples=10, size=0, fuel=1))
        assert res.histogram() == {0: 10}
        assert res.fraction_normalized == 1
        assert res.mean_reduction_length == 0

    def test_conservation(self):
        res = run_experiment(ExperimentConfig(samples=300, size=60, fuel=40, seed=3))
        assert res.normalized + res.unnormalized == 300
        assert sum(res.histogram().values()) == 300
        assert res.fraction_normalized == res.normalized / 300

    def test_matches_direct_classification(self):
        cfg = ExperimentConfig(samples=80, size=25, fuel=30, seed=8)
        res = run_experiment(cfg)
        direct = [
            reduction_length(random_term(SK, 25, RandomSource(8, i)), SK, 30) for i in range(80)
        ]
        assert res.unnormalized == direct.count(None)
        assert res.lengths == {k: direct.count(k) for k in set(direct) - {None}}

    def test_worker_independence(self):
        base = dict(samples=120, size=200, fuel=100, seed=99)
        one = run_experiment(ExperimentConfig(**base, workers=1))
        three = run_experiment(ExperimentConfig(**base, workers=3))
        assert export_result(one) == export_result(three)

    def test_seed_matters(self):
        a = run_experiment(ExperimentConfig(samples=200, size=100, fuel=50, seed=1))
        b = run_experiment(ExperimentConfig(samples=200, size=100, fuel=50, seed=2))
        assert a.lengths != b.lengths

    def test_monotone_fuel(self):
        counts = [
            run_experiment(ExperimentConfig(samples=200, size=300, fuel=r, seed=4)).normalized
            for r in (1, 5, 20, 100, 400)
        ]
        assert counts == sorted(counts)

    def test_other_basis(self):
        res = run_experiment(ExperimentConfig(samples=50, size=30, fuel=50, basis=load_basis("bckw")))
        assert res.samples == 50

    @pytest.mark.parametrize("n", [1000, 10_000])
    def test_mean_length_is_logarithmic(self, n):
        res = run_experiment(ExperimentConfig(samples=2000, size=n, fuel=2000, seed=n))
        assert 0.5 * math.log2(n) <= res.mean_reduction_length <= 5 * math.log2(n)

    def test_mean_length_is_logarithmic_at_1e5(self):
        """Slowest test in the suite: 2000 terms of size 10^5 (~15 min, one core)."""
        n = 100_000
        res = run_experiment(ExperimentConfig(samples=2000, size=n, fuel=2000, seed=n))
        assert 0.5 * math.log2(n) <= res.mean_reduction_length <= 5 * math.log2(n)


class TestExport:
    def test_single_bucket_csv(self):
        res = result_from_histogram({0: 10})
        assert export_result(res, "csv") == b"reduction_length,count\n0,10\n"

    def test_sentinel_first(self):
        res = result_from_histogram({5: 1, -1: 3, 0: 2})
        assert export_result(res).decode().splitlines() == [
            "reduction_length,count",
            "-1,3",
            "0,2",
            "5,1",
        ]

    def test_json(self):
        cfg = ExperimentConfig(samples=40, size=50, fuel=20, seed=6)
        res = run_experiment(cfg)
        data = json.loads(export_result(res, "json"))
        assert data["normalized"] + data["unnormalized"] == 40
        assert data["config"]["seed"] == 6
        assert data["config"]["draw_protocol"] == 1
        assert data["log2_n"] == pytest.approx(math.log2(50))
        assert dict(map(tuple, data["histogram"])) == res.histogram()

    def test_json_without_normalising_samples(self):
        res = result_from_histogram({-1: 4})
        assert json.loads(export_result(res, "json"))["mean_reduction_length"] is None

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_result(result_from_histogram({0: 1}), "xml")

    def test_cli_determinism_bytes(self):
        cfg = ExperimentConfig(samples=100, size=1000, fuel=500, seed=7)
        assert export_result(run_experiment(cfg)) == export_result(run_experiment(cfg))


class TestLargeRunFixture:
    def test_round_trip(self):
        text = large_run_coordinates()
        res = result_from_histogram(parse_coordinates(text), size=50_000_000)
        assert format_coordinates(res) == text

    def test_statistics(self):
        res = result_from_histogram(parse_coordinates(large_run_coordinates()), size=50_000_000)
        assert res.samples == 1200
        assert res.unnormalized == LARGE_RUN_UNNORMALIZED
        assert res.fraction_normalized == pytest.approx(0.8533, abs=1e-4)
        assert res.mean_reduction_length == pytest.approx(LARGE_RUN_MEAN, abs=1e-4)  # 4 decimals, truncated
        assert res.log2_n == pytest.approx(LARGE_RUN_LOG2_N, abs=5e-5)

    def test_csv_of_fixture(self):
        res = result_from_histogram(parse_coordinates(large_run_coordinates()))
        lines = export_result(res).decode().splitlines()
        assert lines[:3] == ["reduction_length,count", "-1,176", "1,110"]

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse_coordinates("no data")
        with pytest.raises(ValueError):
            parse_coordinates("(1,2) (1,3)")
        with pytest.raises(ValueError):
            result_from_histogram({-2: 1})

    def test_result_type(self):
        assert isinstance(result_from_histogram({0: 1}), ExperimentResult)
