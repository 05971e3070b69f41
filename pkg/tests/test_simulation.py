import itertools
from collections import Counter

import numpy as np
import pytest

from kemeny_stats import inference, simulation
from kemeny_stats.errors import DomainError
from kemeny_stats.simulation import SimulationConfig


def test_tie_free_permutation_frequencies():
    rng = np.random.default_rng(0)
    counts = Counter(tuple(simulation.sample_dgp("tie_free_permutation", 3, rng)) for _ in range(100_000))
    assert set(counts) == set(itertools.permutations((1.0, 2.0, 3.0)))
    for c in counts.values():
        assert abs(c / 100_000 - 1 / 6) < 0.02


def test_uniform_labels_rejects_constants():
    rng = np.random.default_rng(1)
    draws = Counter(tuple(simulation.sample_dgp("uniform_labels", 2, rng)) for _ in range(20_000))
    assert set(draws) == {(1.0, 2.0), (2.0, 1.0)}
    assert abs(draws[1.0, 2.0] / 20_000 - 0.5) < 0.02


def test_sample_dgp_is_seeded():
    a = [simulation.sample_dgp("uniform_labels", 7, simulation.replicate_stream(5, i)) for i in range(10)]
    b = [simulation.sample_dgp("uniform_labels", 7, simulation.replicate_stream(5, i)) for i in range(10)]
    np.testing.assert_array_equal(a, b)


def test_unknown_dgp():
    with pytest.raises(DomainError):
        simulation.sample_dgp("gaussian", 3, np.random.default_rng())


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=2, replicates=5, seed=1), dict(n=5, replicates=0, seed=1), dict(n=5, replicates=5, seed=-1),
     dict(n=5, replicates=5, seed=1, test="three_sample"), dict(n=5, replicates=5, seed=1, ks_block=1)],
)
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        SimulationConfig(**kwargs)


@pytest.mark.parametrize("test", simulation.TESTS)
def test_worker_count_does_not_change_stream(test):
    config = SimulationConfig(12, 400, seed=99, test=test)
    one, rej1 = simulation.simulate_statistics(config, workers=1)
    three, rej3 = simulation.simulate_statistics(config, workers=3)
    np.testing.assert_array_equal(one, three)
    assert rej1 == rej3


@pytest.mark.parametrize("test", ["one_sample_rho", "two_sample_rho"])
@pytest.mark.parametrize("dgp", simulation.DGPS)
@pytest.mark.parametrize("n", [3, 4, 9, 40])
def test_batched_rho_matches_per_replicate_path(test, dgp, n):
    config = SimulationConfig(n, 500, seed=7, dgp=dgp, test=test)
    batched, rejected = simulation.simulate_statistics(config, workers=1)
    single = [simulation._replicate(config, i) for i in range(500)]
    np.testing.assert_array_equal(batched, [s for s, _ in single])
    assert rejected == sum(r for _, r in single)


def test_tau_statistics_redraw_degenerate():
    # under the null roughly half the draws have non-positive concentration
    config = SimulationConfig(8, 300, seed=3, test="one_sample_tau")
    values, rejected = simulation.simulate_statistics(config)
    assert values.size == 300 and np.isfinite(values).all()
    assert rejected > 0


def test_run_simulation_summary():
    config = SimulationConfig(15, 2000, seed=11, test="two_sample_rho")
    summary, stream = simulation.run_simulation(config, return_stream=True)
    assert summary.stats.n == 2000
    assert summary.variance == pytest.approx(np.var(stream, ddof=1))
    assert summary.df_used == 13
    assert summary.ks_blocks == 3
    assert 0 <= summary.ks_p_normal <= 1 and 0 <= summary.ks_p_t <= 1
    row = summary.as_row()
    for col in ("mean", "sd", "median", "mad", "min", "max", "skew", "kurtosis"):
        assert col in row


def test_one_sample_df():
    assert SimulationConfig(10, 1, 0, test="one_sample_tau").df == 9
    assert SimulationConfig(10, 1, 0, test="two_sample_tau").df == 8


def test_default_workers(monkeypatch):
    monkeypatch.delenv(simulation.THREADS_ENV, raising=False)
    assert simulation.default_workers() == 1
    monkeypatch.setenv(simulation.THREADS_ENV, "4")
    assert simulation.default_workers() == 4
    monkeypatch.setenv(simulation.THREADS_ENV, "many")
    with pytest.raises(DomainError):
        simulation.default_workers()


def test_bootstrap_structure(sleep):
    results = simulation.bootstrap_correlations(*sleep, replicates=400, seed=2)
    assert [r.method for r in results] == list(simulation.estimators.METHODS)
    for r in results:
        assert -1 <= r.quantile_2_5 <= r.quantile_97_5 <= 1
        assert r.stats.n == 400
    by = {r.method: r for r in results}
    assert by["rho_kappa"].stats == by["spearman"].stats


def test_bootstrap_worker_independent(sleep):
    a, _ = simulation.bootstrap_streams(*sleep, replicates=150, seed=8, workers=1)
    b, _ = simulation.bootstrap_streams(*sleep, replicates=150, seed=8, workers=2)
    for m in a:
        np.testing.assert_array_equal(a[m], b[m])


def test_bootstrap_redraws_constant_resamples():
    x = np.array([0.0, 0.0, 0.0, 1.0])
    y = np.array([1.0, 2.0, 3.0, 4.0])
    streams, redraws = simulation.bootstrap_streams(x, y, replicates=200, seed=0)
    assert redraws > 0
    assert all(v.size == 200 for v in streams.values())


def test_bootstrap_minimum_replicates(sleep):
    with pytest.raises(DomainError):
        simulation.bootstrap_correlations(*sleep, replicates=99, seed=1)


def test_histogram_counts(rng):
    values = rng.normal(size=1000)
    rows = simulation.histogram(values, bins=20)
    assert sum(r["count"] for r in rows) == 1000
    assert rows[0]["bin_left"] == values.min() and rows[-1]["bin_right"] == values.max()


def test_rho_statistic_variance_near_t_reference():
    summary = simulation.run_simulation(SimulationConfig(40, 4000, seed=5, test="one_sample_rho"))
    assert summary.variance == pytest.approx(39 / 37, abs=0.08)
    assert inference.identity_reference(3).tolist() == [1.0, 2.0, 3.0]
