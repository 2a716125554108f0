# @Time   : 2026/10/17
# @Author : SRSLab Team

import numpy as np
import pytest

from srslab.data import Dataset, GeneratorSpec, generate, population_dataset
from srslab.distribution import JointDistribution
from srslab.model import build_tree
from srslab.system import (SrsConfig, SrsResult, SrsState, get_system, history_table, importance_table,
                           predict_ensemble, run_srs, select_subspace)
from srslab.system.utils import null_win_rate, probe_threshold, significant_wins


def test_select_subspace_retains_found():
    rng = np.random.default_rng(0)
    subspace = select_subspace([3, 5], 10, 4, 0.5, rng)
    assert set(subspace.retained) == {3, 5}
    assert len(subspace) == 4
    assert len(set(subspace.features)) == 4
    assert not set(subspace.fresh) & {3, 5}


def test_select_subspace_caps_retained():
    rng = np.random.default_rng(1)
    subspace = select_subspace(range(6), 10, 4, 1.0, rng)
    assert len(subspace.retained) == 4
    assert subspace.fresh == ()
    subspace = select_subspace(range(6), 10, 4, 0.0, rng)
    assert subspace.retained == ()
    assert len(subspace.fresh) == 4
    subspace = select_subspace(range(6), 10, 5, 0.5, rng)
    assert len(subspace.retained) == 2


def test_select_subspace_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        select_subspace([], 10, 0, 0.5, rng)
    with pytest.raises(ValueError):
        select_subspace([], 10, 11, 0.5, rng)
    with pytest.raises(ValueError):
        select_subspace([], 10, 4, 1.5, rng)


def test_config_validation():
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=10, K=3)
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=-1)
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=10, probe_rule='median')
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=10, alpha=-0.1)


def test_system_errors(copy_dataset):
    with pytest.raises(ValueError):
        run_srs(copy_dataset, SrsConfig(q=4, T=1))
    with pytest.raises(NotImplementedError):
        get_system(SrsConfig(q=2, T=1), copy_dataset, 'boosting')


def test_srs_without_memory_matches_random_subspace():
    ds = generate(GeneratorSpec('chaining', p=30, r=3, n=300, seed=3))
    srs = get_system(SrsConfig(q=5, T=40, alpha=0.0, seed=9), ds, 'SRS').fit()
    rs = get_system(SrsConfig(q=5, T=40, alpha=0.7, seed=9), ds, 'RS').fit()
    assert srs.found == rs.found
    assert np.allclose(srs.importances, rs.importances)
    assert [h.subspace for h in srs.state.history] == [h.subspace for h in rs.state.history]


def test_no_iteration():
    ds = generate(GeneratorSpec('marginal', p=5, r=2, n=100))
    result = run_srs(ds, SrsConfig(q=2, T=0))
    assert result.found == ()
    assert result.ensemble == []
    assert np.array_equal(result.importances, np.zeros(5))
    assert history_table(result).empty
    with pytest.raises(ValueError):
        predict_ensemble(result, [0, 0, 0, 0, 0])


def test_predict_ensemble_votes():
    values = np.array([[0], [1]])
    zeros = build_tree(Dataset(values, np.array([0, 0])), [0], 1, np.random.default_rng(0))
    ones = build_tree(Dataset(values, np.array([1, 1])), [0], 1, np.random.default_rng(0))
    result = SrsResult(SrsState(ensemble=[ones, zeros, ones]), np.zeros(1), (), 2)
    assert predict_ensemble(result, [0]) == 1
    assert list(predict_ensemble(result, [[0], [1]])) == [1, 1]
    tied = SrsResult(SrsState(ensemble=[ones, zeros]), np.zeros(1), (), 2)
    assert predict_ensemble(tied, [1]) == 0


@pytest.mark.parametrize('alpha', [0.0, 0.5, 1.0])
def test_population_run_finds_exactly_the_relevant_set(alpha):
    ds = population_dataset(GeneratorSpec('chaining', p=6, r=3))
    result = run_srs(ds, SrsConfig(q=4, T=2000, alpha=alpha, probe_count=0, seed=1))
    assert set(result.found) == {0, 1, 2}
    assert np.all(result.importances[3:] < 1e-10)


def test_greedy_trees_find_strongly_relevant_features():
    ds = population_dataset(GeneratorSpec('marginal', p=6, r=3))
    result = run_srs(ds, SrsConfig(q=3, T=300, alpha=0.5, K=3, probe_count=0, seed=2))
    assert set(result.found) == {0, 1, 2}


def test_probe_test_keeps_the_copied_feature(copy_dataset):
    result = run_srs(copy_dataset, SrsConfig(q=2, T=30, alpha=0.5, probe_count=2, seed=4))
    assert 0 in result.found
    assert int(np.argmax(result.importances)) == 0


def test_iteration_invariants():
    ds = generate(GeneratorSpec('clique', p=20, r=2, n=400, noise=0.05, seed=6))
    result = run_srs(ds, SrsConfig(q=4, T=60, alpha=0.5, seed=6))
    found_before = []
    previous = 0
    for record in result.state.history:
        assert len(record.subspace) == 4
        assert len(set(record.subspace)) == 4
        assert set(record.retained) <= set(found_before)
        assert len(record.retained) <= 2
        assert set(record.new) <= set(record.accepted) <= set(record.subspace)
        assert record.found_size >= previous
        previous = record.found_size
        found_before.extend(record.new)
    assert tuple(found_before) == result.found
    assert result.runtime >= 0


def test_several_trees_per_iteration():
    ds = generate(GeneratorSpec('marginal', p=10, r=2, n=200, seed=8))
    result = run_srs(ds, SrsConfig(q=3, T=5, trees_per_iteration=2, seed=8))
    assert len(result.ensemble) == 10
    assert len(result.state.history) == 10
    assert set(history_table(result)['iteration']) == {1, 2, 3, 4, 5}


def test_result_tables():
    ds = generate(GeneratorSpec('marginal', p=6, r=2, n=200, seed=9))
    result = run_srs(ds, SrsConfig(q=3, T=10, seed=9))
    history = history_table(result)
    assert list(history.columns) == ['iteration', 'subspace_size', 'retained_count', 'accepted_count',
                                     'new_count', 'found_size']
    assert len(history) == 10
    assert history['new_count'].sum() == len(result.found)
    table = importance_table(result, ds.feature_names)
    assert list(table['name']) == list(ds.feature_names)
    assert table['found'].sum() == len(result.found)
    assert table['importance'].to_numpy() == pytest.approx(result.importances)


def test_probe_threshold_rules():
    assert probe_threshold([]) == pytest.approx(1e-10)
    assert probe_threshold([0.1, 0.3, 0.2]) == pytest.approx(0.3)
    assert probe_threshold([0.0, 1.0], 'quantile', 0.5) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        probe_threshold([0.1], 'mean')


def noisy_copy_population():
    """``Y = X1``, ``X2`` agrees with ``X1`` nine times out of ten, ``X3`` is noise."""
    table = np.zeros((2, 2, 2, 2))
    for x1, x2, x3 in np.ndindex(2, 2, 2):
        table[x1, x2, x3, x1] = 0.5 * (0.9 if x1 == x2 else 0.1) * 0.5
    return Dataset.from_distribution(JointDistribution(table), relevant_truth=[0, 1])


def test_greedy_trees_find_fewer_weakly_relevant_features():
    ds = noisy_copy_population()
    greedy = run_srs(ds, SrsConfig(q=3, T=200, alpha=0.5, K=3, probe_count=0, seed=3))
    randomized = run_srs(ds, SrsConfig(q=3, T=200, alpha=0.5, K=1, probe_count=0, seed=3))
    assert 0 in greedy.found
    assert 2 not in greedy.found and 2 not in randomized.found
    weak_greedy = len(set(greedy.found) & {1})
    weak_randomized = len(set(randomized.found) & {1})
    assert weak_greedy <= weak_randomized
    assert weak_randomized == 1


def test_memory_pressure_keeps_low_degree_features():
    # r > q: x4 needs four other inputs, more than a tree can hold
    ds = population_dataset(GeneratorSpec('chaining', p=8, r=5))
    result = run_srs(ds, SrsConfig(q=4, T=400, alpha=0.5, probe_count=0, seed=5))
    found = set(result.found)
    assert {0, 1} <= found
    assert found <= {0, 1, 2, 3}
    assert result.importances[4] < 1e-10


def test_null_win_rate():
    assert null_win_rate(1) == pytest.approx(0.5)
    assert null_win_rate(20) == pytest.approx(1 / 21)
    assert null_win_rate(2, 'quantile', 0.5) == pytest.approx(2 / 3)
    assert null_win_rate(21, 'quantile', 0.95) == pytest.approx(2 / 22)
    with pytest.raises(ValueError):
        null_win_rate(0)


def test_significant_wins():
    mask = significant_wins(np.array([0, 3, 5]), np.array([10, 5, 5]), 0.5, 0.05)
    assert list(mask) == [False, False, True]


def test_binomial_acceptance_keeps_noise_out():
    ds = generate(GeneratorSpec('marginal', p=40, r=0, n=300, seed=11))
    per_tree = run_srs(ds, SrsConfig(q=10, T=100, probe_count=4, acceptance='per_tree', seed=11))
    binomial = run_srs(ds, SrsConfig(q=10, T=100, probe_count=4, seed=11))
    assert len(per_tree.found) >= 30
    assert len(binomial.found) <= 2
    assert binomial.state.tested.sum() == 100 * 10
    assert np.all(binomial.state.wins <= binomial.state.tested)


def test_acceptance_config_is_validated():
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=10, acceptance='vote')
    with pytest.raises(ValueError):
        SrsConfig(q=2, T=10, significance=0.0)
