# @Time   : 2026/10/17
# @Author : SRSLab Team

import numpy as np
import pytest

from srslab.data import (BaseGenerator, BinaryGenerator, Dataset, GeneratorSpec, generate, get_generator, load_csv,
                         population, population_dataset, save_csv, to_distribution, truth_path_for)
from srslab.distribution import STRONGLY_RELEVANT, conditional_mutual_information, markov_boundary, relevance_class
from srslab.exceptions import CapacityError, DatasetFormatError


def test_generation_is_deterministic():
    spec = GeneratorSpec('chaining', p=20, r=3, n=300, noise=0.1, seed=11)
    assert generate(spec) == generate(spec)
    assert not generate(spec) == generate(GeneratorSpec('chaining', p=20, r=3, n=300, noise=0.1, seed=12))


def test_generator_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec('clique', p=3, r=4)
    with pytest.raises(ValueError):
        GeneratorSpec('ring', p=3, r=1)
    with pytest.raises(ValueError):
        GeneratorSpec('marginal', p=3, r=1, noise=1.0)
    with pytest.raises(ValueError):
        get_generator(GeneratorSpec('clique', p=3, r=0))


@pytest.mark.parametrize('scenario', ['chaining', 'marginal', 'madelon_like'])
def test_no_relevant_feature(scenario):
    spec = GeneratorSpec(scenario, p=4, r=0, n=50)
    ds = generate(spec)
    assert ds.relevant_truth == frozenset()
    assert markov_boundary(population(spec)).variables == ()


def test_clique_pair_population():
    dist = population(GeneratorSpec('clique', p=2, r=2))
    for i in range(2):
        report = relevance_class(dist, i)
        assert report.relevance_class == STRONGLY_RELEVANT
        assert report.degree == 1


@pytest.mark.parametrize('r', [1, 2, 3, 4])
def test_chaining_degrees(r):
    dist = population(GeneratorSpec('chaining', p=r + 1, r=r))
    degrees = [relevance_class(dist, i).degree for i in range(dist.p)]
    assert degrees == list(range(r)) + [None]


@pytest.mark.parametrize('r', [1, 2, 3, 4])
def test_clique_degrees(r):
    dist = population(GeneratorSpec('clique', p=r + 1, r=r))
    degrees = [relevance_class(dist, i).degree for i in range(dist.p)]
    assert degrees == [r - 1] * r + [None]


def test_marginal_features_are_marginally_relevant():
    ds = generate(GeneratorSpec('marginal', p=5, r=2, n=20000, seed=1))
    for i in (0, 1):
        assert conditional_mutual_information(to_distribution(ds, [i]), 0) > 0.1


def test_irrelevant_features_independent_of_label():
    ds = generate(GeneratorSpec('clique', p=4, r=2, n=100000, seed=2))
    for i in (2, 3):
        assert conditional_mutual_information(to_distribution(ds, [i]), 0) <= 0.01


def test_empirical_table_close_to_parity():
    ds = generate(GeneratorSpec('clique', p=2, r=2, n=100000, seed=5))
    dist = to_distribution(ds, [0, 1])
    assert conditional_mutual_information(dist, 0, conditioning=[1]) == pytest.approx(1.0, abs=0.02)
    assert conditional_mutual_information(dist, 0) == pytest.approx(0.0, abs=0.02)


def test_to_distribution_edge_cases():
    ds = Dataset(np.array([[1, 0]] * 5), np.zeros(5, dtype=int))
    label_only = to_distribution(ds, [])
    assert label_only.probabilities.shape == (2,)
    assert label_only.probabilities.sum() == pytest.approx(1.0)
    point = to_distribution(ds, [0, 1])
    assert point.probabilities[1, 0, 0] == pytest.approx(1.0)
    with pytest.raises(CapacityError):
        to_distribution(ds, [0, 1], limit=1)


def test_madelon_like_truth():
    ds = generate(GeneratorSpec('madelon_like', p=2000, r=10, n=50))
    assert ds.relevant_truth == frozenset(range(10))
    assert ds.p == 2000


def test_madelon_population():
    spec = GeneratorSpec('madelon_like', p=3, r=2, arity=3, seed=4)
    dist = population(spec)
    assert dist.probabilities.sum() == pytest.approx(1.0)
    for i in (0, 1):
        assert conditional_mutual_information(dist, i) > 0
    assert conditional_mutual_information(dist, 2, conditioning=[0, 1]) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('scenario', ['chaining', 'clique', 'marginal', 'madelon_like'])
def test_only_binary_scenarios_expose_a_positive_rate(scenario):
    generator = get_generator(GeneratorSpec(scenario, p=4, r=2))
    assert isinstance(generator, BaseGenerator)
    assert isinstance(generator, BinaryGenerator) == (scenario != 'madelon_like')
    assert hasattr(generator, 'positive_rate') == (scenario != 'madelon_like')


def test_population_capacity():
    with pytest.raises(CapacityError):
        population(GeneratorSpec('marginal', p=21, r=2))


def test_population_dataset_weights():
    ds = population_dataset(GeneratorSpec('chaining', p=4, r=2))
    assert ds.is_population
    assert ds.row_weights().sum() == pytest.approx(1.0)
    assert ds.relevant_truth == frozenset({0, 1})


def test_csv_round_trip(tmp_path):
    ds = generate(GeneratorSpec('clique', p=6, r=3, n=200, seed=9))
    path = str(tmp_path / 'clique.csv')
    save_csv(ds, path)
    with open(truth_path_for(path)) as f:
        assert f.read() == '0\n1\n2\n'
    assert load_csv(path) == ds


def test_csv_without_sidecar(tmp_path):
    ds = Dataset(np.array([[0, 1], [1, 0]]), np.array([0, 1]))
    path = str(tmp_path / 'plain.csv')
    save_csv(ds, path)
    assert load_csv(path).relevant_truth is None


def test_csv_ragged_row(tmp_path):
    path = tmp_path / 'ragged.csv'
    path.write_text('a:2,b:2,label:2\n0,1,1\n0,1,1,1\n')
    with pytest.raises(DatasetFormatError) as info:
        load_csv(str(path))
    assert info.value.line == 3


def test_csv_short_row(tmp_path):
    path = tmp_path / 'short.csv'
    path.write_text('a:2,b:2,label:2\n0,1,1\n1,0,0\n0,1\n')
    with pytest.raises(DatasetFormatError) as info:
        load_csv(str(path))
    assert info.value.line == 4


def test_csv_non_integer_cell(tmp_path):
    path = tmp_path / 'text.csv'
    path.write_text('a,b,label\n0,1,1\n0,x,1\n')
    with pytest.raises(DatasetFormatError, match='line 3'):
        load_csv(str(path))


def test_csv_header_only_and_empty(tmp_path):
    path = tmp_path / 'header.csv'
    path.write_text('a:2,label:2\n')
    with pytest.raises(DatasetFormatError, match='no rows'):
        load_csv(str(path))
    path.write_text('')
    with pytest.raises(DatasetFormatError, match='empty'):
        load_csv(str(path))
