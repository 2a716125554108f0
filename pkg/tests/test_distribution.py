# @Time   : 2026/10/17
# @Author : SRSLab Team

import numpy as np
import pytest

from srslab.data import GeneratorSpec, population
from srslab.distribution import (IRRELEVANT, STRONGLY_RELEVANT, WEAKLY_RELEVANT, JointDistribution,
                                 asymptotic_importance, conditional_mutual_information, degree_histogram,
                                 load_distribution, markov_boundary, mutual_information, relevance_class,
                                 save_distribution)
from srslab.exceptions import CapacityError, DistributionError


def chaining_population(r, p=None):
    return population(GeneratorSpec('chaining', p if p is not None else r, r))


def test_joint_distribution_validation():
    with pytest.raises(DistributionError):
        JointDistribution(np.full((2, 2), 0.3))
    with pytest.raises(DistributionError):
        JointDistribution(np.array([[1.5, -0.5], [0.0, 0.0]]))
    with pytest.raises(DistributionError):
        JointDistribution(np.full((2, 2), 0.25), ['Y'])
    dist = JointDistribution(np.full((2, 3, 2), 1 / 12))
    assert dist.arities == (2, 3)
    assert dist.output_arity == 2
    assert dist.variable_names == ('X1', 'X2')
    assert not dist.probabilities.flags.writeable


def test_cmi_xor(xor_dist):
    assert conditional_mutual_information(xor_dist, 'X1') == pytest.approx(0.0, abs=1e-12)
    assert conditional_mutual_information(xor_dist, 'X1', conditioning=['X2']) == pytest.approx(1.0)


def test_cmi_copy(copy_dist):
    assert conditional_mutual_information(copy_dist, 'X1') == pytest.approx(1.0)
    assert conditional_mutual_information(copy_dist, 'X2') == 0.0


def test_cmi_errors(xor_dist):
    with pytest.raises(ValueError):
        conditional_mutual_information(xor_dist, 'X1', conditioning=['X1'])
    with pytest.raises(ValueError):
        conditional_mutual_information(xor_dist, 'Z')
    with pytest.raises(ValueError):
        conditional_mutual_information(xor_dist, 'X1', targets_output=False)


def test_cmi_symmetric_between_inputs():
    rng = np.random.default_rng(0)
    table = rng.random((2, 3, 2, 2))
    dist = JointDistribution(table / table.sum())
    forward = conditional_mutual_information(dist, 'X1', targets_output=False, target='X2', conditioning=['X3'])
    backward = conditional_mutual_information(dist, 'X2', targets_output=False, target='X1', conditioning=['X3'])
    assert forward == pytest.approx(backward, abs=1e-12)
    assert forward >= 0


def test_relevance_class_xor(xor_noise_dist):
    report = relevance_class(xor_noise_dist, 'X1')
    assert report.relevance_class == STRONGLY_RELEVANT
    assert report.degree == 1
    assert report.witness_conditioning == ('X2',)
    noise = relevance_class(xor_noise_dist, 'X3')
    assert noise.relevance_class == IRRELEVANT
    assert noise.degree is None
    assert noise.witness_conditioning is None
    assert not noise.is_relevant


def test_relevance_class_duplicates(duplicate_dist):
    for variable in ('X1', 'X2'):
        report = relevance_class(duplicate_dist, variable)
        assert report.relevance_class == WEAKLY_RELEVANT
        assert report.degree == 0
        assert report.witness_conditioning == ()


def test_relevance_capacity():
    dist = JointDistribution.uniform([2] * 13)
    with pytest.raises(CapacityError, match='12'):
        relevance_class(dist, 0)
    assert relevance_class(dist, 0, limit=13).relevance_class == IRRELEVANT


def test_markov_boundary():
    smoothed = JointDistribution(np.zeros((2, 2, 2)) + 0.125)
    xor = np.zeros((2, 2, 2))
    for a in (0, 1):
        for b in (0, 1):
            xor[a, b, a ^ b] = 0.25
    smoothed = JointDistribution(xor).mixture(smoothed, 0.9)
    boundary = markov_boundary(smoothed)
    assert boundary.variables == ('X1', 'X2')
    assert boundary.strictly_positive

    assert markov_boundary(JointDistribution.uniform([2, 2])).variables == ()


def test_markov_boundary_flags_zero_entries(copy_dist):
    boundary = markov_boundary(copy_dist)
    assert boundary.variables == ('X1',)
    assert not boundary.strictly_positive


def test_asymptotic_importance_xor(xor_dist):
    assert asymptotic_importance(xor_dist, 'X1', 2) == pytest.approx(0.5)
    assert asymptotic_importance(xor_dist, 'X1', 1) == 0.0
    with pytest.raises(ValueError):
        asymptotic_importance(xor_dist, 'X1', 3)


def test_asymptotic_importance_irrelevant(xor_noise_dist):
    for q in (1, 2, 3):
        assert asymptotic_importance(xor_noise_dist, 'X3', q) == 0.0


def test_asymptotic_importances_add_up_to_mutual_information():
    dist = chaining_population(3, p=4)
    total = sum(asymptotic_importance(dist, i, dist.p) for i in range(dist.p))
    assert total == pytest.approx(mutual_information(dist), abs=1e-10)


def test_asymptotic_importance_positive_iff_degree_below_q():
    dist = chaining_population(3, p=4)
    for i in range(dist.p):
        degree = relevance_class(dist, i).degree
        previous = 0.0
        for q in range(1, dist.p + 1):
            value = asymptotic_importance(dist, i, q)
            assert (value > 0) == (degree is not None and degree < q)
            assert value >= previous - 1e-15
            previous = value


def test_degree_histogram(xor_dist, copy_dist):
    assert degree_histogram(xor_dist) == {1: 2}
    assert degree_histogram(copy_dist) == {0: 1}
    assert degree_histogram(chaining_population(3)) == {0: 1, 1: 1, 2: 1}


def test_witness_properties():
    dist = chaining_population(4, p=5)
    reports = [relevance_class(dist, i) for i in range(dist.p)]
    degrees = {r.variable: r.degree for r in reports}
    for report in reports:
        if not report.is_relevant:
            continue
        for name in report.witness_conditioning:
            assert degrees[name] is not None
            assert degrees[name] <= len(report.witness_conditioning)


def test_distribution_file(tmp_path, xor_noise_dist):
    path = str(tmp_path / 'xor.dist')
    save_distribution(xor_noise_dist, path)
    assert load_distribution(path) == xor_noise_dist


def test_distribution_file_errors(tmp_path):
    path = tmp_path / 'bad.dist'
    path.write_text('# comment\nA:2 Y:2\n0 0 0.5\n0 0 0.5\n')
    with pytest.raises(DistributionError, match='line 4'):
        load_distribution(str(path))
    path.write_text('A:2 Y:2\n0 0 0.5\n1 1 0.25\n')
    with pytest.raises(DistributionError, match='sum'):
        load_distribution(str(path))
    path.write_text('A:2 Y:2\n2 0 1.0\n')
    with pytest.raises(DistributionError, match='line 2'):
        load_distribution(str(path))
