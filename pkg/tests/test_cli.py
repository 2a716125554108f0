# @Time   : 2026/10/18
# @Author : SRSLab Team

import json
import runpy
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from srslab.cli import EXIT_CAPACITY, EXIT_IO, EXIT_OK, EXIT_USAGE, main, resolve_q
from srslab.data import Dataset, save_csv
from srslab.distribution import save_distribution


@pytest.fixture
def cli(tmp_path):
    """``main`` with the output and log directories inside ``tmp_path``."""

    def invoke(command, *args, output='out'):
        directory = tmp_path / output
        argv = [command, '--output', str(directory), '--log-dir', str(tmp_path / 'log'), *map(str, args)]
        return main(argv), directory

    return invoke


def generate_dataset(cli, output='data', *args):
    code, directory = cli('generate', '--scenario', 'chaining', '--p', 40, '--r', 3, '--n', 300,
                          '--name', 'chain', *args, output=output)
    assert code == EXIT_OK
    return directory / 'chain.csv'


def test_generate_is_deterministic(cli):
    first = generate_dataset(cli, 'a', '--seed', 5)
    second = generate_dataset(cli, 'b', '--seed', 5)
    assert first.read_bytes() == second.read_bytes()
    assert (first.parent / 'chain.relevant').read_text() == '0\n1\n2\n'
    config = json.loads((first.parent / 'config.json').read_text())
    assert config['command'] == 'generate' and config['seed'] == 5
    assert b'\r\n' not in first.read_bytes()


def test_generate_default_name_and_madelon_truth(cli):
    code, directory = cli('generate', '--scenario', 'madelon_like', '--p', 50, '--r', 10, '--n', 20)
    assert code == EXIT_OK
    sidecar = directory / 'madelon_like_p50_r10_seed0.relevant'
    assert len(sidecar.read_text().splitlines()) == 10


def test_generate_rejects_r_above_p(cli):
    code, _ = cli('generate', '--scenario', 'clique', '--p', 3, '--r', 4)
    assert code == EXIT_USAGE


def test_run_writes_tables(cli):
    dataset = generate_dataset(cli)
    code, directory = cli('run', '--dataset', dataset, '--q', 8, '--T', 20, '--alpha', 0.5)
    assert code == EXIT_OK
    history = pd.read_csv(directory / 'history.csv')
    assert len(history) == 20
    assert 'f1' in history.columns
    assert (history['subspace_size'] == 8).all()
    importances = pd.read_csv(directory / 'importances.csv')
    assert list(importances.columns) == ['feature', 'name', 'importance', 'found']
    assert len(importances) == 40
    summary = json.loads((directory / 'summary.json').read_text())
    assert summary['runs'][0]['q'] == 8
    assert 0 <= summary['runs'][0]['f1'] <= 1
    curve = pd.read_csv(directory / 'f1_curve.csv')
    assert list(curve.columns) == ['iteration', 'precision', 'recall', 'f1']
    assert list(curve['f1']) == list(history['f1'])


def test_run_is_deterministic(cli):
    dataset = generate_dataset(cli)
    _, first = cli('run', '--dataset', dataset, '--T', 15, '--seed', 3, output='first')
    _, second = cli('run', '--dataset', dataset, '--T', 15, '--seed', 3, output='second')
    for name in ('history.csv', 'importances.csv', 'f1_curve.csv'):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_run_without_iterations(cli):
    dataset = generate_dataset(cli)
    code, directory = cli('run', '--dataset', dataset, '--T', 0)
    assert code == EXIT_OK
    lines = (directory / 'history.csv').read_text().splitlines()
    assert lines == ['iteration,subspace_size,retained_count,accepted_count,new_count,found_size,f1']


def test_run_full_subspace_random_subspace(cli):
    dataset = generate_dataset(cli)
    code, directory = cli('run', '--dataset', dataset, '--q', 'p', '--alpha', 0, '--T', 3)
    assert code == EXIT_OK
    assert (pd.read_csv(directory / 'history.csv')['subspace_size'] == 40).all()


def test_run_repeat_and_holdout(cli):
    dataset = generate_dataset(cli)
    code, directory = cli('run', '--dataset', dataset, '--T', 5, '--repeat', 2, '--seed', 10,
                          '--test-fraction', 0.2)
    assert code == EXIT_OK
    assert (directory / 'seed10' / 'history.csv').exists()
    assert (directory / 'seed11' / 'history.csv').exists()
    summary = json.loads((directory / 'summary.json').read_text())
    assert [run['seed'] for run in summary['runs']] == [10, 11]
    assert summary['report']['runs'] == 2
    assert all(0 <= run['accuracy'] <= 1 for run in summary['runs'])


def test_run_usage_and_io_errors(cli, tmp_path):
    assert cli('run', '--T', 5)[0] == EXIT_USAGE
    assert cli('run', '--dataset', tmp_path / 'missing.csv')[0] == EXIT_IO
    ragged = tmp_path / 'ragged.csv'
    ragged.write_text('a,b,label\n0,1,1\n0,1\n')
    assert cli('run', '--dataset', ragged)[0] == EXIT_IO
    dataset = generate_dataset(cli)
    assert cli('run', '--dataset', dataset, '--q', 41)[0] == EXIT_USAGE
    assert cli('run', '--dataset', dataset, '--q', 'all')[0] == EXIT_USAGE


def test_converge_reference_tables(cli):
    code, directory = cli('converge')
    assert code == EXIT_OK
    tables = pd.read_csv(directory / 'tables.csv')
    assert len(tables) == 15
    chaining = tables[(tables['scenario'] == 'chaining') & (tables['p'] == 10000)].sort_values('r')
    assert chaining['rs_time'].iloc[0] == pytest.approx(100, rel=0.005)
    assert chaining['rs_time'].iloc[1] == pytest.approx(10100, rel=0.005)
    assert (chaining['rs_time'].iloc[2:] > 1e6).all()
    times = pd.read_csv(directory / 'expected_times.csv')
    assert list(times.columns) == ['scenario', 'p', 'q', 'r', 'alpha', 'expected_time']
    assert len(times) == 30


def test_converge_monte_carlo(cli):
    code, directory = cli('converge', '--scenario', 'chaining', '--p', 200, '--q', 20, '--r', 3,
                          '--simulate', 1000, '--horizon', 50)
    assert code == EXIT_OK
    times = pd.read_csv(directory / 'expected_times.csv')
    assert len(times) == 2
    for _, row in times.iterrows():
        assert abs(row['mc_mean'] - row['expected_time']) <= 3 * row['mc_std_error']
    assert len(pd.read_csv(directory / 'curves.csv')) == 102
    assert len(pd.read_csv(directory / 'simulated_curves.csv')) == 102


def test_converge_usage_errors(cli, tmp_path):
    empty = tmp_path / 'empty.yaml'
    empty.write_text('configs: []\n')
    code, _ = cli('converge', '-c', empty)
    assert code == EXIT_USAGE
    assert cli('converge', '--scenario', 'chaining', '--p', 100, '--q', 5, '--r', 6)[0] == EXIT_USAGE
    assert cli('converge', '--scenario', 'chaining', '--p', 100)[0] == EXIT_USAGE
    assert cli('converge', '--scenario', 'clique', '--p', 100, '--q', 10, '--r', 2,
               '--alphas', 0.5)[0] == EXIT_USAGE


def test_converge_config_list(cli, tmp_path):
    config = tmp_path / 'converge.yaml'
    config.write_text('configs:\n  - [marginal, 1000, 50, 5]\n  - {scenario: clique, p: 1000, q: 50, r: 2}\n'
                      'alphas: [0, 1]\nformat: json\n')
    code, directory = cli('converge', '-c', config)
    assert code == EXIT_OK
    records = json.loads((directory / 'tables.json').read_text())
    assert [r['scenario'] for r in records] == ['marginal', 'clique']


def test_oracle_xor(cli, tmp_path, xor_dist):
    path = tmp_path / 'xor.dist'
    save_distribution(xor_dist, str(path))
    code, directory = cli('oracle', '--distribution', path, '--q', 2)
    assert code == EXIT_OK
    relevance = pd.read_csv(directory / 'relevance.csv')
    assert list(relevance['relevance']) == ['strongly_relevant', 'strongly_relevant']
    assert list(relevance['degree']) == [1, 1]
    assert list(relevance['importance']) == pytest.approx([0.5, 0.5])
    oracle = json.loads((directory / 'oracle.json').read_text())
    assert oracle['markov_boundary'] == ['X1', 'X2']
    assert oracle['mutual_information'] == pytest.approx(1.0)


def test_oracle_noise_variable(cli, tmp_path, xor_noise_dist):
    path = tmp_path / 'xor_noise.dist'
    save_distribution(xor_noise_dist, str(path))
    code, directory = cli('oracle', '--distribution', path)
    assert code == EXIT_OK
    noise = pd.read_csv(directory / 'relevance.csv').iloc[2]
    assert noise['relevance'] == 'irrelevant'
    assert noise['importance'] == 0.0
    assert pd.isna(noise['degree'])


def test_oracle_capacity(cli, tmp_path):
    rng = np.random.default_rng(0)
    wide = Dataset(rng.integers(0, 2, size=(50, 13)), rng.integers(0, 2, size=50))
    path = tmp_path / 'wide.csv'
    save_csv(wide, str(path))
    assert cli('oracle', '--dataset', path)[0] == EXIT_CAPACITY
    assert cli('oracle', '--dataset', path, '--variables', 0, 1)[0] == EXIT_OK


def test_oracle_bad_distribution(cli, tmp_path):
    path = tmp_path / 'bad.dist'
    path.write_text('X1:2 Y:2\n0 0 0.5\n1 1 0.25\n')
    assert cli('oracle', '--distribution', path)[0] == EXIT_IO
    assert cli('oracle')[0] == EXIT_USAGE


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(['generate', '--p', 'many']) == EXIT_USAGE
    assert main(['plot']) == EXIT_USAGE


def test_resolve_q():
    assert resolve_q(None, 200) == 10
    assert resolve_q(None, 3) == 1
    assert resolve_q('p', 40) == 40
    assert resolve_q('12', 40) == 12
    with pytest.raises(ValueError):
        resolve_q('half', 40)


def test_converge_is_deterministic(cli):
    for args in ((), ('--scenario', 'chaining', '--p', 200, '--q', 20, '--r', 3, '--alphas', 0, 0.5, 1,
                      '--simulate', 300, '--horizon', 20, '--seed', 4)):
        code, first = cli('converge', *args, output='first')
        assert code == EXIT_OK
        code, second = cli('converge', *args, output='second')
        assert code == EXIT_OK
        tables = sorted(path.name for path in first.glob('*.csv'))
        assert tables == sorted(path.name for path in second.glob('*.csv'))
        for name in tables:
            assert (first / name).read_bytes() == (second / name).read_bytes()
    assert 'simulated_curves.csv' in tables


def test_oracle_is_deterministic(cli, tmp_path, xor_noise_dist):
    path = tmp_path / 'xor_noise.dist'
    save_distribution(xor_noise_dist, str(path))
    _, first = cli('oracle', '--distribution', path, '--q', 2, output='first')
    _, second = cli('oracle', '--distribution', path, '--q', 2, output='second')
    for name in ('relevance.csv', 'oracle.json'):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_script_entry_returns_exit_codes(monkeypatch, tmp_path):
    script = Path(__file__).resolve().parents[1] / 'run_srslab.py'
    monkeypatch.setattr(sys, 'argv', ['run_srslab.py', 'oracle', '--output', str(tmp_path / 'out'),
                                      '--log-dir', str(tmp_path / 'log')])
    with pytest.raises(SystemExit) as info:
        runpy.run_path(str(script), run_name='__main__')
    assert info.value.code == EXIT_USAGE
