import json

import numpy as np
import pandas
import pytest

from sdaetoolkit.cli import main, parse_args, parse_model, RunConfig, load_system, write_matrix, EXIT_OK, \
    EXIT_INVALID, EXIT_NUMERICAL
from sdaetoolkit.exceptions import ValidationError, ParseError, DimensionMismatch
from sdaetoolkit.tests.utils import data_path


def _desk_args(command, out_dir, *extra):
    return [command, data_path('desk_model.json'), '--signal', data_path('desk_signal.json'),
            '-o', str(out_dir)] + list(extra)


def test_parse_args():
    config = parse_args(['reduce', 'model.json', '-r', '2', '--tol-rank', '1e-8', '--restrict'])
    assert config.command == 'reduce'
    assert config.order == 2
    assert config.restrict
    assert config.seed == 42
    kwargs = config.toolkit_kwargs()
    assert kwargs['tol_rank'] == 1e-8
    assert 'dt' not in kwargs
    with pytest.raises(ParseError):
        parse_args(['unknown', 'model.json'])
    with pytest.raises(ValidationError):
        RunConfig(command='simulate', model='model.json', dt=-1.)
    with pytest.raises(SystemExit):
        parse_args(['--version'])


def test_parse_model(tmp_path):
    dae = parse_model(data_path('desk_model.json'))
    assert (dae.n, dae.m, dae.p, dae.n_modes) == (2, 1, 1, 2)
    path = tmp_path / 'wrong_b.json'
    path.write_text(json.dumps({'n': 2, 'm': 1, 'p': 1,
                                'modes': [{'E': [[1, 0], [0, 1]], 'A': [[-1, 0], [0, -1]], 'B': [[1, 2]],
                                           'C': [[1, 0]]}]}))
    with pytest.raises(DimensionMismatch):
        parse_model(str(path))


def test_load_system(tmp_path):
    dae, jos = load_system(data_path('desk_model.json'))
    assert dae.n_modes == 2
    assert main(['reform', data_path('desk_model.json'), '-o', str(tmp_path)]) == EXIT_OK
    dae, loaded = load_system(str(tmp_path / 'reform.json'))
    assert dae is None
    assert np.allclose(loaded.aug_c(0, 1), jos.aug_c(0, 1))


def test_check_and_reform(tmp_path):
    assert main(['check', data_path('desk_model.json'), '-o', str(tmp_path)]) == EXIT_OK
    check = pandas.read_csv(tmp_path / 'check.csv')
    assert list(check['nu']) == [1, 2]
    assert list(check['n_J']) == [1, 0]
    assert main(['reform', data_path('desk_model.json'), '-o', str(tmp_path)]) == EXIT_OK
    D = pandas.read_csv(tmp_path / 'mode2_D.csv').values
    assert np.allclose(D, [[0., -1.]])
    # the reformulated system no longer carries the pencils
    assert main(['check', str(tmp_path / 'reform.json'), '-o', str(tmp_path)]) == EXIT_INVALID


def test_reach_and_obs(tmp_path):
    assert main(_desk_args('reach', tmp_path)) == EXIT_OK
    reach = pandas.read_csv(tmp_path / 'reach.csv')
    assert list(reach['dim_M']) == [1, 0]
    assert (tmp_path / 'reach_Mtilde_0.csv').exists()
    assert main(_desk_args('obs', tmp_path)) == EXIT_OK
    obs = pandas.read_csv(tmp_path / 'obs.csv')
    assert list(obs['dim_N']) == [0, 2]
    assert pandas.read_csv(tmp_path / 'obs_O_q.csv').shape == (2, 2)
    assert main(['reach', data_path('desk_model.json'), '-o', str(tmp_path)]) == EXIT_INVALID


def test_simulate(tmp_path):
    args = _desk_args('simulate', tmp_path, '--input', data_path('desk_input.json'), '--dt', '0.1')
    assert main(args) == EXIT_OK
    with open(tmp_path / 'trajectory.csv', 'rb') as f:
        text = f.read().decode()
    assert '\r\n' not in text
    assert text.splitlines()[0] == 't,z_1,z_2,y_1'
    assert '0.10000000000000001' in text
    trajectory = pandas.read_csv(tmp_path / 'trajectory.csv')
    row = trajectory[np.isclose(trajectory['t'], 0.5)].iloc[0]
    assert np.isclose(row['z_1'], 1. - np.exp(-0.5))
    impulses = pandas.read_csv(tmp_path / 'impulses.csv')
    assert len(impulses) == 1


def test_simulate_short_horizon(tmp_path):
    signal = {'t0': 0., 't_end': 1., 'entries': [{'t': 0., 'mode': 1}, {'t': 1., 'mode': 2}]}
    path = tmp_path / 'short_signal.json'
    path.write_text(json.dumps(signal))
    args = ['simulate', data_path('desk_model.json'), '--signal', str(path), '-o', str(tmp_path)]
    assert main(args) == EXIT_INVALID
    assert not (tmp_path / 'trajectory.csv').exists()


def test_gramians(tmp_path):
    assert main(['gramians', data_path('desk_model.json'), '-o', str(tmp_path)]) == EXIT_NUMERICAL
    assert main(['gramians', data_path('desk_model.json'), '--restrict', '-o', str(tmp_path)]) == EXIT_INVALID
    assert main(['gramians', data_path('scalar_two_mode.json'), '-o', str(tmp_path)]) == EXIT_OK
    P = pandas.read_csv(tmp_path / 'gramian_P.csv').values
    assert np.allclose(P, [[2.]])
    summary = pandas.read_csv(tmp_path / 'gramians_summary.csv')
    assert {'residual_P', 'operator_stable', 'hankel_1'} <= set(summary['key'])
    values = summary.set_index('key')['value']
    assert np.isclose(float(values['hankel_1']), 2.)


def test_reduce(tmp_path):
    signal = {'t0': 0., 't_end': 2., 'entries': [{'t': 0., 'mode': 1}, {'t': 1., 'mode': 2}]}
    path = tmp_path / 'signal.json'
    path.write_text(json.dumps(signal))
    base = ['reduce', data_path('scalar_two_mode.json'), '--signal', str(path), '-o', str(tmp_path)]
    assert main(base + ['-r', '1']) == EXIT_OK
    comparison = pandas.read_csv(tmp_path / 'reduce_comparison.csv')
    errors = dict(zip(comparison['key'], comparison['value']))
    assert float(errors['max_output_error']) < 1e-8
    hankel = pandas.read_csv(tmp_path / 'hankel.csv')
    assert np.isclose(hankel['hankel'].iloc[0], 2.)
    assert (tmp_path / 'reduced.json').exists()
    assert main(base + ['-r', '2']) == EXIT_INVALID
    assert main(base) == EXIT_INVALID


def test_verify(tmp_path):
    args = _desk_args('verify', tmp_path, '--input', data_path('desk_input.json'))
    assert main(args) == EXIT_OK
    report = pandas.read_csv(tmp_path / 'verify.csv')
    assert set(report['check']) >= {'pencil_invariants', 'theorem1', 'theorem2', 'gramian_containment'}
    status = report.set_index('check')['status']
    assert status['gramian_containment'] == 'skipped'
    assert not (report['status'] == 'failed').any()


def test_write_matrix(tmp_path):
    write_matrix(tmp_path / 'nested' / 'basis.csv', np.zeros((3, 0)), prefix='v')
    with open(tmp_path / 'nested' / 'basis.csv', 'r') as f:
        lines = f.read().splitlines()
    assert len(lines) == 4


def test_invalid_model(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"n": 2, "m": 1, "p": 1, "modes": [{"E": [[1, 0], [0, 1]]}]}')
    assert main(['check', str(path), '-o', str(tmp_path)]) == EXIT_INVALID
    assert main(['check', str(tmp_path / 'missing.json'), '-o', str(tmp_path)]) == EXIT_INVALID


def test_non_numeric_signal(tmp_path):
    path = tmp_path / 'signal.json'
    path.write_text(json.dumps({'t0': 0., 't_end': 2., 'entries': [{'t': 'zero', 'mode': 1}]}))
    args = ['reach', data_path('desk_model.json'), '--signal', str(path), '-o', str(tmp_path)]
    assert main(args) == EXIT_INVALID
    document = {'format': 'jump_ode', 'n': 2, 'm': 1, 'p': 1, 'modes': []}
    path = tmp_path / 'reform.json'
    path.write_text(json.dumps(document))
    assert main(['reach', str(path), '--signal', data_path('desk_signal.json'), '-o', str(tmp_path)]) == EXIT_INVALID


def test_repeated_runs_write_identical_files(tmp_path):
    for command in ('reach', 'obs', 'simulate', 'verify'):
        outputs = []
        for name in ('first', 'second'):
            out_dir = tmp_path / command / name
            assert main(_desk_args(command, out_dir, '--input', data_path('desk_input.json'))) == EXIT_OK
            outputs.append({path.name: path.read_bytes() for path in sorted(out_dir.iterdir())})
        assert outputs[0] == outputs[1]
        assert len(outputs[0]) > 0


def test_reach_from_reformulated_model(tmp_path):
    assert main(['reform', data_path('desk_model.json'), '-o', str(tmp_path / 'reform')]) == EXIT_OK
    reformulated = str(tmp_path / 'reform' / 'reform.json')
    for model, name in ((data_path('desk_model.json'), 'direct'), (reformulated, 'reloaded')):
        args = ['reach', model, '--signal', data_path('desk_signal.json'), '-o', str(tmp_path / name)]
        assert main(args) == EXIT_OK
    direct = pandas.read_csv(tmp_path / 'direct' / 'reach.csv')
    reloaded = pandas.read_csv(tmp_path / 'reloaded' / 'reach.csv')
    assert direct.equals(reloaded)
    for k in range(len(direct)):
        for kind in ('M', 'Mtilde'):
            name = 'reach_{}_{}.csv'.format(kind, k)
            first = pandas.read_csv(tmp_path / 'direct' / name).values
            second = pandas.read_csv(tmp_path / 'reloaded' / name).values
            assert first.shape == second.shape
            assert np.allclose(first @ first.T, second @ second.T, atol=1e-12)


if __name__ == '__main__':
    test_parse_args()
