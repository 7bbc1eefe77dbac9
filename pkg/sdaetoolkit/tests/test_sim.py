import numpy as np
import scipy.linalg as la
import pytest

from sdaetoolkit.exceptions import OutOfHorizon, InsufficientInputSmoothness, NonFinite, ParseError
from sdaetoolkit.pencil import ModeSystem
from sdaetoolkit.reform import SwitchingSignal, SwitchedDAE
from sdaetoolkit.sim import InputPiece, InputSignal, input_stack, constant_input, load_input_signal, \
    input_signal_to_dict, random_input_signal, expm, simulate, simulate_impulsive, interval_grid
from sdaetoolkit.tests.utils import desk_jump_ode, desk_signal, desk_input, lti_system, random_model_family
from sdaetoolkit.reform import build_jump_ode


def _ramp(t_end=2.):
    return InputSignal((InputPiece(0., [[([0., 1.], 0.)]]),), t_end)


def _sample(trajectory, t):
    index = int(np.argmin(np.abs(trajectory.times - t)))
    assert np.isclose(trajectory.times[index], t)
    return trajectory.states[index], trajectory.outputs[index]


def test_input_derivatives():
    piece = InputPiece(1., [[([1., 2.], 0.5)]])
    values = [piece.derivative(1., order)[0, 0] for order in range(3)]
    assert np.allclose(values, [1., 2.5, 2.25])
    u = InputSignal((InputPiece(0., [[([1.], 0.)]]), InputPiece(1., [[([5.], 0.)]])), 2.)
    assert np.allclose(u.evaluate(1., side='left'), 1.)
    assert np.allclose(u.evaluate(1., side='right'), 5.)
    assert u.derivatives(0.5, 0).shape == (0, 1)
    with pytest.raises(OutOfHorizon):
        u.evaluate(2.5)
    with pytest.raises(OutOfHorizon):
        u.evaluate(0., side='left')


def test_input_stack():
    jos = desk_jump_ode()
    u = _ramp()
    assert np.allclose(input_stack(u, jos.decoupled[0], 1.5), [1.5])
    assert np.allclose(input_stack(u, jos.decoupled[1], 1.5), [1.5, 1.])


def test_input_description():
    u = desk_input()
    assert u.m == 1
    assert u.t_end == 2.
    again = load_input_signal(input_signal_to_dict(u))
    assert np.allclose(again.evaluate(0.7), u.evaluate(0.7))
    with pytest.raises(ParseError):
        load_input_signal({'pieces': []})
    with pytest.raises(ParseError) as e:
        load_input_signal({'pieces': [{'start': 0., 'channels': [[{'coeffs': ['one'], 'rate': 0.}]]}]})
    assert e.value.location == 'pieces[1].channels[1]'
    with pytest.raises(ParseError) as e:
        load_input_signal({'pieces': [{'start': 'zero', 'channels': [[{'coeffs': [1.]}]]}]})
    assert e.value.location == 'pieces[1]'
    with pytest.raises(ParseError):
        load_input_signal({'pieces': [{'start': 0., 'channels': 1.}]})
    with pytest.raises(ParseError):
        InputSignal((InputPiece(0., [[([1.], 0.)]]), InputPiece(0., [[([2.], 0.)]])))


def test_random_input():
    q = desk_signal()
    u = random_input_signal(3, q, np.random.RandomState(seed=0), degree=4)
    assert u.m == 3
    assert np.allclose(u.breakpoints, q.times)
    assert u.t_end == q.t_end


def test_expm_and_grid():
    assert np.allclose(expm(np.array([[0., 1.], [0., 0.]]), 2.), [[1., 2.], [0., 1.]])
    with pytest.raises(NonFinite):
        expm(np.eye(2), np.inf)
    grid = interval_grid(0., 1., 0.3, breakpoints=[0.6, 2.])
    assert len(grid) == 6
    assert 0.6 in grid
    assert np.max(np.diff(grid)) <= 0.3


def test_scalar_ode():
    jos = build_jump_ode(lti_system(-1., 1., 1.))
    q = SwitchingSignal(0., [(0., 0)], 2.)
    trajectory = simulate(jos, q, constant_input(1., 0., 2.), dt=0.1)
    expected = 1. - np.exp(-trajectory.times)
    assert np.allclose(trajectory.states[:, 0], expected, atol=1e-10)
    assert np.allclose(trajectory.outputs[:, 0], expected, atol=1e-10)
    free = simulate(jos, q, constant_input(0., 0., 2.), z0=[2.])
    assert np.isclose(free.states[-1, 0], 2. * np.exp(-2.))


def test_desk_constant_input():
    jos = desk_jump_ode()
    trajectory = simulate(jos, desk_signal(), desk_input())
    z, y = _sample(trajectory, 0.5)
    assert np.allclose(z, [1. - np.exp(-0.5), 0.])
    assert np.allclose(y, [1. - np.exp(-0.5)])
    record = trajectory.switch_records[1]
    assert record.predecessor == 0
    assert np.allclose(record.z_minus, [1. - np.exp(-1.), 0.])
    assert np.allclose(record.z_plus, 0.)
    assert np.allclose(record.y_plus, 0.)
    assert trajectory.switch_records[0].predecessor is None
    assert trajectory.max_impulse() < 1e-12
    assert all(trajectory.impulses[1].numerically_zero)
    assert np.allclose(trajectory.outputs[-1], 0.)


def test_desk_ramp_input():
    jos = desk_jump_ode()
    trajectory = simulate(jos, desk_signal(), _ramp())
    record = trajectory.switch_records[1]
    assert np.allclose(record.z_minus, [np.exp(-1.), 0.])
    # the index-2 mode outputs y = -u'
    _, y = _sample(trajectory, 1.5)
    assert np.allclose(y, [-1.])
    assert trajectory.max_impulse() < 1e-12


def test_trajectory_tables():
    trajectory = simulate(desk_jump_ode(), desk_signal(), desk_input())
    df = trajectory.to_dataframe()
    assert list(df.columns) == ['t', 'z_1', 'z_2', 'y_1']
    assert df['t'].iloc[-1] == 2.
    impulses = trajectory.impulses_to_dataframe()
    assert len(impulses) == 1
    assert impulses['order'].iloc[0] == 1
    assert impulses['mode'].iloc[0] == 2


def test_simulation_errors():
    jos = desk_jump_ode()
    with pytest.raises(OutOfHorizon):
        simulate(jos, desk_signal(), constant_input(1., 0., 1.5))
    rough = InputSignal(desk_input().pieces, 2., max_derivative_order=0)
    with pytest.raises(InsufficientInputSmoothness):
        simulate(jos, desk_signal(), rough)
    with pytest.raises(ValueError):
        simulate(jos, desk_signal(), desk_input(), dt=0.)


def test_dirac_input_form_agrees():
    for k, (jos, q) in enumerate(random_model_family(50, seed=3, n_max=5)):
        u = random_input_signal(jos.m, q, np.random.RandomState(seed=k), degree=jos.n + 1)
        jumps = simulate(jos, q, u)
        diracs = simulate_impulsive(jos, q, u)
        scale = max(1., np.max(np.abs(jumps.states)))
        assert np.allclose(jumps.states, diracs.states, rtol=0., atol=1e-8 * scale)
        output_scale = max(1., np.max(np.abs(jumps.outputs)))
        assert np.allclose(jumps.outputs, diracs.outputs, rtol=0., atol=1e-8 * output_scale)


def _split(q, t1):
    """Restart signal on [t1, t_end] continuing the mode active at t1."""
    active = [mode for t, mode in q.entries if t <= t1][-1]
    later = [(t, mode) for t, mode in q.entries if t > t1]
    return SwitchingSignal(t1, [(t1, active)] + later, q.t_end)


def test_restart_inside_interval():
    for k, (jos, q) in enumerate(random_model_family(20, seed=9)):
        u = random_input_signal(jos.m, q, np.random.RandomState(seed=k), degree=jos.n + 1)
        start, end, _ = q.intervals()[q.K // 2]
        t1 = 0.5 * (start + end)
        full = simulate(jos, q, u)
        first = simulate(jos, q.truncated(t1), u)
        second = simulate(jos, _split(q, t1), u, z0=first.states[-1])
        scale = max(1., np.max(np.abs(full.states)), np.max(np.abs(full.outputs)))
        assert np.allclose(second.states[-1], full.states[-1], rtol=0., atol=1e-9 * scale)
        assert np.allclose(second.outputs[-1], full.outputs[-1], rtol=0., atol=1e-9 * scale)
        skipped = q.K // 2
        for record, expected in zip(second.switch_records[1:], full.switch_records[skipped + 1:]):
            assert np.isclose(record.t, expected.t)
            assert np.allclose(record.z_minus, expected.z_minus, rtol=0., atol=1e-9 * scale)
            assert np.allclose(record.z_plus, expected.z_plus, rtol=0., atol=1e-9 * scale)


def test_single_mode_against_weierstrass_form():
    random_state = np.random.RandomState(seed=5)
    L = np.linalg.qr(random_state.randn(4, 4))[0]
    R = np.linalg.qr(random_state.randn(4, 4))[0]
    J = np.array([[-1., 0.5], [0., -2.]])
    N = np.array([[0., 1.], [0., 0.]])
    E = L @ la.block_diag(np.eye(2), N) @ R
    A = L @ la.block_diag(J, np.eye(2)) @ R
    B = random_state.randn(4, 1)
    C = random_state.randn(1, 4)
    jos = build_jump_ode(SwitchedDAE((ModeSystem(E, A, B, C),)))
    assert jos.decoupled[0].nu == 2
    trajectory = simulate(jos, SwitchingSignal(0., [(0., 0)], 2.), _ramp(), dt=0.1)
    B1, B2 = np.split(L.T @ B, 2)
    J2 = np.linalg.inv(J @ J)
    for t, z, y in zip(trajectory.times, trajectory.states, trajectory.outputs):
        # u = t: v' = J v + B1 t from v(0) = 0 and w = -(B2 u + N B2 u')
        v = J2 @ (la.expm(J * t) - np.eye(2) - J * t) @ B1
        w = -(t * B2 + N @ B2)
        assert np.allclose(z, R.T @ np.vstack([v, np.zeros((2, 1))]).ravel(), atol=1e-10)
        assert np.allclose(y, C @ R.T @ np.vstack([v, w]).ravel(), atol=1e-10)


if __name__ == '__main__':
    test_desk_constant_input()
    test_dirac_input_form_agrees()
