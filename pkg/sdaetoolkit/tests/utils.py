import numpy as np
from pathlib import Path

from sdaetoolkit.pencil import ModeSystem
from sdaetoolkit.reform import SwitchedDAE, SwitchingSignal, load_switched_dae, load_switching_signal, \
    build_jump_ode, random_switched_dae, random_switching_signal
from sdaetoolkit.sim import load_input_signal

data_folder = Path(__file__).parent / 'data'


def data_path(name):
    return str(data_folder / name)


def desk_system():
    '''
    Two-mode model: an index-1 mode with one differential state followed by an index-2 mode
    without differential states.
    '''
    return load_switched_dae(data_path('desk_model.json'))


def desk_jump_ode():
    return build_jump_ode(desk_system())


def desk_signal(t_switch=1., t_end=2.):
    return SwitchingSignal(0., [(0., 0), (t_switch, 1)], t_end)


def desk_input():
    return load_input_signal(data_path('desk_input.json'))


def desk_signal_from_file():
    return load_switching_signal(data_path('desk_signal.json'), 2)


def scalar_two_mode_system():
    return load_switched_dae(data_path('scalar_two_mode.json'))


def lti_system(A, B, C, n_modes=1):
    '''
    Switched system whose modes are all the ODE x' = A x + B u, y = C x.
    '''
    A, B, C = np.atleast_2d(A), np.atleast_2d(B), np.atleast_2d(C)
    mode = ModeSystem(np.eye(A.shape[0]), A, B, C)
    return SwitchedDAE(tuple([mode] * n_modes))


def hankel_test_system():
    '''
    Diagonal ODE with hankel values 2 and 1e-8.
    '''
    b = np.diag([2., np.sqrt(2.) * 1e-4])
    return lti_system(-np.eye(2), b, b)


def common_projector_system():
    '''
    Two index-1 modes sharing E = diag(1, 0) and the projector diag(1, 0).
    '''
    E = np.diag([1., 0.])
    first = ModeSystem(E, np.diag([-1., 1.]), np.array([[1.], [1.]]), np.array([[1., 1.]]))
    second = ModeSystem(E, np.diag([-2., 1.]), np.array([[1.], [0.]]), np.array([[1., 0.]]))
    return SwitchedDAE((first, second))


def random_model_family(n_trials, seed=0, n_max=4, n_modes_max=3, K_max=3, ode=False):
    '''
    Seeded random (jump-ODE system, switching signal) pairs.
    '''
    random_state = np.random.RandomState(seed=seed)
    family = []
    for _ in range(n_trials):
        n = random_state.randint(2, n_max + 1)
        n_modes = random_state.randint(1, n_modes_max + 1)
        K = random_state.randint(0, K_max + 1)
        dae = random_switched_dae(n, n_modes, random_state, ode=ode)
        family.append((build_jump_ode(dae), random_switching_signal(n_modes, K, random_state)))
    return family
