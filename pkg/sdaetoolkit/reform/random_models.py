import numpy as np

from ..pencil import ModeSystem, random_regular_pencil
from .switched_dae import SwitchedDAE, SwitchingSignal


def random_switched_dae(n, n_modes, random_state=None, m=1, p=1, max_index=2, shift=1.5, ode=False):
    """
    Random switched DAE whose modes are regular pencils with random algebraic parts.

    Parameters
    ----------
    n: int
        State dimension
    n_modes: int
        Number of modes
    random_state: np.random.RandomState
        Random generator
    m, p: int
        Number of inputs and outputs
    max_index: int
        Largest nilpotency index of the algebraic parts
    shift: float
        Stability shift of the differential parts (see random_regular_pencil)
    ode: bool
        If True every mode has E = I

    Returns
    -------
    sys: SwitchedDAE
    """
    if random_state is None:
        random_state = np.random.RandomState(seed=0)
    modes = []
    for _ in range(n_modes):
        if ode:
            E = np.eye(n)
            A = random_state.randn(n, n) / np.sqrt(n) - shift * np.eye(n)
        else:
            n_N = random_state.randint(0, n)
            nu = random_state.randint(1, min(n_N, max_index) + 1) if n_N > 0 else None
            E, A = random_regular_pencil(n, n_N, nu, random_state, shift=shift)
        modes.append(ModeSystem(E, A, random_state.randn(n, m), random_state.randn(p, n)))
    return SwitchedDAE(tuple(modes))


def random_switching_signal(n_modes, K, random_state=None, t0=0., min_duration=0.5, max_duration=1.5):
    """
    Random signal with K switches; consecutive modes differ whenever there is more than one mode.
    """
    if random_state is None:
        random_state = np.random.RandomState(seed=0)
    durations = random_state.uniform(min_duration, max_duration, size=K + 1)
    modes = [random_state.randint(n_modes)]
    for _ in range(K):
        if n_modes == 1:
            modes.append(0)
        else:
            modes.append((modes[-1] + random_state.randint(1, n_modes)) % n_modes)
    times = t0 + np.concatenate([[0.], np.cumsum(durations[:-1])])
    return SwitchingSignal(t0, list(zip(times, modes)), t0 + durations.sum())
