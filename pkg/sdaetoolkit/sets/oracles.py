"""
Simulation oracles for the reachable and unobservable subspaces.

The subspaces computed by the recursions are compared against what the simulator
actually produces for random inputs and initial states.
"""

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from ..sim import simulate, random_input_signal, constant_input
from ..subspace import image, same_subspace
from ..utils import update_all_param_dicts_with_kwargs
from .recursions import reach_recursion, unobs_recursion
from .theorems import VerificationReport


def _terminal_state(jos, q, u, **kwargs):
    trajectory = simulate(jos, q, u, **kwargs)
    return trajectory.states[-1], np.max(np.abs(trajectory.states))


def _response(trajectory):
    output = np.max(np.abs(trajectory.outputs)) if trajectory.outputs.size > 0 else 0.
    return max(output, trajectory.max_impulse())


def reachability_oracle(jos, q, n_inputs=None, random_state=None, oracle_tol_rank=1e-10, tol_angle=1e-6,
                        **kwargs):
    """
    Simulates the system from rest under random smooth inputs and compares the span of the terminal
    states z(t_end-) with the reachable subspace M_K of reach_recursion.

    Parameters
    ----------
    jos: JumpOdeSystem
        The reformulated system
    q: SwitchingSignal
        Switching signal
    n_inputs: int
        Number of random inputs (default 20 n)
    random_state: np.random.RandomState
        Random generator (default seeded with the 'seed' parameter)
    oracle_tol_rank: float
        Relative rank tolerance for the span of the terminal states, relative to the largest state
        magnitude seen along all trajectories
    tol_angle: float
        Largest admitted principal angle between the two subspaces
    **kwargs: keyword arguments
        Tolerances, simulation parameters, n_jobs, joblib_backend and verbose

    Returns
    -------
    report: VerificationReport
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    if random_state is None:
        random_state = np.random.RandomState(seed=params['seed'])
    if n_inputs is None:
        n_inputs = 20 * jos.n
    degree = jos.n + jos.nu_max + 1
    inputs = [random_input_signal(jos.m, q, random_state, degree=degree) for _ in range(n_inputs)]

    if params['n_jobs'] > 1:
        results = Parallel(n_jobs=params['n_jobs'], backend=params['joblib_backend'])(
            delayed(_terminal_state)(jos, q, u, **kwargs) for u in inputs)
    else:
        if params['verbose']:
            inputs = tqdm(inputs, ascii=True, desc="Simulating random inputs")
        results = [_terminal_state(jos, q, u, **kwargs) for u in inputs]

    terminal = np.array([state for state, _ in results]).T.reshape(jos.n, -1)
    scale = max([magnitude for _, magnitude in results] + [0.])
    simulated = image(terminal, scale=scale, tol_rank=oracle_tol_rank)
    M_K = reach_recursion(jos, q, **kwargs).R_q
    verdict = same_subspace(simulated, M_K, tol_angle)
    details = {'dim_M_K': M_K.dim, 'dim_simulated': simulated.dim, 'n_inputs': n_inputs}
    return VerificationReport('reachability_oracle', verdict.contained, verdict.angle, details)


def observability_oracle(jos, q, n_trials=10, random_state=None, zero_tol=1e-8, response_tol=1e-4,
                         min_component=0.1, **kwargs):
    """
    Free responses from t0+ with u = 0.

    Every basis vector of N_0 must produce outputs and impulse coefficients below zero_tol (relative to the
    largest free response observed), and random initial states with a component of norm at least
    min_component in O_q must produce some output or impulse above response_tol.

    Returns
    -------
    report: VerificationReport
        value is the largest response of an unobservable initial state
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    if random_state is None:
        random_state = np.random.RandomState(seed=params['seed'])
    obs = unobs_recursion(jos, q, **kwargs)
    N_0, O_q = obs.UO_q, obs.O_q
    u = constant_input(np.zeros(jos.m), q.t0, q.t_end)

    observable_responses = []
    if O_q.dim > 0:
        for _ in range(n_trials):
            z0 = N_0.basis @ random_state.randn(N_0.dim) if N_0.dim > 0 else np.zeros(jos.n)
            direction = O_q.basis @ random_state.randn(O_q.dim)
            z0 = z0 + min_component * direction / np.linalg.norm(direction)
            observable_responses.append(_response(simulate(jos, q, u, z0=z0, **kwargs)))

    hidden_responses = [_response(simulate(jos, q, u, z0=z, **kwargs)) for z in N_0.basis.T]
    scale = max([1.] + observable_responses)
    hidden = max(hidden_responses + [0.])
    weakest = min(observable_responses) if observable_responses else np.inf
    passed = hidden <= zero_tol * scale and weakest >= response_tol
    details = {'dim_UO_q': N_0.dim, 'dim_O_q': O_q.dim, 'weakest_observable_response': weakest}
    return VerificationReport('observability_oracle', bool(passed), hidden, details)
