"""
Interval-wise simulation of the switched ODE with jumps and output impulses.

Flows are propagated with matrix exponentials; the convolution with the input is evaluated by
Gauss-Legendre quadrature on substeps that never cross a switching time or an input breakpoint.
"""

import numpy as np
import scipy.linalg as la
from numpy.polynomial.legendre import leggauss

from ..exceptions import NonFinite, OutOfHorizon
from ..utils import update_all_param_dicts_with_kwargs, as_matrix
from .input_signal import input_stack
from .trajectory import Trajectory, SwitchRecord, ImpulseRecord


def expm(M, t=1.):
    """
    Matrix exponential exp(M t) by scaling and squaring with a Pade approximant.
    """
    M = as_matrix(M, 'M')
    if not np.isfinite(t):
        raise NonFinite("time argument of the matrix exponential is not finite")
    result = la.expm(M * t)
    if not np.all(np.isfinite(result)):
        raise NonFinite("matrix exponential overflowed for t = {}".format(t))
    return result


def interval_grid(t_start, t_stop, dt, breakpoints=()):
    """Grid from t_start to t_stop with steps of at most dt, breakpoints inside the interval included."""
    n_steps = max(int(np.ceil((t_stop - t_start) / dt - 1e-12)), 1)
    grid = np.linspace(t_start, t_stop, n_steps + 1)
    inner = [b for b in breakpoints if t_start < b < t_stop]
    if inner:
        grid = np.unique(np.concatenate([grid, inner]))
    return grid


class _IntervalFlow:
    """Exact flow of z' = A z + B u between grid points, exponentials cached per step length."""

    def __init__(self, A, B, u, quad_order):
        self.A = A
        self.B = B
        self.u = u
        self.nodes, self.weights = leggauss(quad_order)
        self._cache = {}

    def _step_matrices(self, h):
        if h not in self._cache:
            Phi = expm(self.A, h)
            kernels = [0.5 * h * w * expm(self.A, 0.5 * (1. - x) * h) @ self.B
                       for x, w in zip(self.nodes, self.weights)]
            self._cache[h] = (Phi, kernels)
        return self._cache[h]

    def propagate(self, grid, z_start):
        states = [z_start]
        z = z_start
        for a, b in zip(grid[:-1], grid[1:]):
            h = b - a
            Phi, kernels = self._step_matrices(h)
            z = Phi @ z
            if self.B.shape[1] > 0:
                piece = self.u.piece_at(0.5 * (a + b))
                values = piece.derivative(a + 0.5 * (self.nodes + 1.) * h)
                for kernel, value in zip(kernels, values):
                    z = z + kernel @ value
            states.append(z)
        return np.array(states)


def _impulse_record(mode, mode_index, t, z_minus, input_jump, zero_tol):
    coefficients, flags = [], []
    difference = z_minus - input_jump
    for block in mode.impc_blocks:
        c = block @ difference
        scale = max(1., np.linalg.norm(block) * max(np.linalg.norm(z_minus), np.linalg.norm(input_jump)))
        coefficients.append(c)
        flags.append(bool(np.linalg.norm(c) <= zero_tol * scale))
    return ImpulseRecord(t, mode_index, tuple(coefficients), tuple(flags))


def _check_horizon(q, u):
    if u.t_start > q.t0 or u.t_end < q.t_end:
        raise OutOfHorizon("input defined on [{}, {}] does not cover the signal horizon [{}, {}]"
                           .format(u.t_start, u.t_end, q.t0, q.t_end))


def _run(jos, q, u, dt, z0, impulsive, params):
    if not dt > 0:
        raise ValueError("'dt' must be positive")
    q.check_modes(jos.n_modes)
    _check_horizon(q, u)
    # every derivative order any mode needs, requested once up front
    u.derivatives(q.t0, jos.nu_max, 'right')

    n, p, m = jos.n, jos.p, jos.m
    times, states, outputs = [], [], []
    switch_records, impulses = [], []
    z_minus = np.zeros(n)
    y_minus = np.zeros(p)
    previous = None
    breakpoints = u.breakpoints

    for t_k, t_next, j in q.intervals():
        mode = jos.decoupled[j]
        U_plus = input_stack(u, mode, t_k, 'right')
        if previous is None:
            jump_input = np.zeros(n)
            state_plus = mode.Pi @ z_minus if z0 is None else np.asarray(z0, dtype=float)
            kick = np.zeros(n)
        else:
            prev_mode = jos.decoupled[previous]
            U_prev = input_stack(u, prev_mode, t_k, 'left')
            jump_input = prev_mode.JumpB @ U_prev
            if impulsive:
                # Dirac input weighted by the augmented input columns
                state_plus = mode.Pi @ z_minus
                kick = jos.aug_b(j, previous)[:, m:] @ U_prev
            else:
                state_plus = mode.Pi @ (z_minus + jump_input)
                kick = np.zeros(n)

        impulses.append(_impulse_record(mode, j, t_k, z_minus, mode.JumpB @ U_plus - jump_input,
                                        params['impulse_zero_tol']))

        grid = interval_grid(t_k, t_next, dt, breakpoints)
        flow = _IntervalFlow(mode.Adiff, mode.Bdiff, u, params['quad_order'])
        interval_states = flow.propagate(grid, state_plus)
        if impulsive:
            interval_states = interval_states + np.array([expm(mode.Adiff, t - t_k) @ kick for t in grid])

        interval_outputs = []
        for i, (t, z) in enumerate(zip(grid, interval_states)):
            U = input_stack(u, mode, t, 'left' if i == len(grid) - 1 else 'right')
            interval_outputs.append(mode.Cdiff @ z + mode.D @ U)
        interval_outputs = np.array(interval_outputs)

        switch_records.append(SwitchRecord(t_k, j, previous, z_minus, interval_states[0], y_minus,
                                           interval_outputs[0]))
        times.extend(grid[:-1])
        states.extend(interval_states[:-1])
        outputs.extend(interval_outputs[:-1])
        z_minus = interval_states[-1]
        y_minus = interval_outputs[-1]
        previous = j

    times.append(q.t_end)
    states.append(z_minus)
    outputs.append(y_minus)
    return Trajectory(np.array(times), np.array(states), np.array(outputs).reshape(len(times), p),
                      tuple(switch_records), tuple(impulses))


def simulate(jos, q, u, dt=None, z0=None, **kwargs):
    """
    Simulates the jump-ODE system along a switching signal.

    On each interval z(t) = exp(Adiff (t - t_k)) z(t_k+) + int exp(Adiff (t - s)) Bdiff u(s) ds and
    y = Cdiff z + D U. At each t_k the state jumps to Pi_k (z(t_k-) + JumpB_prev U_prev(t_k-)) and the output
    picks up Dirac impulses with coefficients ImpC_i (z(t_k-) - JumpB_k U_k(t_k+) + JumpB_prev U_prev(t_k-)).
    At t0 there is no predecessor and z(t0-) = 0.

    Parameters
    ----------
    jos: JumpOdeSystem
        The reformulated system
    q: SwitchingSignal
        Switching signal
    u: InputSignal
        Input covering [q.t0, q.t_end]
    dt: float
        Largest step between samples (default from the simulation parameters)
    z0: np.ndarray
        State at t0+ overriding the zero initial jump, used for free responses
    **kwargs: keyword arguments
        quad_order: int
            Gauss-Legendre nodes per substep (default 6)
        impulse_zero_tol: float
            Relative tolerance flagging impulse coefficients as numerically zero

    Returns
    -------
    trajectory: Trajectory
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    dt = params['dt'] if dt is None else dt
    return _run(jos, q, u, dt, z0, False, params)


def simulate_impulsive(jos, q, u, dt=None, z0=None, **kwargs):
    """
    Same trajectory computed with state-only jumps z(t_k+) = Pi z(t_k-) and the jump input moved into a
    Dirac input through the augmented input matrix; each Dirac at t_k adds
    exp(Adiff (t - t_k)) Pi_k JumpB_prev U_prev(t_k-) to the flow.
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    dt = params['dt'] if dt is None else dt
    return _run(jos, q, u, dt, z0, True, params)
