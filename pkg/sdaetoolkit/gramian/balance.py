"""
Square-root balancing of the Gramian pair and Petrov-Galerkin reduction of the jump-ODE system.
"""

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
from scipy.integrate import trapezoid

from ..exceptions import RankTooLow, ValidationError
from ..pencil import JumpMode
from ..reform import JumpOdeSystem
from ..sim import simulate
from ..utils import numerical_rank, relative_frobenius, update_all_param_dicts_with_kwargs
from .gle import _square_root


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """
    Projection pair (V, W) with W^T V = I_r, the hankel values of the Gramian pair and the reduced modes.

    Pi_hat = W^T Pi V is generally not idempotent; idempotency_defect holds ||Pi_hat^2 - Pi_hat|| per mode.
    """
    V: np.ndarray
    W: np.ndarray
    hankel: np.ndarray
    modes: tuple = ()
    idempotency_defect: tuple = ()

    @property
    def order(self):
        return self.V.shape[1]

    @property
    def jump_ode(self):
        return JumpOdeSystem.from_modes(self.modes)


def balance(gram, r, jos=None, **kwargs):
    """
    Square-root balancing.

    P = L_P L_P^T and Q = L_Q L_Q^T from eigendecompositions (P and Q are typically singular), the SVD
    L_Q^T L_P = U S Z^T gives the hankel values S, and V = L_P Z_r S_r^{-1/2}, W = L_Q U_r S_r^{-1/2}.

    Parameters
    ----------
    gram: GramianPair
        Solved Gramians
    r: int
        Reduced order, at most the numerical rank of L_Q^T L_P
    jos: JumpOdeSystem
        If given, its modes are projected into the returned model
    **kwargs: keyword arguments
        tol_rank: float
            Relative rank tolerance for the hankel values

    Returns
    -------
    reduced: ReducedModel
    """
    if r < 1:
        raise ValidationError("reduced order must be at least 1, got {}".format(r))
    L_P = _square_root(gram.P)
    L_Q = _square_root(gram.Q)
    U, hankel, Zh = la.svd(L_Q.T @ L_P)
    params = update_all_param_dicts_with_kwargs(kwargs)
    rank = numerical_rank(hankel, (gram.n, gram.n), tol_rank=params['tol_rank'])
    if r > rank:
        raise RankTooLow("order {} exceeds the numerical rank of the Gramian product".format(r), rank)
    scaling = 1. / np.sqrt(hankel[:r])
    V = L_P @ Zh[:r].T * scaling
    W = L_Q @ U[:, :r] * scaling
    reduced = ReducedModel(V, W, hankel)
    if jos is not None:
        reduced = reduce_jump_ode(jos, reduced)
    return reduced


def reduce_mode(mode, V, W):
    blocks = [block @ V for block in mode.impc_blocks]
    ImpC = np.hstack(blocks) if blocks else np.zeros((mode.p, 0))
    return JumpMode(Adiff=W.T @ mode.Adiff @ V, Bdiff=W.T @ mode.Bdiff, Cdiff=mode.Cdiff @ V,
                    Pi=W.T @ mode.Pi @ V, JumpB=W.T @ mode.JumpB, D=mode.D, ImpC=ImpC, nu=mode.nu)


def reduce_jump_ode(jos, reduced):
    """Projects every mode of jos with the pair of reduced, returning a ReducedModel carrying the modes."""
    modes = tuple(reduce_mode(mode, reduced.V, reduced.W) for mode in jos.decoupled)
    defects = tuple(relative_frobenius(mode.Pi @ mode.Pi - mode.Pi, mode.Pi) for mode in modes)
    return ReducedModel(reduced.V, reduced.W, reduced.hankel, modes, defects)


def _impulse_error(full, reduced):
    errors = [0.]
    for a, b in zip(full.impulses, reduced.impulses):
        for ca, cb in zip(a.coefficients, b.coefficients):
            if ca.size > 0:
                errors.append(np.max(np.abs(ca - cb)))
    return max(errors)


def compare_reduced(jos, reduced, q, u, **kwargs):
    """
    Simulates the full and the reduced system on the same signal and input.

    Returns
    -------
    report: OrderedDict
        Max, relative and L2 (trapezoidal over the sample grid) output errors, max impulse coefficient error,
        largest idempotency defect and the hankel values
    """
    full = simulate(jos, q, u, **kwargs)
    small = simulate(reduced.jump_ode, q, u, **kwargs)
    error = full.outputs - small.outputs
    pointwise = np.linalg.norm(error, axis=1) if error.size > 0 else np.zeros(len(full.times))
    max_error = float(np.max(pointwise))
    reference = float(np.max(np.linalg.norm(full.outputs, axis=1))) if full.outputs.size > 0 else 0.
    report = OrderedDict()
    report['order'] = reduced.order
    report['n'] = jos.n
    report['max_output_error'] = max_error
    report['relative_output_error'] = max_error / reference if reference > 0 else max_error
    report['l2_output_error'] = float(np.sqrt(trapezoid(pointwise ** 2, full.times)))
    report['max_impulse_error'] = float(_impulse_error(full, small))
    report['max_idempotency_defect'] = max(reduced.idempotency_defect + (0.,))
    report['hankel'] = reduced.hankel.tolist()
    return report


def reduce_and_compare(jos, gram, r, q, u, **kwargs):
    """Balances to order r and compares the reduced system with jos on (q, u)."""
    reduced = balance(gram, r, jos, **kwargs)
    return compare_reduced(jos, reduced, q, u, **kwargs)
