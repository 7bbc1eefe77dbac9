"""
Dense solution of the coupled generalized Lyapunov equations

    Acal P + P Acal^T + sum_j (F_j P F_j^T + Btilde_j Btilde_j^T) = 0
    Acal^T Q + Q Acal + sum_j (F_j^T Q F_j + Ctilde_j^T Ctilde_j) = 0

by vectorization into one n^2 x n^2 linear system each.
"""

from collections import OrderedDict
from dataclasses import dataclass
import warnings

import numpy as np
import scipy.linalg as la

from ..exceptions import ValidationError, OperatorSingular, NotPSD
from ..reform import GleMatrices
from ..utils import update_all_param_dicts_with_kwargs, numerical_rank, relative_frobenius

# largest n for which the operator spectrum is computed explicitly
_SPECTRUM_MAX_N = 40


@dataclass(frozen=True, eq=False)
class GramianPair:
    """
    Solved Gramians with their diagnostics.

    operator_stable tells whether every eigenvalue of the vectorized operator has negative real part. It
    is None above _SPECTRUM_MAX_N, where the spectrum is not computed and singular operators are only
    caught by the linear solver.
    """
    P: np.ndarray
    Q: np.ndarray
    residual_P: float
    residual_Q: float
    operator_stable: bool
    eigenvalue_range_P: tuple
    eigenvalue_range_Q: tuple

    @property
    def n(self):
        return self.P.shape[0]

    def hankel_values(self):
        """Singular values of L_Q^T L_P with P = L_P L_P^T and Q = L_Q L_Q^T, nonincreasing."""
        if self.n == 0:
            return np.zeros(0)
        return la.svdvals(_square_root(self.Q).T @ _square_root(self.P))

    def summary(self):
        summary = OrderedDict([('n', self.n),
                               ('residual_P', self.residual_P),
                               ('residual_Q', self.residual_Q),
                               ('operator_stable', self.operator_stable),
                               ('min_eigenvalue_P', self.eigenvalue_range_P[0]),
                               ('max_eigenvalue_P', self.eigenvalue_range_P[1]),
                               ('min_eigenvalue_Q', self.eigenvalue_range_Q[0]),
                               ('max_eigenvalue_Q', self.eigenvalue_range_Q[1])])
        for i, value in enumerate(self.hankel_values()):
            summary['hankel_{}'.format(i + 1)] = float(value)
        return summary


def _square_root(X):
    w, U = la.eigh(0.5 * (X + X.T))
    return U * np.sqrt(np.clip(w, 0., None))


def _vec(X):
    return X.reshape(-1, order='F')


def _unvec(x, n):
    return x.reshape((n, n), order='F')


def gle_operator(mats):
    """
    Matrix of X -> Acal X + X Acal^T + sum_j F_j X F_j^T acting on column-major vec(X).
    The dual equation uses its transpose.
    """
    n = mats.n
    identity = np.eye(n)
    L = np.kron(identity, mats.Acal) + np.kron(mats.Acal, identity)
    for F in mats.F:
        L = L + np.kron(F, F)
    return L


def gle_residuals(mats, P, Q):
    """Relative Frobenius residuals of both equations at (P, Q)."""
    BB = sum(B @ B.T for B in mats.Btilde)
    CC = sum(C.T @ C for C in mats.Ctilde)
    A = mats.Acal
    lhs_P = A @ P + P @ A.T + sum(F @ P @ F.T for F in mats.F) + BB
    lhs_Q = A.T @ Q + Q @ A + sum(F.T @ Q @ F for F in mats.F) + CC
    return relative_frobenius(lhs_P, BB), relative_frobenius(lhs_Q, CC)


def _check_operator(L):
    """Raises on a singular operator; returns whether its spectrum lies in the open left half plane."""
    s = la.svdvals(L)
    if numerical_rank(s, L.shape, tol_rank=None) < L.shape[0]:
        raise OperatorSingular("the generalized Lyapunov operator is singular (smallest singular value {:.3e}, "
                               "largest {:.3e}); the equations have no unique solution".format(s.min(), s.max()))
    return bool(np.max(la.eigvals(L).real) < 0)


def _solve(L, rhs):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', la.LinAlgWarning)
            return la.solve(L, rhs)
    except (la.LinAlgError, la.LinAlgWarning) as e:
        raise OperatorSingular("the generalized Lyapunov operator could not be inverted: {}".format(e))


def _psd_part(X, name, psd_tol):
    """Symmetrizes X and clips eigenvalues in [-psd_tol ||X||, 0) to zero."""
    X = 0.5 * (X + X.T)
    w, U = la.eigh(X)
    norm = np.max(np.abs(w)) if w.size > 0 else 0.
    if w.size > 0 and w.min() < -psd_tol * norm:
        raise NotPSD("{} is indefinite".format(name), w.min())
    if w.size > 0 and w.min() < 0:
        w = np.clip(w, 0., None)
        X = (U * w) @ U.T
        X = 0.5 * (X + X.T)
    value_range = (float(w.min()), float(w.max())) if w.size > 0 else (0., 0.)
    return X, value_range


def solve_gle(mats, **kwargs):
    """
    Solves both generalized Lyapunov equations.

    Parameters
    ----------
    mats: GleMatrices
        Coefficients from reform.gle_matrices
    **kwargs: keyword arguments
        solver_tol: float
            Residual above which a warning is issued (default 1e-10)
        max_n: int
            Largest state dimension accepted by the dense solver (default 200)
        psd_tol: float
            Relative tolerance for negative eigenvalues clipped to zero (default 1e-10)
        verbose: bool
            Prints the residuals

    Returns
    -------
    gram: GramianPair
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    n = mats.n
    if n > params['max_n']:
        raise ValidationError("n = {} exceeds the dense solver limit max_n = {}".format(n, params['max_n']))
    if n == 0:
        empty = np.zeros((0, 0))
        return GramianPair(empty, empty, 0., 0., True, (0., 0.), (0., 0.))

    L = gle_operator(mats)
    stable = _check_operator(L) if n <= _SPECTRUM_MAX_N else None
    BB = sum(B @ B.T for B in mats.Btilde)
    CC = sum(C.T @ C for C in mats.Ctilde)
    P = _unvec(_solve(L, -_vec(BB)), n)
    Q = _unvec(_solve(L.T, -_vec(CC)), n)
    P, range_P = _psd_part(P, 'P', params['psd_tol'])
    Q, range_Q = _psd_part(Q, 'Q', params['psd_tol'])

    residual_P, residual_Q = gle_residuals(mats, P, Q)
    if max(residual_P, residual_Q) > params['solver_tol']:
        warnings.warn("generalized Lyapunov residuals {:.3e} (P), {:.3e} (Q) above the solver tolerance {:.1e}"
                      .format(residual_P, residual_Q, params['solver_tol']))
    if params['verbose']:
        print("GLE solved for n = {}: residuals {:.3e} (P), {:.3e} (Q)".format(n, residual_P, residual_Q))
    return GramianPair(P, Q, residual_P, residual_Q, stable, range_P, range_Q)


def transpose_gle_matrices(mats):
    """Dual model Acal^T, F_j^T with inputs Ctilde_j^T and outputs Btilde_j^T; its Gramians are (Q, P)."""
    return GleMatrices(mats.Acal.T, tuple(F.T for F in mats.F), tuple(C.T for C in mats.Ctilde),
                       tuple(B.T for B in mats.Btilde))


def classical_gramians(A, B, C):
    """Controllability and observability Gramians of a single stable LTI system."""
    P = la.solve_continuous_lyapunov(A, -B @ B.T)
    Q = la.solve_continuous_lyapunov(A.T, -C.T @ C)
    return 0.5 * (P + P.T), 0.5 * (Q + Q.T)