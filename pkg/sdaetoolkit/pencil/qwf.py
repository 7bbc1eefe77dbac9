from dataclasses import dataclass
import warnings

import numpy as np
import scipy.linalg as la

from ..exceptions import IllConditionedBasis, NotRegular
from ..utils import update_all_param_dicts_with_kwargs, as_matrix
from .regularity import check_pencil
from .wong import wong_sequences


@dataclass(frozen=True, eq=False)
class QwfData:
    """
    Quasi-Weierstrass form S E T = blkdiag(I, N), S A T = blkdiag(J, I).
    nu is the nilpotency index of N, 0 when there is no algebraic block.
    """
    S: np.ndarray
    T: np.ndarray
    J: np.ndarray
    N: np.ndarray
    nu: int
    n_J: int
    n_N: int
    residual_E: float = 0.
    residual_A: float = 0.


def nilpotency_index(N, tol_zero=1e-10):
    """Smallest k with N^k numerically zero, 0 for an empty block."""
    n_N = N.shape[0]
    if n_N == 0:
        return 0
    scale = max(1., np.linalg.norm(N))
    power = np.eye(n_N)
    for k in range(1, n_N + 1):
        power = power @ N
        if np.linalg.norm(power) <= tol_zero * scale ** k:
            return k
    raise NotRegular("algebraic block of size {} is not nilpotent".format(n_N))


def qwf_from_bases(E, A, V, W, **kwargs):
    """
    Quasi-Weierstrass form from given bases of the Wong limits.

    Parameters
    ----------
    E, A: np.ndarray
        Regular pencil
    V: np.ndarray
        n x n_J basis of the differential Wong limit
    W: np.ndarray
        n x n_N basis of the algebraic Wong limit
    **kwargs: keyword arguments
        cond_cap: float
            Largest admitted condition number of T and of [E V, A W]
        tol_qwf: float
            Tolerance of the block residual check
        tol_zero: float
            Relative tolerance of the nilpotency test

    Returns
    -------
    qwf: QwfData
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    E, A = check_pencil(E, A)
    n = E.shape[0]
    V = as_matrix(V, 'V', shape=(n, None)) if np.size(V) else np.zeros((n, 0))
    W = as_matrix(W, 'W', shape=(n, None)) if np.size(W) else np.zeros((n, 0))
    n_J, n_N = V.shape[1], W.shape[1]

    T = np.hstack([V, W])
    to_invert = np.hstack([E @ V, A @ W])
    for name, M in (('T', T), ('[E V, A W]', to_invert)):
        condition = np.linalg.cond(M)
        if not condition <= params['cond_cap']:
            raise IllConditionedBasis("QWF basis {} is too ill-conditioned".format(name), condition)
    S = la.inv(to_invert)

    SET = S @ E @ T
    SAT = S @ A @ T
    J = SAT[:n_J, :n_J]
    N = SET[n_J:, n_J:]
    residual_E = np.linalg.norm(SET - la.block_diag(np.eye(n_J), N))
    residual_A = np.linalg.norm(SAT - la.block_diag(J, np.eye(n_N)))
    if residual_E > params['tol_qwf'] * (np.linalg.norm(E) + 1) or \
            residual_A > params['tol_qwf'] * (np.linalg.norm(A) + 1):
        warnings.warn("QWF block residuals {:.3e} (E) and {:.3e} (A) exceed the tolerance"
                      .format(residual_E, residual_A))
    nu = nilpotency_index(N, params['tol_zero'])
    return QwfData(S=S, T=T, J=J, N=N, nu=nu, n_J=n_J, n_N=n_N, residual_E=residual_E, residual_A=residual_A)


def qwf(E, A, **kwargs):
    """
    Quasi-Weierstrass form with T = [basis(V*), basis(W*)] and S = [E basis(V*), A basis(W*)]^{-1}.
    """
    V, W = wong_sequences(E, A, **kwargs)
    return qwf_from_bases(E, A, V.basis, W.basis, **kwargs)
