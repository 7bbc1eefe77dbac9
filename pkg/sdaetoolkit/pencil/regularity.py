from collections import namedtuple
import numpy as np
import scipy.linalg as la

from ..exceptions import DimensionMismatch
from ..utils import update_all_param_dicts_with_kwargs, numerical_rank, as_matrix, spectral_norm


class RegularityVerdict(namedtuple('RegularityVerdict', ['regular', 'shift', 'shifts', 'min_singular_values'])):
    """
    Outcome of the regularity test.

    shift is the certificate s* with det(s* E - A) != 0 when the pencil is regular, None otherwise.
    shifts and min_singular_values report every shift that was evaluated.
    """
    __slots__ = ()

    def __bool__(self):
        return bool(self.regular)


def check_pencil(E, A):
    E = as_matrix(E, 'E')
    A = as_matrix(A, 'A')
    if E.shape[0] != E.shape[1]:
        raise DimensionMismatch("'E' must be square, got shape {}".format(E.shape))
    if A.shape != E.shape:
        raise DimensionMismatch("'A' must have the shape of 'E' {}, got {}".format(E.shape, A.shape))
    return E, A


def is_regular(E, A, **kwargs):
    """
    Decides whether det(sE - A) is not identically zero.

    The determinant is a polynomial of degree at most n, so it vanishes identically iff it vanishes
    at n + 1 distinct points. The pencil is evaluated at n + 1 random shifts drawn uniformly from
    [-2 sigma, 2 sigma], sigma = ||E||_F + ||A||_F, and is regular iff one shifted matrix has full numerical rank.

    Parameters
    ----------
    E: np.ndarray
        n x n matrix
    A: np.ndarray
        n x n matrix
    **kwargs: keyword arguments
        seed: int
            Seed of the random shifts (default 42)
        tol_rank: float
            Relative rank tolerance

    Returns
    -------
    verdict: RegularityVerdict
        Truthy when regular, carries the certificate shift
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    E, A = check_pencil(E, A)
    n = E.shape[0]
    sigma = np.linalg.norm(E) + np.linalg.norm(A)
    if sigma == 0:
        sigma = 1.
    random_state = np.random.RandomState(seed=params['seed'])
    shifts = random_state.uniform(-2 * sigma, 2 * sigma, size=n + 1)
    norm_E, norm_A = spectral_norm(E), spectral_norm(A)

    min_singular_values = []
    for i, s in enumerate(shifts):
        sv = la.svdvals(s * E - A)
        min_singular_values.append(sv.min())
        scale = abs(s) * norm_E + norm_A
        if numerical_rank(sv, E.shape, scale=scale, tol_rank=params['tol_rank']) == n:
            return RegularityVerdict(True, float(s), shifts[:i + 1], np.array(min_singular_values))
    return RegularityVerdict(False, None, shifts, np.array(min_singular_values))
