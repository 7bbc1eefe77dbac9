from collections import OrderedDict
import numpy as np

from .exceptions import NonFinite, DimensionMismatch

tolerance_params_dict = OrderedDict([('tol_rank', 1e-9), ('tol_check', 1e-8), ('tol_zero', 1e-10),
                                     ('tol_qwf', 1e-8), ('cond_cap', 1e12), ('tol_angle', 1e-8)])

simulation_params_dict = OrderedDict([('dt', 0.05), ('quad_order', 6), ('impulse_zero_tol', 1e-12)])

gramian_params_dict = OrderedDict([('solver_tol', 1e-10), ('max_n', 200), ('psd_tol', 1e-10)])

common_params_dict = OrderedDict([('seed', 42), ('verbose', False), ('n_jobs', 1), ('joblib_backend', 'loky')])


def get_tolerance_params():
    return tolerance_params_dict.copy()


def get_simulation_params():
    return simulation_params_dict.copy()


def get_gramian_params():
    return gramian_params_dict.copy()


def get_common_params():
    return common_params_dict.copy()


def get_toolkit_params():
    '''
    Returns all available keyword argument params

    Returns
    -------
    all_params: dict
        Dictionary with all available keyword arguments for the toolkit
    '''
    all_params = {}
    all_params.update(get_tolerance_params())
    all_params.update(get_simulation_params())
    all_params.update(get_gramian_params())
    all_params.update(get_common_params())

    return all_params


def update_all_param_dicts_with_kwargs(kwargs):
    all_params = get_toolkit_params()

    if np.any([k in all_params.keys() for k in kwargs.keys()]):
        for k in kwargs.keys():
            if k in all_params.keys():
                all_params[k] = kwargs[k]

    return all_params


def numerical_rank(singular_values, shape, scale=None, tol_rank=None):
    """
    Number of singular values above the rank threshold.

    The threshold is tol_rank * scale, where scale defaults to the largest singular value.
    With tol_rank None the relative factor is max(shape) * machine epsilon.

    Parameters
    ----------
    singular_values: array-like
        Singular values of the matrix under test
    shape: tuple
        Shape of the matrix under test
    scale: float
        Magnitude the threshold is relative to (default largest singular value)
    tol_rank: float or None
        Relative rank tolerance

    Returns
    -------
    rank: int
        Numerical rank
    """
    s = np.asarray(singular_values, dtype=float)
    if s.size == 0:
        return 0
    if scale is None:
        scale = s.max()
    if not scale > 0:
        return 0
    if tol_rank is None:
        tol_rank = max(shape) * np.finfo(float).eps
    return int(np.sum(s > tol_rank * scale))


def as_matrix(M, name='matrix', shape=None):
    """Float 2D copy of M, checked for finiteness and optionally for shape."""
    M = np.array(M, dtype=float, ndmin=2)
    if M.ndim != 2:
        raise DimensionMismatch("'{}' must be a 2D matrix, got {} dimensions".format(name, M.ndim))
    if shape is not None:
        for expected, actual in zip(shape, M.shape):
            if expected is not None and expected != actual:
                raise DimensionMismatch("'{}' must have shape {}, got {}".format(name, shape, M.shape))
    if not np.all(np.isfinite(M)):
        raise NonFinite("'{}' contains NaN or Inf entries".format(name))
    return M


def relative_frobenius(difference, reference):
    return np.linalg.norm(difference) / max(np.linalg.norm(reference), 1.)


def spectral_norm(M):
    M = np.asarray(M)
    if M.size == 0:
        return 0.
    return float(np.linalg.norm(M, 2))
