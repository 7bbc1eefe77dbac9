import numpy as np
import pandas
from joblib import Parallel, delayed

from ..sets import reach_recursion, unobs_recursion
from ..subspace import image, contains
from ..utils import update_all_param_dicts_with_kwargs, spectral_norm


def gramian_images(gram, **kwargs):
    """Column spans of P and Q, each ranked relative to its own norm."""
    return image(gram.P, scale=spectral_norm(gram.P), **kwargs), image(gram.Q, scale=spectral_norm(gram.Q), **kwargs)


def _containment_row(index, jos, q, span_P, span_Q, tol_angle, **kwargs):
    M_K = reach_recursion(jos, q, **kwargs).R_q
    O_q = unobs_recursion(jos, q, **kwargs).O_q
    reach = contains(span_P, M_K, tol_angle)
    observe = contains(span_Q, O_q, tol_angle)
    return [index, M_K.dim, span_P.dim, reach.angle, reach.contained,
            O_q.dim, span_Q.dim, observe.angle, observe.contained]


def containment_report(gram, jos, signals, **kwargs):
    """
    Checks that the reachable subspace M_K(q) lies in im P and the observable subspace O_q in im Q for
    each signal.

    Parameters
    ----------
    gram: GramianPair
        Solution of the generalized Lyapunov equations of jos
    jos: JumpOdeSystem
        The reformulated system
    signals: list
        SwitchingSignal objects
    **kwargs: keyword arguments
        tol_angle, tol_rank, n_jobs, joblib_backend

    Returns
    -------
    report: pandas.DataFrame
        One row per signal; the column 'passed' combines both containments
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    tol_angle = params['tol_angle']
    kwargs = {k: v for k, v in kwargs.items() if k != 'tol_angle'}
    span_P, span_Q = gramian_images(gram, **kwargs)
    if params['n_jobs'] > 1 and len(signals) > 1:
        rows = Parallel(n_jobs=params['n_jobs'], backend=params['joblib_backend'])(
            delayed(_containment_row)(k, jos, q, span_P, span_Q, tol_angle, **kwargs) for k, q in enumerate(signals))
    else:
        rows = [_containment_row(k, jos, q, span_P, span_Q, tol_angle, **kwargs) for k, q in enumerate(signals)]
    columns = ['signal', 'dim_M_K', 'rank_P', 'reach_angle', 'reach_contained',
               'dim_O_q', 'rank_Q', 'obs_angle', 'obs_contained']
    report = pandas.DataFrame(rows, columns=columns)
    report['passed'] = np.logical_and(report['reach_contained'], report['obs_contained'])
    return report
