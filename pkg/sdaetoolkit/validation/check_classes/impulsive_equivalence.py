from collections import OrderedDict

import numpy as np

from ...sim import simulate, simulate_impulsive
from .property_check import PropertyCheck


def state_deviation(first, second):
    """Largest state difference over all samples, relative to the largest state norm."""
    scale = max(1., np.max(np.linalg.norm(first.states, axis=1)))
    return np.max(np.linalg.norm(first.states - second.states, axis=1)) / scale


class ImpulsiveEquivalence(PropertyCheck):
    check_name = 'impulsive_equivalence'
    params = OrderedDict([('tol_check', 1e-8)])

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, tol_check=None, **kwargs):
        data = self._check_data
        if tol_check is None:
            tol_check = data.params['tol_check']
        rows = []
        for k, q in enumerate(data.signals):
            u = data.input_for(k)
            jumping = simulate(data.jos, q, u, **data.kwargs)
            impulsive = simulate_impulsive(data.jos, q, u, **data.kwargs)
            rows.append(self._row('signal {}'.format(k + 1), state_deviation(jumping, impulsive), tol_check))
        return rows
