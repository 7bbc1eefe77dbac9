from collections import OrderedDict

import numpy as np
import scipy.linalg as la

from ...pencil import DecoupledMode, decoupling_residuals, decouple_with_qwf, qwf_from_bases
from ...utils import relative_frobenius
from .property_check import PropertyCheck

_derived_fields = ('Adiff', 'Bdiff', 'Cdiff', 'Pi', 'JumpB', 'D', 'ImpC', 'Pi_diff', 'Pi_imp')


def _random_change_of_basis(k, random_state):
    if k == 0:
        return np.zeros((0, 0))
    Q, _ = la.qr(random_state.randn(k, k))
    return Q * random_state.uniform(0.5, 2., size=k)


def basis_choice_deviation(mode, random_state, **kwargs):
    """
    Largest relative change of the derived matrices when the Wong limit bases are replaced by other bases of
    the same subspaces.
    """
    data = mode.qwf
    V = data.T[:, :data.n_J] @ _random_change_of_basis(data.n_J, random_state)
    W = data.T[:, data.n_J:] @ _random_change_of_basis(data.n_N, random_state)
    other = decouple_with_qwf(mode.system, qwf_from_bases(mode.system.E, mode.system.A, V, W, **kwargs))
    return max(relative_frobenius(getattr(mode, name) - getattr(other, name), getattr(mode, name))
               for name in _derived_fields)


class PencilInvariants(PropertyCheck):
    check_name = 'pencil_invariants'
    params = OrderedDict([('tol_check', 1e-8)])

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, tol_check=None, **kwargs):
        if tol_check is None:
            tol_check = self._check_data.params['tol_check']
        rows = []
        random_state = self._check_data.random_state(offset=7)
        for j, mode in enumerate(self._check_data.jos.decoupled):
            case = 'mode {}'.format(j + 1)
            if not isinstance(mode, DecoupledMode):
                rows.append(self._skipped(case, "mode was loaded without its pencil"))
                continue
            residuals = decoupling_residuals(mode)
            worst = max(residuals, key=residuals.get)
            rows.append(self._row(case + ' identities', residuals[worst], tol_check, detail='worst: ' + worst))
            deviation = basis_choice_deviation(mode, random_state, **self._check_data.kwargs)
            rows.append(self._row(case + ' basis choice', deviation, tol_check))
        return rows
