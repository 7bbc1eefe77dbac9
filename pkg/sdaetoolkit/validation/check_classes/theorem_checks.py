from collections import OrderedDict

from ...sets import verify_theorem1, verify_theorem2, verify_nojump_inclusion
from .property_check import PropertyCheck


class _SubspaceCheck(PropertyCheck):
    """Runs a subspace comparison of the sets module on every signal."""
    params = OrderedDict([('tol_angle', 1e-8)])
    verify = None

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, tol_angle=None, **kwargs):
        data = self._check_data
        if tol_angle is None:
            tol_angle = data.params['tol_angle']
        rows = []
        for k, q in enumerate(data.signals):
            report = self.verify(data.jos, q, tol_angle=tol_angle, **data.kwargs_without('tol_angle'))
            detail = ', '.join('{} {}'.format(key, value) for key, value in report.details.items())
            rows.append(self._row('signal {}'.format(k + 1), report.value, tol_angle, report.passed, detail))
        return rows


class Theorem1(_SubspaceCheck):
    check_name = 'theorem1'
    verify = staticmethod(verify_theorem1)


class Theorem2(_SubspaceCheck):
    check_name = 'theorem2'
    verify = staticmethod(verify_theorem2)


class NoJumpInclusion(_SubspaceCheck):
    check_name = 'nojump_inclusion'
    verify = staticmethod(verify_nojump_inclusion)
