from collections import OrderedDict

from ...exceptions import NumericalFailure
from ...gramian import containment_report
from .property_check import PropertyCheck


class GramianContainment(PropertyCheck):
    check_name = 'gramian_containment'
    params = OrderedDict([('tol_angle', 1e-8), ('n_random_signals', 20)])

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, tol_angle=None, n_random_signals=20, **kwargs):
        data = self._check_data
        if tol_angle is None:
            tol_angle = data.params['tol_angle']
        try:
            gram = data.gramians()
        except NumericalFailure as e:
            return [self._skipped('gramians', "generalized Lyapunov equations not solvable: {}".format(e))]

        signals = data.signals + data.random_signals(n_random_signals)
        report = containment_report(gram, data.jos, signals, tol_angle=tol_angle, **data.kwargs_without('tol_angle'))
        rows = []
        for _, entry in report.iterrows():
            k = int(entry['signal'])
            case = 'signal {}'.format(k + 1) if k < len(data.signals) else 'random signal {}'.format(
                k - len(data.signals) + 1)
            value = max(entry['reach_angle'], entry['obs_angle'])
            detail = 'dim M_K {} in rank P {}, dim O_q {} in rank Q {}'.format(
                entry['dim_M_K'], entry['rank_P'], entry['dim_O_q'], entry['rank_Q'])
            rows.append(self._row(case, value, tol_angle, bool(entry['passed']), detail))
        return rows
