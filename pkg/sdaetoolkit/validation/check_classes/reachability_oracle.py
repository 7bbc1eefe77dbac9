from collections import OrderedDict

from ...sets import reachability_oracle
from .property_check import PropertyCheck


class ReachabilityOracle(PropertyCheck):
    check_name = 'reachability_oracle'
    params = OrderedDict([('tol_angle', 1e-6), ('oracle_tol_rank', 1e-10)])

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, tol_angle=1e-6, oracle_tol_rank=1e-10, **kwargs):
        data = self._check_data
        rows = []
        for k, q in enumerate(data.signals):
            report = reachability_oracle(data.jos, q, random_state=data.random_state(100 + k),
                                         oracle_tol_rank=oracle_tol_rank, tol_angle=tol_angle,
                                         **data.kwargs_without('tol_angle', 'oracle_tol_rank'))
            detail = 'dim M_K {}, simulated span {}'.format(report.details['dim_M_K'],
                                                            report.details['dim_simulated'])
            rows.append(self._row('signal {}'.format(k + 1), report.value, tol_angle, report.passed, detail))
        return rows
