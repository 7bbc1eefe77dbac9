from collections import OrderedDict

from ...sets import observability_oracle
from .property_check import PropertyCheck


class ObservabilityOracle(PropertyCheck):
    check_name = 'observability_oracle'
    params = OrderedDict([('zero_tol', 1e-8), ('response_tol', 1e-4)])

    def __init__(self, check_data):
        PropertyCheck.__init__(self, check_data)

    def compute_check(self, zero_tol=1e-8, response_tol=1e-4, **kwargs):
        data = self._check_data
        rows = []
        for k, q in enumerate(data.signals):
            report = observability_oracle(data.jos, q, random_state=data.random_state(200 + k), zero_tol=zero_tol,
                                          response_tol=response_tol,
                                          **data.kwargs_without('zero_tol', 'response_tol'))
            detail = 'dim O_q {}, weakest observable response {:.3e}'.format(
                report.details['dim_O_q'], report.details['weakest_observable_response'])
            rows.append(self._row('signal {}'.format(k + 1), report.value, zero_tol, report.passed, detail))
        return rows
