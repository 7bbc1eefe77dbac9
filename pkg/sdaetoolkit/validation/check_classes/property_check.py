from abc import ABC, abstractmethod
from collections import OrderedDict


# Baseclass for each property check

class PropertyCheck(ABC):
    check_name = None
    params = OrderedDict()

    def __init__(self, check_data):
        '''
        Parameters
        ----------
        check_data: CheckData
            The system, signals and inputs the check runs on
        '''
        self._check_data = check_data

    # implemented by property check subclasses
    @abstractmethod
    def compute_check(self, **kwargs):
        '''
        Returns
        -------
        rows: list
            One OrderedDict per case with keys check, case, value, threshold, passed, status and detail
        '''
        pass

    def threshold_check(self, threshold, **kwargs):
        '''
        Recomputes the check and judges every case against the given threshold instead of the default one.

        Parameters
        ----------
        threshold: float
            Largest admitted value

        Returns
        -------
        rows: list
        '''
        rows = self.compute_check(**kwargs)
        for row in rows:
            if row['status'] != 'skipped':
                row['threshold'] = threshold
                row['passed'] = bool(row['value'] <= threshold)
                row['status'] = 'passed' if row['passed'] else 'failed'
        return rows

    def _row(self, case, value, threshold, passed=None, detail=''):
        if passed is None:
            passed = bool(value <= threshold)
        return OrderedDict([('check', self.check_name), ('case', case), ('value', float(value)),
                            ('threshold', threshold), ('passed', bool(passed)),
                            ('status', 'passed' if passed else 'failed'), ('detail', detail)])

    def _skipped(self, case, reason):
        return OrderedDict([('check', self.check_name), ('case', case), ('value', float('nan')),
                            ('threshold', float('nan')), ('passed', None), ('status', 'skipped'),
                            ('detail', reason)])
