from dataclasses import dataclass

import numpy as np
import pandas


@dataclass(frozen=True, eq=False)
class SwitchRecord:
    """One-sided limits at a switching time. predecessor is None at t0."""
    t: float
    mode: int
    predecessor: int
    z_minus: np.ndarray
    z_plus: np.ndarray
    y_minus: np.ndarray
    y_plus: np.ndarray


@dataclass(frozen=True, eq=False)
class ImpulseRecord:
    """
    Coefficients of delta^(i) at t in the output, i = 1..nu-1 of the mode activated at t.
    Coefficients below the zero tolerance are kept and flagged in numerically_zero.
    """
    t: float
    mode: int
    coefficients: tuple
    numerically_zero: tuple

    @property
    def orders(self):
        return list(range(1, len(self.coefficients) + 1))


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    outputs: np.ndarray
    switch_records: tuple
    impulses: tuple

    @property
    def samples(self):
        return list(zip(self.times, self.states, self.outputs))

    def max_impulse(self):
        values = [np.max(np.abs(c)) for record in self.impulses for c in record.coefficients if c.size > 0]
        return max(values) if values else 0.

    def to_dataframe(self):
        columns = trajectory_columns(self.states.shape[1], self.outputs.shape[1])
        data = np.hstack([self.times[:, None], self.states, self.outputs])
        return pandas.DataFrame(data, columns=columns)

    def impulses_to_dataframe(self):
        p = self.outputs.shape[1]
        rows = []
        for record in self.impulses:
            for order, coefficient, zero in zip(record.orders, record.coefficients, record.numerically_zero):
                rows.append([record.t, record.mode + 1, order] + list(coefficient) + [zero])
        columns = ['t', 'mode', 'order'] + ['y_{}'.format(i + 1) for i in range(p)] + ['numerically_zero']
        return pandas.DataFrame(rows, columns=columns)


def trajectory_columns(n, p):
    return ['t'] + ['z_{}'.format(i + 1) for i in range(n)] + ['y_{}'.format(i + 1) for i in range(p)]
