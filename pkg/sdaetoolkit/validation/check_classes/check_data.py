import numpy as np

from ...exceptions import ValidationError, NumericalFailure
from ...gramian import solve_gle, restrict_to_differential
from ...reform import gle_matrices, random_switching_signal
from ...sim import random_input_signal
from ...utils import update_all_param_dicts_with_kwargs


# Data shared by the property checks
class CheckData:
    def __init__(
            self,
            jos,
            signals,
            u=None,
            verbose=False,
            **kwargs
    ):
        """
        Stores the reformulated system with the signals and input the checks run on, and caches the
        quantities several checks need.

        Parameters
        ----------
        jos: JumpOdeSystem
            The reformulated system
        signals: list
            SwitchingSignal objects; every check runs on each of them
        u: InputSignal
            Input used where a check needs one. If None or if it does not cover a signal, a random
            polynomial-exponential input is drawn per signal
        verbose: bool
            If True, progress is printed
        **kwargs: keyword arguments
            Tolerance, simulation, gramian and common parameters
        """
        if len(signals) == 0:
            raise ValueError("At least one switching signal is needed")
        for q in signals:
            q.check_modes(jos.n_modes)
        self.jos = jos
        self.signals = list(signals)
        self.u = u
        self.verbose = verbose
        self.params = update_all_param_dicts_with_kwargs(kwargs)
        self.kwargs = kwargs
        self._inputs = {}
        self._gramians = None
        self._gramian_error = None

    def kwargs_without(self, *names):
        return {k: v for k, v in self.kwargs.items() if k not in names}

    @property
    def seed(self):
        return self.params['seed']

    def random_state(self, offset=0):
        return np.random.RandomState(seed=self.seed + offset)

    def input_for(self, index):
        """Input covering signal index: the given one when it does, a seeded random one otherwise."""
        if index not in self._inputs:
            q = self.signals[index]
            u = self.u
            if u is None or u.t_start > q.t0 or u.t_end < q.t_end or u.m != self.jos.m:
                u = random_input_signal(self.jos.m, q, self.random_state(index), degree=self.jos.n + 1)
            self._inputs[index] = u
        return self._inputs[index]

    def random_signals(self, count, offset=1000):
        """Seeded random signals with as many switches as the first signal."""
        K = max(self.signals[0].K, 1)
        random_state = self.random_state(offset)
        return [random_switching_signal(self.jos.n_modes, K, random_state) for _ in range(count)]

    def gramians(self):
        """
        Gramian pair of the system in R^n, from the full equations or, when those fail, from the
        equations restricted to the common differential subspace. Raises the error that prevented both.
        """
        if self._gramians is None and self._gramian_error is None:
            mats = gle_matrices(self.jos, **self.kwargs)
            try:
                self._gramians = solve_gle(mats, **self.kwargs)
            except NumericalFailure as full_error:
                try:
                    restricted = restrict_to_differential(mats, self.jos, **self.kwargs)
                    reduced = solve_gle(restricted.mats, **self.kwargs)
                    self._gramians = restricted.lift(reduced, mats)
                except (NumericalFailure, ValidationError) as restricted_error:
                    self._gramian_error = "{}; restricted: {}".format(full_error, restricted_error)
            except ValidationError as e:
                self._gramian_error = str(e)
        if self._gramians is None:
            raise NumericalFailure(self._gramian_error)
        return self._gramians
