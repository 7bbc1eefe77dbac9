from dataclasses import dataclass, field
import json

import numpy as np

from ..exceptions import ParseError, DimensionMismatch, NotRegular, ValidationError, OutOfHorizon
from ..pencil import ModeSystem, is_regular


@dataclass(frozen=True, eq=False)
class SwitchedDAE:
    """
    Switched DAE E_q x' = A_q x + B_q u, y = C_q x over an ordered list of modes.
    """
    modes: tuple

    def __post_init__(self):
        modes = tuple(self.modes)
        if len(modes) == 0:
            raise ValidationError("A switched DAE needs at least one mode")
        n, m, p = modes[0].n, modes[0].m, modes[0].p
        for j, mode in enumerate(modes):
            if (mode.n, mode.m, mode.p) != (n, m, p):
                raise DimensionMismatch("mode {} has dimensions (n, m, p) = {}, expected {}"
                                        .format(j + 1, (mode.n, mode.m, mode.p), (n, m, p)))
        object.__setattr__(self, 'modes', modes)

    @property
    def n(self):
        return self.modes[0].n

    @property
    def m(self):
        return self.modes[0].m

    @property
    def p(self):
        return self.modes[0].p

    @property
    def n_modes(self):
        return len(self.modes)


@dataclass(frozen=True, eq=False)
class SwitchingSignal:
    """
    Piecewise constant, right-continuous switching signal.

    entries is a sequence of (t_k, mode_k) with 0-based mode indices and t_0 = t0; mode_k is active
    on [t_k, t_{k+1}) with t_{K+1} = t_end.
    """
    t0: float
    entries: tuple
    t_end: float
    allow_repeated_modes: bool = field(default=True)

    def __post_init__(self):
        entries = tuple((float(t), int(mode)) for t, mode in self.entries)
        if len(entries) == 0:
            raise ValidationError("A switching signal needs at least one entry")
        if entries[0][0] != float(self.t0):
            raise ValidationError("first switching time {} differs from t0 = {}".format(entries[0][0], self.t0))
        times = [t for t, _ in entries]
        if np.any(np.diff(times) <= 0):
            raise ValidationError("switching times must be strictly increasing")
        if not float(self.t_end) > times[-1]:
            raise OutOfHorizon("t_end = {} must exceed the last switching time {}".format(self.t_end, times[-1]))
        modes = [mode for _, mode in entries]
        if min(modes) < 0:
            raise ValidationError("mode indices must be non-negative")
        if not self.allow_repeated_modes and np.any(np.diff(modes) == 0):
            raise ValidationError("consecutive entries repeat a mode")
        object.__setattr__(self, 'entries', entries)
        object.__setattr__(self, 't0', float(self.t0))
        object.__setattr__(self, 't_end', float(self.t_end))

    @property
    def times(self):
        return np.array([t for t, _ in self.entries])

    @property
    def modes(self):
        return [mode for _, mode in self.entries]

    @property
    def K(self):
        return len(self.entries) - 1

    def intervals(self):
        """List of (t_k, t_{k+1}, mode_k), the last one ending at t_end."""
        ends = list(self.times[1:]) + [self.t_end]
        return [(t, end, mode) for (t, mode), end in zip(self.entries, ends)]

    def durations(self):
        return np.array([end - t for t, end, _ in self.intervals()])

    def scaled(self, factor):
        """Same mode sequence with every duration multiplied by factor."""
        entries = [(self.t0 + factor * (t - self.t0), mode) for t, mode in self.entries]
        return SwitchingSignal(self.t0, entries, self.t0 + factor * (self.t_end - self.t0),
                               self.allow_repeated_modes)

    def truncated(self, t):
        """The signal restricted to [t0, t)."""
        entries = [(tk, mode) for tk, mode in self.entries if tk < t]
        return SwitchingSignal(self.t0, entries, t, self.allow_repeated_modes)

    def check_modes(self, n_modes):
        if max(self.modes) >= n_modes:
            raise ValidationError("switching signal refers to mode {} of a {}-mode system"
                                  .format(max(self.modes) + 1, n_modes))


def read_description(description):
    """Parsed JSON document from a dict, a JSON string or a file path."""
    if isinstance(description, dict):
        return description
    try:
        if isinstance(description, str) and description.lstrip().startswith('{'):
            return json.loads(description)
        with open(description, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location="line {}, column {}".format(e.lineno, e.colno))
    except OSError as e:
        raise ParseError(str(e), location=str(description))


def _require(document, key, location):
    if not isinstance(document, dict) or key not in document:
        raise ParseError("missing field '{}'".format(key), location=location)
    return document[key]


def _parse_number(value, location, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
        raise ParseError("'{}' must be a finite number, got {!r}".format(name, value), location=location)
    return float(value)


def _parse_count(value, location, name, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ParseError("'{}' must be an integer >= {}, got {!r}".format(name, minimum, value), location=location)
    return value


def _parse_list(value, location, name, allow_empty=False):
    if not isinstance(value, list) or (len(value) == 0 and not allow_empty):
        raise ParseError("'{}' must be a {}list".format(name, '' if allow_empty else 'non-empty '), location=location)
    return value


def _parse_matrix(value, shape, location):
    try:
        M = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("not a numeric matrix", location=location)
    if M.ndim == 1 and M.size == shape[0] * shape[1]:
        M = M.reshape(shape)
    elif M.size == 0 and shape[0] * shape[1] == 0:
        M = M.reshape(shape)
    return M


def load_switched_dae(description, **kwargs):
    """
    Builds and validates a switched DAE from its JSON description.

    Parameters
    ----------
    description: dict, str
        Parsed document, JSON text or path of a file with top-level fields n, m, p and
        modes: [{E, A, B, C}], matrices as row-major nested arrays
    **kwargs: keyword arguments
        Tolerances forwarded to the regularity test

    Returns
    -------
    sys: SwitchedDAE
    """
    document = read_description(description)
    n, m, p = (_parse_count(_require(document, key, 'model'), 'model', key, minimum=1) for key in ('n', 'm', 'p'))
    shapes = {'E': (n, n), 'A': (n, n), 'B': (n, m), 'C': (p, n)}

    raw_modes = _parse_list(_require(document, 'modes', 'model'), 'model', 'modes')

    modes = []
    for j, raw in enumerate(raw_modes):
        location = 'modes[{}]'.format(j + 1)
        matrices = {key: _parse_matrix(_require(raw, key, location), shapes[key], '{}.{}'.format(location, key))
                    for key in ('E', 'A', 'B', 'C')}
        for key, M in matrices.items():
            if M.shape != shapes[key]:
                raise DimensionMismatch("{}.{} has shape {}, expected {}".format(location, key, M.shape, shapes[key]))
        mode = ModeSystem(**matrices)
        if not is_regular(mode.E, mode.A, **kwargs):
            raise NotRegular("pencil (E, A) is singular", j)
        modes.append(mode)
    return SwitchedDAE(tuple(modes))


def load_switching_signal(description, n_modes=None):
    """
    Switching signal from {t0, t_end, entries: [{t, mode}]} with 1-based mode indices.
    """
    document = read_description(description)
    t0 = _parse_number(_require(document, 't0', 'signal'), 'signal', 't0')
    t_end = _parse_number(_require(document, 't_end', 'signal'), 'signal', 't_end')
    raw_entries = _parse_list(_require(document, 'entries', 'signal'), 'signal', 'entries')
    entries = []
    for k, raw in enumerate(raw_entries):
        location = 'entries[{}]'.format(k + 1)
        t = _parse_number(_require(raw, 't', location), location, 't')
        mode = _parse_count(_require(raw, 'mode', location), location, 'mode', minimum=1)
        entries.append((t, mode - 1))
    try:
        signal = SwitchingSignal(t0, entries, t_end)
    except OutOfHorizon:
        raise
    except ValidationError as e:
        raise ParseError(str(e), location='signal')
    if n_modes is not None:
        signal.check_modes(n_modes)
    return signal


def switched_dae_to_dict(sys):
    return {'n': sys.n, 'm': sys.m, 'p': sys.p,
            'modes': [{'E': mode.E.tolist(), 'A': mode.A.tolist(), 'B': mode.B.tolist(), 'C': mode.C.tolist()}
                      for mode in sys.modes]}


def switching_signal_to_dict(signal):
    return {'t0': signal.t0, 't_end': signal.t_end,
            'entries': [{'t': t, 'mode': mode + 1} for t, mode in signal.entries]}
