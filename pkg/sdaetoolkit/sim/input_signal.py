"""
Piecewise polynomial-exponential inputs with exact derivatives.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import comb

from ..exceptions import OutOfHorizon, InsufficientInputSmoothness, ParseError, DimensionMismatch
from ..reform.switched_dae import read_description, _require, _parse_number, _parse_count, _parse_list


@dataclass(frozen=True, eq=False)
class InputPiece:
    """
    Input on [start, next start): channel i is sum over its terms (coeffs, rate) of
    (sum_k coeffs[k] s^k) exp(rate s), s = t - start.
    """
    start: float
    channels: tuple

    def __post_init__(self):
        channels = tuple(tuple((np.atleast_1d(np.asarray(coeffs, dtype=float)), float(rate))
                               for coeffs, rate in terms) for terms in self.channels)
        object.__setattr__(self, 'channels', channels)
        object.__setattr__(self, 'start', float(self.start))

    def derivative(self, t, order=0):
        """order-th derivative of every channel at the times t, shape (len(t), m)."""
        s = np.atleast_1d(np.asarray(t, dtype=float)) - self.start
        values = np.zeros((s.size, len(self.channels)))
        for i, terms in enumerate(self.channels):
            for coeffs, rate in terms:
                total = np.zeros(s.size)
                # Leibniz rule on p(s) exp(rate s)
                for k in range(order + 1):
                    dp = P.polyder(coeffs, k) if k > 0 else coeffs
                    total += comb(order, k) * rate ** (order - k) * P.polyval(s, dp)
                values[:, i] += total * np.exp(rate * s)
        return values


@dataclass(frozen=True, eq=False)
class InputSignal:
    """
    Piecewise smooth input signal.

    pieces are ordered by start; the signal is defined on [pieces[0].start, t_end]. max_derivative_order
    bounds the derivatives the description may be asked for (None: unbounded).
    """
    pieces: tuple
    t_end: float = np.inf
    max_derivative_order: int = None

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=lambda piece: piece.start))
        if len(pieces) == 0:
            raise ParseError("an input signal needs at least one piece")
        starts = [piece.start for piece in pieces]
        if np.any(np.diff(starts) <= 0):
            raise ParseError("input pieces must have distinct starts")
        m = len(pieces[0].channels)
        for piece in pieces:
            if len(piece.channels) != m:
                raise DimensionMismatch("input pieces have {} and {} channels".format(m, len(piece.channels)))
        object.__setattr__(self, 'pieces', pieces)

    @property
    def m(self):
        return len(self.pieces[0].channels)

    @property
    def t_start(self):
        return self.pieces[0].start

    @property
    def breakpoints(self):
        return np.array([piece.start for piece in self.pieces])

    def piece_at(self, t, side='right'):
        """
        Piece active on the given side of t. On the left side of a piece start the previous
        piece is returned.
        """
        starts = self.breakpoints
        if side == 'right':
            index = np.searchsorted(starts, t, side='right') - 1
            inside = self.t_start <= t < self.t_end
        elif side == 'left':
            index = np.searchsorted(starts, t, side='left') - 1
            inside = self.t_start < t <= self.t_end
        else:
            raise ValueError("'side' must be 'left' or 'right'")
        if not inside or index < 0:
            raise OutOfHorizon("t = {} ({} limit) outside the input horizon [{}, {}]"
                               .format(t, side, self.t_start, self.t_end))
        return self.pieces[index]

    def evaluate(self, t, order=0, side='right'):
        """order-th derivative at the single time t, as an m-vector."""
        return self.piece_at(t, side).derivative(t, order)[0]

    def derivatives(self, t, count, side='right'):
        """Rows u(t), u'(t), ..., u^(count-1)(t) on the given side of t."""
        if self.max_derivative_order is not None and count - 1 > self.max_derivative_order:
            raise InsufficientInputSmoothness("derivative of order {} requested, the input provides up to {}"
                                              .format(count - 1, self.max_derivative_order))
        piece = self.piece_at(t, side)
        if count == 0:
            return np.zeros((0, self.m))
        return np.vstack([piece.derivative(t, order) for order in range(count)])


def input_stack(u, mode, t, side='right'):
    """
    U(t) = [u; u'; ...; u^(nu-1)] evaluated on the given side of t, empty when nu = 0.

    Parameters
    ----------
    u: InputSignal
        The input
    mode: JumpMode
        Mode providing the index nu
    t: float
        Time
    side: str
        'left' or 'right' limit

    Returns
    -------
    U: np.ndarray
        Vector of length m * nu
    """
    return u.derivatives(t, mode.nu, side).reshape(-1)


def constant_input(values, t_start=0., t_end=np.inf):
    values = np.atleast_1d(values)
    return InputSignal((InputPiece(t_start, [[([v], 0.)] for v in values]),), t_end)


def load_input_signal(description):
    """
    Input from {pieces: [{start, channels: [[{coeffs, rate}, ...], ...]}], t_end, max_derivative_order}.
    """
    document = read_description(description)
    raw_pieces = _parse_list(_require(document, 'pieces', 'input'), 'input', 'pieces')
    pieces = []
    for k, raw in enumerate(raw_pieces):
        location = 'pieces[{}]'.format(k + 1)
        start = _parse_number(_require(raw, 'start', location), location, 'start')
        channels = []
        for i, raw_terms in enumerate(_parse_list(_require(raw, 'channels', location), location, 'channels')):
            channel_location = '{}.channels[{}]'.format(location, i + 1)
            terms = []
            for term in _parse_list(raw_terms, channel_location, 'terms'):
                coeffs = _parse_list(_require(term, 'coeffs', channel_location), channel_location, 'coeffs')
                coeffs = [_parse_number(c, channel_location, 'coeffs') for c in coeffs]
                rate = _parse_number(term.get('rate', 0.), channel_location, 'rate')
                terms.append((coeffs, rate))
            channels.append(terms)
        pieces.append(InputPiece(start, channels))
    t_end = document.get('t_end')
    t_end = np.inf if t_end is None else _parse_number(t_end, 'input', 't_end')
    max_order = document.get('max_derivative_order')
    if max_order is not None:
        max_order = _parse_count(max_order, 'input', 'max_derivative_order')
    return InputSignal(tuple(pieces), t_end, max_order)


def input_signal_to_dict(u):
    document = {'pieces': [{'start': piece.start,
                            'channels': [[{'coeffs': coeffs.tolist(), 'rate': rate} for coeffs, rate in terms]
                                         for terms in piece.channels]}
                           for piece in u.pieces]}
    if np.isfinite(u.t_end):
        document['t_end'] = u.t_end
    if u.max_derivative_order is not None:
        document['max_derivative_order'] = u.max_derivative_order
    return document


def random_input_signal(m, signal, random_state=None, degree=3, rate_scale=0.5):
    """
    One random polynomial-exponential piece per switching interval, so that input values and derivatives
    on both sides of each switch are independent.

    Parameters
    ----------
    m: int
        Number of channels
    signal: SwitchingSignal
        Signal whose switching times become the piece starts
    random_state: np.random.RandomState
        Random generator
    degree: int
        Polynomial degree of each term
    rate_scale: float
        Exponential rates are drawn from [-rate_scale, rate_scale]

    Returns
    -------
    u: InputSignal
    """
    if random_state is None:
        random_state = np.random.RandomState(seed=0)
    pieces = []
    for t in signal.times:
        channels = [[(random_state.randn(degree + 1), random_state.uniform(-rate_scale, rate_scale))]
                    for _ in range(m)]
        pieces.append(InputPiece(t, channels))
    return InputSignal(tuple(pieces), signal.t_end)
