from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from ..exceptions import ParseError, DimensionMismatch, ValidationError
from ..pencil import JumpMode, decouple
from ..utils import update_all_param_dicts_with_kwargs
from .switched_dae import read_description, _require, _parse_count, _parse_list


@dataclass(frozen=True, eq=False)
class JumpOdeSystem:
    """
    Switched ODE with state jumps and output impulses equivalent to a switched DAE.

    augB[(j, i)] = [Bdiff_j, Pi_j JumpB_i] is the input matrix of mode j entered from mode i, and
    augC[(j, i)] = [Cdiff_j; ImpC_i] the output matrix of mode j left towards mode i (ImpC_i stacked
    as rows, one block of p rows per derivative order).
    """
    decoupled: tuple
    augB: dict
    augC: dict

    @classmethod
    def from_modes(cls, modes):
        modes = tuple(modes)
        if len(modes) == 0:
            raise ValidationError("A jump-ODE system needs at least one mode")
        n, m, p = modes[0].n, modes[0].m, modes[0].p
        for j, mode in enumerate(modes):
            if (mode.n, mode.m, mode.p) != (n, m, p):
                raise DimensionMismatch("mode {} has dimensions {}, expected {}".format(j + 1, (mode.n, mode.m, mode.p),
                                                                                      (n, m, p)))
        augB, augC = {}, {}
        for j, current in enumerate(modes):
            for i, other in enumerate(modes):
                augB[(j, i)] = np.hstack([current.Bdiff, current.Pi @ other.JumpB])
                augC[(j, i)] = np.vstack([current.Cdiff, other.impc_operator])
        return cls(modes, augB, augC)

    @property
    def n(self):
        return self.decoupled[0].n

    @property
    def m(self):
        return self.decoupled[0].m

    @property
    def p(self):
        return self.decoupled[0].p

    @property
    def n_modes(self):
        return len(self.decoupled)

    @property
    def nu_max(self):
        return max(mode.nu for mode in self.decoupled)

    def aug_b(self, j, i=None):
        """Augmented input matrix of mode j entered from mode i; Bdiff_j alone on the first interval."""
        if i is None:
            return self.decoupled[j].Bdiff
        return self.augB[(j, i)]

    def aug_c(self, j, i=None):
        """Augmented output matrix of mode j left towards mode i; Cdiff_j alone on the last interval."""
        if i is None:
            return self.decoupled[j].Cdiff
        return self.augC[(j, i)]


def build_jump_ode(sys, **kwargs):
    """
    Decouples every mode of a switched DAE and assembles the jump-ODE reformulation.

    Parameters
    ----------
    sys: SwitchedDAE
        The switched DAE
    **kwargs: keyword arguments
        n_jobs: int
            Number of parallel jobs for the per-mode decoupling (default 1)
        joblib_backend: str
            joblib backend (default 'loky')

    Returns
    -------
    jos: JumpOdeSystem
    """
    params = update_all_param_dicts_with_kwargs(kwargs)
    if params['n_jobs'] == 1 or sys.n_modes == 1:
        decoupled = [decouple(mode, j, **kwargs) for j, mode in enumerate(sys.modes)]
    else:
        decoupled = Parallel(n_jobs=params['n_jobs'], backend=params['joblib_backend'])(
            delayed(decouple)(mode, j, **kwargs) for j, mode in enumerate(sys.modes))
    return JumpOdeSystem.from_modes(decoupled)


_jump_mode_fields = ('Adiff', 'Bdiff', 'Cdiff', 'Pi', 'JumpB', 'D', 'ImpC')


def _jump_mode_shapes(n, m, p, nu):
    return {'Adiff': (n, n), 'Bdiff': (n, m), 'Cdiff': (p, n), 'Pi': (n, n), 'JumpB': (n, m * nu),
            'D': (p, m * nu), 'ImpC': (p, n * max(nu - 1, 0))}


def jump_ode_to_dict(jos):
    """JSON-ready description of the reformulated system."""
    modes = []
    for mode in jos.decoupled:
        entry = {key: np.asarray(getattr(mode, key)).tolist() for key in _jump_mode_fields}
        entry['nu'] = int(mode.nu)
        modes.append(entry)
    return {'format': 'jump_ode', 'n': jos.n, 'm': jos.m, 'p': jos.p, 'modes': modes}


def is_jump_ode_description(document):
    return isinstance(document, dict) and document.get('format') == 'jump_ode'


def load_jump_ode(description):
    """
    Rebuilds a JumpOdeSystem from the output of jump_ode_to_dict.
    """
    document = read_description(description)
    n, m, p = (_parse_count(_require(document, key, 'jump_ode'), 'jump_ode', key, minimum=1)
               for key in ('n', 'm', 'p'))
    modes = []
    for j, raw in enumerate(_parse_list(_require(document, 'modes', 'jump_ode'), 'jump_ode', 'modes')):
        location = 'modes[{}]'.format(j + 1)
        nu = _parse_count(_require(raw, 'nu', location), location, 'nu')
        shapes = _jump_mode_shapes(n, m, p, nu)
        matrices = {}
        for key in _jump_mode_fields:
            try:
                matrices[key] = np.array(_require(raw, key, location), dtype=float).reshape(shapes[key])
            except (TypeError, ValueError):
                raise ParseError("'{}' does not have shape {}".format(key, shapes[key]), location=location)
        modes.append(JumpMode(nu=nu, **matrices))
    return JumpOdeSystem.from_modes(modes)
