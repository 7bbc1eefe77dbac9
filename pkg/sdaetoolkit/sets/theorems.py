"""
Numerical checks relating the jump-ODE system to its state-jump and no-jump counterparts.
"""

from dataclasses import dataclass, field

import numpy as np

from ..subspace import image, apply, subspace_sum, intersect, preimage, kernel, smallest_invariant, \
    largest_invariant_in, contains, same_subspace, orth_complement
from ..sim import expm
from ..utils import tolerance_params_dict
from .recursions import reach_recursion, unobs_recursion


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one numerical check. value is the largest principal angle or response it measured."""
    name: str
    passed: bool
    value: float
    details: dict = field(default_factory=dict)

    def as_row(self):
        row = {'check': self.name, 'passed': self.passed, 'value': self.value}
        row.update(self.details)
        return row


def _jump_map(mode, identity_jumps):
    return np.eye(mode.n) if identity_jumps else mode.Pi


def state_jump_reach_chain(jos, q, identity_jumps=False, **kwargs):
    """
    Reachable chain of the system with state jumps only and augmented inputs:

        M'_k = <Adiff_{q_k} | im Btilde_{q_k, q_{k-1}}> + exp(Adiff_{q_k} tau_k) Pi_{q_k} M'_{k-1}

    with Btilde_{q_0} = Bdiff_{q_0}. identity_jumps replaces every Pi by the identity.
    """
    durations = q.durations()
    modes = q.modes
    chain = []
    for k, j in enumerate(modes):
        mode = jos.decoupled[j]
        previous = modes[k - 1] if k > 0 else None
        local = smallest_invariant(mode.Adiff, image(jos.aug_b(j, previous), **kwargs), **kwargs)
        if k == 0:
            chain.append(local)
            continue
        jumped = apply(_jump_map(mode, identity_jumps), chain[-1], **kwargs)
        carried = apply(expm(mode.Adiff, durations[k]), jumped, invertible=True, **kwargs)
        chain.append(subspace_sum(local, carried, **kwargs))
    return chain


def augmented_unobs_chain(jos, q, identity_jumps=False, **kwargs):
    """
    Unobservable chain of the system without output impulses and augmented outputs:

        N'_K = <ker Cdiff_{q_K} | Adiff_{q_K}>
        N'_k = <ker Ctilde_{q_k, q_{k+1}} | Adiff_{q_k}> cap exp(-Adiff_{q_k} tau_k) Pi_{q_{k+1}}^{-1} N'_{k+1}
    """
    durations = q.durations()
    modes = q.modes
    K = len(modes) - 1
    chain = [None] * (K + 1)
    for k in range(K, -1, -1):
        j = modes[k]
        mode = jos.decoupled[j]
        following = modes[k + 1] if k < K else None
        local = largest_invariant_in(kernel(jos.aug_c(j, following), **kwargs), mode.Adiff, **kwargs)
        if k == K:
            chain[k] = local
            continue
        pulled = preimage(_jump_map(jos.decoupled[following], identity_jumps), chain[k + 1], **kwargs)
        back = apply(expm(mode.Adiff, -durations[k]), pulled, invertible=True, **kwargs)
        chain[k] = intersect(local, back, **kwargs)
    return chain


def verify_theorem1(jos, q, tol_angle=None, **kwargs):
    """
    Checks that the reachable set of the state-jump system with augmented inputs contains the reachable
    set of the jump-ODE system, M'_k containing M_k for every k.

    Returns
    -------
    report: VerificationReport
        value is the largest principal angle over all k; passed refers to the final set
    """
    if tol_angle is None:
        tol_angle = tolerance_params_dict['tol_angle']
    reach = reach_recursion(jos, q, **kwargs)
    chain = state_jump_reach_chain(jos, q, **kwargs)
    verdicts = [contains(outer, inner, tol_angle) for outer, inner in zip(chain, reach.M)]
    final = verdicts[-1]
    details = {'dim_R_q': reach.R_q.dim, 'dim_state_jump': chain[-1].dim,
               'all_intervals': all(v.contained for v in verdicts)}
    return VerificationReport('theorem1', final.contained, max(v.angle for v in verdicts), details)


def verify_theorem2(jos, q, tol_angle=None, **kwargs):
    """
    Checks that the unobservable chain of the augmented-output system without impulses equals the
    unobservable chain of the jump-ODE system, for the signal as given and with every duration doubled.
    """
    if tol_angle is None:
        tol_angle = tolerance_params_dict['tol_angle']
    angle, passed, details = 0., True, {}
    for label, signal in (('', q), ('_doubled', q.scaled(2.))):
        obs = unobs_recursion(jos, signal, **kwargs)
        chain = augmented_unobs_chain(jos, signal, **kwargs)
        verdicts = [same_subspace(a, b, tol_angle) for a, b in zip(chain, obs.N)]
        passed = passed and all(v.contained for v in verdicts)
        angle = max([angle] + [v.angle for v in verdicts])
        details['dim_UO_q' + label] = obs.UO_q.dim
        details['dim_augmented' + label] = chain[0].dim
    return VerificationReport('theorem2', passed, angle, details)


def verify_nojump_inclusion(jos, q, tol_angle=None, **kwargs):
    """
    Compares the state-jump system with its no-jump version (every Pi replaced by the identity):
    the reachable set must be contained in the no-jump reachable set and the observable set in the
    no-jump observable set.
    """
    if tol_angle is None:
        tol_angle = tolerance_params_dict['tol_angle']
    R = state_jump_reach_chain(jos, q, **kwargs)[-1]
    R_nojump = state_jump_reach_chain(jos, q, identity_jumps=True, **kwargs)[-1]
    O = orth_complement(augmented_unobs_chain(jos, q, **kwargs)[0])
    O_nojump = orth_complement(augmented_unobs_chain(jos, q, identity_jumps=True, **kwargs)[0])
    reach = contains(R_nojump, R, tol_angle)
    observe = contains(O_nojump, O, tol_angle)
    details = {'reachable_contained': reach.contained, 'observable_contained': observe.contained,
               'dim_R_q': R.dim, 'dim_R_nojump': R_nojump.dim, 'dim_O_q': O.dim, 'dim_O_nojump': O_nojump.dim}
    return VerificationReport('nojump_inclusion', reach.contained and observe.contained,
                              max(reach.angle, observe.angle), details)
