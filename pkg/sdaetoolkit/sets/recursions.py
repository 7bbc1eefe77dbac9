from dataclasses import dataclass
import warnings

from ..subspace import Subspace, image, apply, subspace_sum, intersect, preimage, orth_complement, kernel, \
    smallest_invariant, largest_invariant_in, same_subspace
from ..sim import expm
from ..utils import spectral_norm


@dataclass(frozen=True, eq=False)
class ReachResult:
    """
    Reachable chain along a switching signal: M[k] is the set of states reachable at t_{k+1}- and Mtilde[k]
    adds the jump input available at that instant.
    """
    M: tuple
    Mtilde: tuple
    final_duration_invariant: bool = True

    @property
    def R_q(self):
        return self.M[-1]


@dataclass(frozen=True, eq=False)
class ObsResult:
    """Unobservable chain along a switching signal, N[k] living at t_k+."""
    N: tuple

    @property
    def UO_q(self):
        return self.N[0]

    @property
    def O_q(self):
        return orth_complement(self.N[0])


def local_reachable(mode, **kwargs):
    """
    Reachable subspace <Adiff | im Bdiff> of one mode and its extension by the jump input image im JumpB.

    Parameters
    ----------
    mode: JumpMode
        Decoupled mode

    Returns
    -------
    R: Subspace
        Smallest Adiff-invariant subspace containing im Bdiff
    Rtilde: Subspace
        R + im JumpB
    """
    scale = max(spectral_norm(mode.Bdiff), spectral_norm(mode.JumpB))
    R = smallest_invariant(mode.Adiff, image(mode.Bdiff, scale=scale, **kwargs), **kwargs)
    Rtilde = subspace_sum(R, image(mode.JumpB, scale=scale, **kwargs), **kwargs)
    return R, Rtilde


def local_unobservable(mode, **kwargs):
    """Largest Adiff-invariant subspace inside ker Cdiff."""
    scale = max(spectral_norm(mode.Cdiff), spectral_norm(mode.ImpC))
    return largest_invariant_in(kernel(mode.Cdiff, scale=scale, **kwargs), mode.Adiff, **kwargs)


def flow_projected(mode, tau, L, **kwargs):
    """exp(Adiff tau) Pi L"""
    return apply(expm(mode.Adiff, tau), apply(mode.Pi, L, **kwargs), invertible=True, **kwargs)


def pull_back(mode, tau, next_mode, L, **kwargs):
    """exp(-Adiff tau) (Pi_next^{-1} L cap ker ImpC_next)"""
    allowed = intersect(preimage(next_mode.Pi, L, **kwargs), kernel(next_mode.impc_operator, **kwargs), **kwargs)
    return apply(expm(mode.Adiff, -tau), allowed, invertible=True, **kwargs)


def reach_recursion(jos, q, **kwargs):
    """
    Reachable subspaces along q:

        M_0 = R_{q_0},  Mtilde_0 = Rtilde_{q_0}
        M_k = R_{q_k} + exp(Adiff_{q_k} tau_k) Pi_{q_k} Mtilde_{k-1}
        Mtilde_k = Rtilde_{q_k} + exp(Adiff_{q_k} tau_k) Pi_{q_k} Mtilde_{k-1}

    with tau_k = t_{k+1} - t_k and t_{K+1} = t_end. The last step is recomputed with twice the final duration
    and final_duration_invariant records whether M_K changed.

    Parameters
    ----------
    jos: JumpOdeSystem
        The reformulated system
    q: SwitchingSignal
        Switching signal

    Returns
    -------
    reach: ReachResult
    """
    q.check_modes(jos.n_modes)
    local = {j: local_reachable(jos.decoupled[j], **kwargs) for j in set(q.modes)}
    durations = q.durations()
    M, Mtilde = [], []
    for k, j in enumerate(q.modes):
        R, Rtilde = local[j]
        if k == 0:
            M.append(R)
            Mtilde.append(Rtilde)
            continue
        carried = flow_projected(jos.decoupled[j], durations[k], Mtilde[-1], **kwargs)
        M.append(subspace_sum(R, carried, **kwargs))
        Mtilde.append(subspace_sum(Rtilde, carried, **kwargs))

    invariant = True
    if q.K > 0:
        j = q.modes[-1]
        carried = flow_projected(jos.decoupled[j], 2 * durations[-1], Mtilde[-2], **kwargs)
        doubled = subspace_sum(local[j][0], carried, **kwargs)
        invariant = bool(same_subspace(M[-1], doubled))
        if not invariant:
            warnings.warn("the reachable set at t_end depends on the duration of the last interval")
    return ReachResult(tuple(M), tuple(Mtilde), invariant)


def unobs_recursion(jos, q, **kwargs):
    """
    Unobservable subspaces along q, backwards from N_K = U_{q_K}:

        N_k = U_{q_k} cap exp(-Adiff_{q_k} tau_k) (Pi_{q_{k+1}}^{-1} N_{k+1} cap ker ImpC_{q_{k+1}})

    with U_j = <ker Cdiff_j | Adiff_j>.
    """
    q.check_modes(jos.n_modes)
    local = {j: local_unobservable(jos.decoupled[j], **kwargs) for j in set(q.modes)}
    durations = q.durations()
    modes = q.modes
    N = [None] * len(modes)
    N[-1] = local[modes[-1]]
    for k in range(len(modes) - 2, -1, -1):
        back = pull_back(jos.decoupled[modes[k]], durations[k], jos.decoupled[modes[k + 1]], N[k + 1], **kwargs)
        N[k] = intersect(local[modes[k]], back, **kwargs)
    return ObsResult(tuple(N))


def reachable_span(jos, signals, **kwargs):
    """
    Span of R_q over a finite family of signals. The reachable set is a union over every admissible
    signal, so this is an under-approximation of it.
    """
    span = Subspace.zero(jos.n)
    for q in signals:
        span = subspace_sum(span, reach_recursion(jos, q, **kwargs).R_q, **kwargs)
    return span


def observable_span(jos, signals, **kwargs):
    """Span of O_q over a finite family of signals; an under-approximation of the observable set."""
    span = Subspace.zero(jos.n)
    for q in signals:
        span = subspace_sum(span, unobs_recursion(jos, q, **kwargs).O_q, **kwargs)
    return span
