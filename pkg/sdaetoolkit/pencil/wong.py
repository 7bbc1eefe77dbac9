from ..exceptions import NotRegular
from ..subspace import Subspace, apply, preimage, intersect
from .regularity import check_pencil


def _limit(step, start, n):
    current = start
    for _ in range(n + 1):
        following = step(current)
        if following.dim == current.dim:
            return following
        current = following
    return current


def wong_sequences(E, A, **kwargs):
    """
    Limits of the Wong sequences of the pencil (E, A).

    V_0 = R^n, V_{i+1} = A^{-1}(E V_i) and W_0 = {0}, W_{i+1} = E^{-1}(A W_i), with preimages in the set sense.
    Both chains are monotone, so each stops the first time its dimension does not change.

    Parameters
    ----------
    E: np.ndarray
        n x n matrix
    A: np.ndarray
        n x n matrix

    Returns
    -------
    V: Subspace
        Limit of the first sequence (differential part)
    W: Subspace
        Limit of the second sequence (algebraic part)
    """
    E, A = check_pencil(E, A)
    n = E.shape[0]
    V = _limit(lambda L: preimage(A, apply(E, L, **kwargs), **kwargs), Subspace.full(n), n)
    W = _limit(lambda L: preimage(E, apply(A, L, **kwargs), **kwargs), Subspace.zero(n), n)

    if V.dim + W.dim != n:
        raise NotRegular("Wong limits have dimensions {} + {} != {}".format(V.dim, W.dim, n))
    overlap = intersect(V, W, **kwargs)
    if overlap.dim > 0:
        raise NotRegular("Wong limits intersect in a subspace of dimension {}".format(overlap.dim))
    return V, W
