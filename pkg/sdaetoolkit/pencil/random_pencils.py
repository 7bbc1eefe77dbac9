import numpy as np
import scipy.linalg as la


def _well_conditioned(n, random_state, spread=2.):
    Q1, _ = la.qr(random_state.randn(n, n))
    Q2, _ = la.qr(random_state.randn(n, n))
    d = random_state.uniform(1. / spread, spread, size=n)
    return Q1 @ np.diag(d) @ Q2


def nilpotent_block(n_N, nu):
    """Nilpotent matrix of size n_N and index nu made of Jordan chains of length at most nu."""
    N = np.zeros((n_N, n_N))
    start = 0
    while start < n_N:
        size = min(nu, n_N - start)
        for i in range(size - 1):
            N[start + i, start + i + 1] = 1.
        start += size
    return N


def random_regular_pencil(n, n_N=0, nu=None, random_state=None, shift=0.):
    """
    Random regular pencil with a differential block of size n - n_N and an algebraic block of
    size n_N and nilpotency index nu.

    E = L blkdiag(I, N) R and A = L blkdiag(J, I) R with L, R of condition number at most 4.

    Parameters
    ----------
    n: int
        Size of the pencil
    n_N: int
        Size of the algebraic block
    nu: int
        Nilpotency index of the algebraic block (1 <= nu <= n_N, default n_N)
    random_state: np.random.RandomState
        Random generator
    shift: float
        J is a standard normal matrix scaled by 1/sqrt(n_J) minus shift times the identity; a shift
        of 1.5 gives a stable J with high probability

    Returns
    -------
    E, A: np.ndarray
        The pencil
    """
    if random_state is None:
        random_state = np.random.RandomState(seed=0)
    if n_N > 0:
        if nu is None:
            nu = n_N
        if not 1 <= nu <= n_N:
            raise ValueError("'nu' must be between 1 and n_N={}".format(n_N))
    n_J = n - n_N
    J = random_state.randn(n_J, n_J) / np.sqrt(max(n_J, 1)) - shift * np.eye(n_J)
    N = nilpotent_block(n_N, nu) if n_N > 0 else np.zeros((0, 0))
    L = _well_conditioned(n, random_state)
    R = _well_conditioned(n, random_state)
    E = L @ la.block_diag(np.eye(n_J), N) @ R
    A = L @ la.block_diag(J, np.eye(n_N)) @ R
    return E, A
