"""
Subspace algebra over R^n at a numerical rank tolerance.

Every subspace is carried as an orthonormal basis, recomputed after each
operation. Rank decisions go through utils.numerical_rank, always relative to
the norm of the operator that produced the matrix being ranked.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from ..exceptions import AmbientMismatch, DimensionMismatch
from ..utils import numerical_rank, tolerance_params_dict, as_matrix, spectral_norm


@dataclass(frozen=True, eq=False)
class Subspace:
    basis: np.ndarray
    ambient_dim: int
    tol: float = None

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def full(cls, n, tol=None):
        return cls(np.eye(n), n, tol)

    @classmethod
    def zero(cls, n, tol=None):
        return cls(np.zeros((n, 0)), n, tol)

    def projector(self):
        return self.basis @ self.basis.T

    def __repr__(self):
        return "Subspace(dim={}, ambient_dim={})".format(self.dim, self.ambient_dim)


class Containment(namedtuple('Containment', ['contained', 'angle'])):
    __slots__ = ()

    def __bool__(self):
        return bool(self.contained)


def _tol_rank(kwargs):
    return kwargs.get('tol_rank', tolerance_params_dict['tol_rank'])


def _check_ambient(*subspaces):
    dims = set(s.ambient_dim for s in subspaces)
    if len(dims) > 1:
        raise AmbientMismatch("Subspaces live in different ambient spaces: {}".format(sorted(dims)))


def _column_space(X, scale, tol_rank):
    if X.shape[1] == 0:
        return np.zeros((X.shape[0], 0))
    U, s, _ = la.svd(X, full_matrices=False)
    r = numerical_rank(s, X.shape, scale=scale, tol_rank=tol_rank)
    return U[:, :r]


def _orthonormalize(X, rank):
    if rank == 0:
        return np.zeros((X.shape[0], 0))
    U, _, _ = la.svd(X, full_matrices=False)
    return U[:, :rank]


def _null_space(X, scale, tol_rank):
    if X.shape[0] == 0:
        return np.eye(X.shape[1])
    _, s, Vh = la.svd(X, full_matrices=True)
    r = numerical_rank(s, X.shape, scale=scale, tol_rank=tol_rank)
    return Vh[r:].T


def image(M, scale=None, **kwargs):
    """
    Column span of M.

    Parameters
    ----------
    M: np.ndarray
        n x k matrix
    scale: float
        Magnitude the rank threshold is relative to. Defaults to the largest singular value of M;
        callers pass the norm of the operator that produced M when M may be pure roundoff.

    Returns
    -------
    subspace: Subspace
        Orthonormal basis of the numerical column span
    """
    tol_rank = _tol_rank(kwargs)
    M = as_matrix(M, 'M')
    return Subspace(_column_space(M, scale, tol_rank), M.shape[0], tol_rank)


def apply(M, L, invertible=False, **kwargs):
    """
    Image M L of a subspace under a matrix map.

    With invertible=True the dimension of L is kept, as for matrix exponentials.
    """
    tol_rank = _tol_rank(kwargs)
    if M.shape[1] != L.ambient_dim:
        raise AmbientMismatch("Map with {} columns applied to a subspace of R^{}".format(M.shape[1], L.ambient_dim))
    X = M @ L.basis
    if invertible:
        basis = _orthonormalize(X, L.dim)
    else:
        basis = _column_space(X, spectral_norm(M), tol_rank)
    return Subspace(basis, M.shape[0], tol_rank)


def subspace_sum(U, V, **kwargs):
    _check_ambient(U, V)
    tol_rank = _tol_rank(kwargs)
    residual = V.basis - U.basis @ (U.basis.T @ V.basis)
    new = _column_space(residual, 1., tol_rank)
    return Subspace(np.hstack([U.basis, new]), U.ambient_dim, tol_rank)


def intersect(U, V, **kwargs):
    """
    Intersection through the null space of [basis_U, -basis_V].

    Each null vector (a, b) pairs basis_U a = basis_V b, mapped back through basis_U.
    """
    _check_ambient(U, V)
    tol_rank = _tol_rank(kwargs)
    n = U.ambient_dim
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(n, tol_rank)
    stacked = np.hstack([U.basis, -V.basis])
    null = _null_space(stacked, 1., tol_rank)
    X = U.basis @ null[:U.dim]
    return Subspace(_orthonormalize(X, null.shape[1]), n, tol_rank)


def preimage(M, L, **kwargs):
    """
    Set preimage {x : M x in L}, computed as null(P_perp M) with P_perp the orthogonal
    projector onto the complement of L. Always contains null(M).
    """
    tol_rank = _tol_rank(kwargs)
    M = as_matrix(M, 'M')
    if M.shape[0] != L.ambient_dim:
        raise AmbientMismatch("Map into R^{} pulled back from a subspace of R^{}".format(M.shape[0], L.ambient_dim))
    projected = M - L.basis @ (L.basis.T @ M)
    null = _null_space(projected, spectral_norm(M), tol_rank)
    return Subspace(null, M.shape[1], tol_rank)


def orth_complement(U):
    n = U.ambient_dim
    if U.dim == 0:
        return Subspace.full(n, U.tol)
    if U.dim == n:
        return Subspace.zero(n, U.tol)
    # the basis is orthonormal, so every singular value is 1 and the default rcond is exact
    return Subspace(la.null_space(U.basis.T), n, U.tol)


def kernel(M, scale=None, **kwargs):
    """Null space of M as the orthogonal complement of im(M^T)."""
    M = as_matrix(M, 'M')
    if scale is None:
        scale = spectral_norm(M)
    return orth_complement(image(M.T, scale=scale, **kwargs))


def _check_square(A, n):
    if A.shape != (n, n):
        raise AmbientMismatch("Matrix of shape {} does not act on R^{}".format(A.shape, n))


def smallest_invariant(A, L, **kwargs):
    """
    Smallest A-invariant subspace containing L, i.e. L + A L + ... + A^(n-1) L.

    Stops as soon as one step adds no direction.
    """
    tol_rank = _tol_rank(kwargs)
    A = as_matrix(A, 'A')
    n = L.ambient_dim
    _check_square(A, n)
    scale = spectral_norm(A)
    result = L
    for _ in range(n):
        X = A @ result.basis
        residual = X - result.basis @ (result.basis.T @ X)
        new = _column_space(residual, scale, tol_rank)
        if new.shape[1] == 0:
            break
        result = Subspace(np.hstack([result.basis, new]), n, tol_rank)
    return result


def largest_invariant_in(L, A, **kwargs):
    """
    Largest A-invariant subspace contained in L, by the chain V_{i+1} = L cap A^{-1} V_i.
    """
    A = as_matrix(A, 'A')
    n = L.ambient_dim
    _check_square(A, n)
    result = L
    for _ in range(n):
        shrunk = intersect(L, preimage(A, result, **kwargs), **kwargs)
        if shrunk.dim == result.dim:
            return shrunk
        result = shrunk
    return result


def contains(U, V, tol_angle=None):
    """
    Tests V subset of U by the largest principal angle between V and its projection onto U.

    Parameters
    ----------
    U: Subspace
        Candidate superset
    V: Subspace
        Candidate subset
    tol_angle: float
        Largest admitted angle in radians (default from the tolerance parameters)

    Returns
    -------
    containment: Containment
        (contained, angle) pair, truthy when contained
    """
    _check_ambient(U, V)
    if tol_angle is None:
        tol_angle = tolerance_params_dict['tol_angle']
    if V.dim == 0:
        return Containment(True, 0.)
    residual = V.basis - U.basis @ (U.basis.T @ V.basis)
    sines = la.svdvals(residual)
    angle = float(np.arcsin(min(sines.max(), 1.)))
    return Containment(angle <= tol_angle, angle)


def same_subspace(U, V, tol_angle=None):
    """Mutual containment; returns (equal, largest angle of the two directions)."""
    forward = contains(U, V, tol_angle)
    backward = contains(V, U, tol_angle)
    return Containment(forward.contained and backward.contained, max(forward.angle, backward.angle))


def check_subspace_basis(U, tol=1e-12):
    if U.basis.shape != (U.ambient_dim, U.dim):
        raise DimensionMismatch("Basis of shape {} in R^{}".format(U.basis.shape, U.ambient_dim))
    return np.linalg.norm(U.basis.T @ U.basis - np.eye(U.dim)) <= tol
