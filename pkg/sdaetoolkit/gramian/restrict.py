from dataclasses import dataclass

import numpy as np

from ..exceptions import HeterogeneousDifferentialSubspaces
from ..reform import GleMatrices
from ..subspace import image, kernel, same_subspace
from ..utils import spectral_norm
from .gle import GramianPair, gle_residuals


@dataclass(frozen=True, eq=False)
class RestrictedGle:
    """
    Generalized Lyapunov coefficients on the common differential subspace.

    basis (n x n_J) spans im Pi and selector (n_J x n) satisfies Pi = basis @ selector, so x -> selector @ x
    gives the differential coordinates of x along ker Pi.
    """
    mats: GleMatrices
    basis: np.ndarray
    selector: np.ndarray

    @property
    def n_J(self):
        return self.basis.shape[1]

    def lift_P(self, P_r):
        return self.basis @ P_r @ self.basis.T

    def lift_Q(self, Q_r):
        return self.selector.T @ Q_r @ self.selector

    def lift(self, gram, full_mats=None):
        """
        Lifts a Gramian pair of the restricted problem back to R^n (zero on the algebraic part). With
        full_mats the residuals are recomputed against the unrestricted equations.
        """
        P = self.lift_P(gram.P)
        Q = self.lift_Q(gram.Q)
        residual_P, residual_Q = gram.residual_P, gram.residual_Q
        if full_mats is not None:
            residual_P, residual_Q = gle_residuals(full_mats, P, Q)
        return GramianPair(P, Q, residual_P, residual_Q, gram.operator_stable, gram.eigenvalue_range_P,
                           gram.eigenvalue_range_Q)


def _common_projector_subspaces(modes, **kwargs):
    first = modes[0]
    scale = spectral_norm(first.Pi)
    im_first = image(first.Pi, scale=scale, **kwargs)
    ker_first = kernel(first.Pi, scale=scale, **kwargs)
    for j, mode in enumerate(modes[1:], start=2):
        im_j = image(mode.Pi, scale=spectral_norm(mode.Pi), **kwargs)
        if not same_subspace(im_first, im_j):
            raise HeterogeneousDifferentialSubspaces(
                "mode {} has a differential subspace of dimension {} different from mode 1 (dimension {})"
                .format(j, im_j.dim, im_first.dim) if im_j.dim != im_first.dim else
                "mode {} and mode 1 have different differential subspaces im(Pi)".format(j))
        if not same_subspace(ker_first, kernel(mode.Pi, scale=spectral_norm(mode.Pi), **kwargs)):
            raise HeterogeneousDifferentialSubspaces(
                "mode {} and mode 1 project along different subspaces ker(Pi); the lifted observability "
                "Gramian would not solve the full equations".format(j))
    return im_first


def restrict_to_differential(mats, jos, **kwargs):
    """
    Restricts the generalized Lyapunov equations to the differential subspace shared by all modes.

    Every Adiff_j vanishes on ker Pi and maps into im Pi, so in coordinates adapted to im Pi (+) ker Pi the
    coefficients are block triangular and the leading n_J x n_J block carries the whole problem.
    The restriction is refused unless all modes have the same projector image and kernel.

    Parameters
    ----------
    mats: GleMatrices
        Coefficients from reform.gle_matrices
    jos: JumpOdeSystem
        The system the coefficients were built from, providing the projectors

    Returns
    -------
    restricted: RestrictedGle
    """
    modes = jos.decoupled
    im_Pi = _common_projector_subspaces(modes, **kwargs)
    basis = im_Pi.basis
    selector = basis.T @ modes[0].Pi
    Acal = selector @ mats.Acal @ basis
    F = tuple(selector @ F_j @ basis for F_j in mats.F)
    Btilde = tuple(selector @ B for B in mats.Btilde)
    Ctilde = tuple(C @ basis for C in mats.Ctilde)
    return RestrictedGle(GleMatrices(Acal, F, Btilde, Ctilde), basis, selector)
