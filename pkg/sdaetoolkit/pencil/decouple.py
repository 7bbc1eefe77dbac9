from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from ..exceptions import DimensionMismatch, NotRegular
from ..utils import as_matrix, relative_frobenius
from .regularity import is_regular
from .qwf import QwfData, qwf


@dataclass(frozen=True, eq=False)
class ModeSystem:
    """
    One mode E x' = A x + B u, y = C x of a switched DAE.
    """
    E: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        E = as_matrix(self.E, 'E')
        n = E.shape[0]
        if E.shape != (n, n):
            raise DimensionMismatch("'E' must be square, got shape {}".format(E.shape))
        object.__setattr__(self, 'E', E)
        object.__setattr__(self, 'A', as_matrix(self.A, 'A', shape=(n, n)))
        object.__setattr__(self, 'B', as_matrix(self.B, 'B', shape=(n, None)))
        object.__setattr__(self, 'C', as_matrix(self.C, 'C', shape=(None, n)))

    @property
    def n(self):
        return self.E.shape[0]

    @property
    def m(self):
        return self.B.shape[1]

    @property
    def p(self):
        return self.C.shape[0]


@dataclass(frozen=True, eq=False)
class JumpMode:
    """
    One mode of the switched ODE with jumps and impulses

        z' = Adiff z + Bdiff u,  z(t_k+) = Pi (z(t_k-) + JumpB U_prev(t_k-)),  y = Cdiff z + D U

    where U stacks u and its first nu - 1 derivatives. ImpC holds the blocks
    [ImpC_1, ..., ImpC_{nu-1}] side by side, ImpC_i mapping states to the coefficient of the
    i-th derivative of the Dirac impulse in the output.
    """
    Adiff: np.ndarray
    Bdiff: np.ndarray
    Cdiff: np.ndarray
    Pi: np.ndarray
    JumpB: np.ndarray
    D: np.ndarray
    ImpC: np.ndarray
    nu: int

    @property
    def n(self):
        return self.Adiff.shape[0]

    @property
    def m(self):
        return self.Bdiff.shape[1]

    @property
    def p(self):
        return self.Cdiff.shape[0]

    @property
    def impc_blocks(self):
        n = self.n
        return [self.ImpC[:, i * n:(i + 1) * n] for i in range(max(self.nu - 1, 0))]

    @property
    def impc_operator(self):
        """ImpC blocks stacked as rows, the map z -> all impulse coefficients."""
        blocks = self.impc_blocks
        if len(blocks) == 0:
            return np.zeros((0, self.n))
        return np.vstack(blocks)


@dataclass(frozen=True, eq=False)
class DecoupledMode(JumpMode):
    qwf: QwfData
    Pi_diff: np.ndarray
    Pi_imp: np.ndarray
    Eimp: np.ndarray
    Bimp: np.ndarray
    Cimp: np.ndarray
    system: ModeSystem


def decouple(mode, mode_index=None, **kwargs):
    """
    Builds the projector and selector matrices of one mode.

    Pi = T blkdiag(I, 0) T^{-1}, Pi_diff = T blkdiag(I, 0) S and Pi_imp = T blkdiag(0, I) S.
    The derived matrices do not depend on the choice of S and T.

    Parameters
    ----------
    mode: ModeSystem
        Mode to decouple
    mode_index: int
        Position of the mode in its switched system, only used in error messages

    Returns
    -------
    decoupled: DecoupledMode
    """
    verdict = is_regular(mode.E, mode.A, **kwargs)
    if not verdict:
        raise NotRegular("pencil (E, A) is singular", mode_index)
    try:
        data = qwf(mode.E, mode.A, **kwargs)
    except NotRegular as e:
        raise NotRegular(str(e), mode_index)
    return decouple_with_qwf(mode, data)


def decouple_with_qwf(mode, data):
    n, n_J, nu = mode.n, data.n_J, data.nu
    T, S = data.T, data.S
    T_inv = la.inv(T)

    Pi = T[:, :n_J] @ T_inv[:n_J, :]
    Pi_diff = T[:, :n_J] @ S[:n_J, :]
    Pi_imp = T[:, n_J:] @ S[n_J:, :]

    Adiff = Pi_diff @ mode.A
    Bdiff = Pi_diff @ mode.B
    Cdiff = mode.C @ Pi
    Eimp = Pi_imp @ mode.E
    Bimp = Pi_imp @ mode.B
    Cimp = mode.C @ (np.eye(n) - Pi)

    powers = [np.eye(n)]
    for _ in range(1, nu):
        powers.append(powers[-1] @ Eimp)
    if nu > 0:
        JumpB = np.hstack([Ek @ Bimp for Ek in powers])
    else:
        JumpB = np.zeros((n, 0))
    D = -Cimp @ JumpB
    if nu > 1:
        ImpC = np.hstack([-Cimp @ Ek for Ek in powers[1:]])
    else:
        ImpC = np.zeros((mode.p, 0))

    return DecoupledMode(Adiff=Adiff, Bdiff=Bdiff, Cdiff=Cdiff, Pi=Pi, JumpB=JumpB, D=D, ImpC=ImpC, nu=nu,
                         qwf=data, Pi_diff=Pi_diff, Pi_imp=Pi_imp, Eimp=Eimp, Bimp=Bimp, Cimp=Cimp, system=mode)


def decoupling_residuals(mode):
    """
    Relative Frobenius residuals of the identities every decoupled mode satisfies.

    Returns
    -------
    residuals: dict
        Keys 'idempotency' (Pi^2 = Pi), 'differential_selector' (Pi_diff E = Pi), 'impulse_projection'
        (Pi Eimp = 0), 'impulse_nilpotency' (Eimp^nu = 0), 'flow_left' (Pi Adiff = Adiff) and
        'flow_right' (Adiff Pi = Adiff)
    """
    E = mode.system.E
    Pi, Adiff, Eimp = mode.Pi, mode.Adiff, mode.Eimp
    nilpotent_power = np.linalg.matrix_power(Eimp, max(mode.nu, 1))
    return {
        'idempotency': relative_frobenius(Pi @ Pi - Pi, Pi),
        'differential_selector': relative_frobenius(mode.Pi_diff @ E - Pi, Pi),
        'impulse_projection': relative_frobenius(Pi @ Eimp, Eimp),
        'impulse_nilpotency': relative_frobenius(nilpotent_power, Eimp),
        'flow_left': relative_frobenius(Pi @ Adiff - Adiff, Adiff),
        'flow_right': relative_frobenius(Adiff @ Pi - Adiff, Adiff),
    }
