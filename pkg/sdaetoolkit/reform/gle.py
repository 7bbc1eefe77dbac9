from dataclasses import dataclass

import numpy as np

from .switched_dae import SwitchedDAE
from .jump_ode import build_jump_ode


@dataclass(frozen=True, eq=False)
class GleMatrices:
    """
    Coefficients of the generalized Lyapunov equations

        Acal P + P Acal^T + sum_j (F_j P F_j^T + Btilde_j Btilde_j^T) = 0
        Acal^T Q + Q Acal + sum_j (F_j^T Q F_j + Ctilde_j^T Ctilde_j) = 0
    """
    Acal: np.ndarray
    F: tuple
    Btilde: tuple
    Ctilde: tuple

    @property
    def n(self):
        return self.Acal.shape[0]

    @property
    def n_modes(self):
        return len(self.F)


def gle_matrices(sys, predecessors=None, successors=None, **kwargs):
    """
    Assembles Acal = Adiff_1, F_j = Adiff_j - Adiff_1 and the augmented input and output matrices.

    By default Btilde_j = [Bdiff_j, Pi_j JumpB_1, ..., Pi_j JumpB_M] and Ctilde_j = [Cdiff_j; ImpC_1; ...; ImpC_M]
    stack every possible neighbour mode, the mode itself included, so that one pair of Gramians serves
    every switching signal.

    Parameters
    ----------
    sys: SwitchedDAE or JumpOdeSystem
        The system; a SwitchedDAE is reformulated first
    predecessors: dict
        Optional map j -> list of modes whose jump inputs enter Btilde_j
    successors: dict
        Optional map j -> list of modes whose impulse maps enter Ctilde_j

    Returns
    -------
    mats: GleMatrices
    """
    jos = build_jump_ode(sys, **kwargs) if isinstance(sys, SwitchedDAE) else sys
    modes = jos.decoupled
    everyone = list(range(jos.n_modes))
    Acal = modes[0].Adiff
    F, Btilde, Ctilde = [], [], []
    for j, mode in enumerate(modes):
        F.append(mode.Adiff - Acal)
        before = everyone if predecessors is None else predecessors[j]
        after = everyone if successors is None else successors[j]
        Btilde.append(np.hstack([mode.Bdiff] + [mode.Pi @ modes[i].JumpB for i in before]))
        Ctilde.append(np.vstack([mode.Cdiff] + [modes[i].impc_operator for i in after]))
    return GleMatrices(Acal, tuple(F), tuple(Btilde), tuple(Ctilde))
