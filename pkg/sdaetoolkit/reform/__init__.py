from .switched_dae import SwitchedDAE, SwitchingSignal, load_switched_dae, load_switching_signal, \
    switched_dae_to_dict, switching_signal_to_dict, read_description
from .jump_ode import JumpOdeSystem, build_jump_ode, jump_ode_to_dict, load_jump_ode, is_jump_ode_description
from .gle import GleMatrices, gle_matrices
from .random_models import random_switched_dae, random_switching_signal
