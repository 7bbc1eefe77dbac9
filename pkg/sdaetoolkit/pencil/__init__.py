from .regularity import RegularityVerdict, is_regular
from .wong import wong_sequences
from .qwf import QwfData, qwf, qwf_from_bases, nilpotency_index
from .decouple import ModeSystem, JumpMode, DecoupledMode, decouple, decouple_with_qwf, decoupling_residuals
from .random_pencils import random_regular_pencil, nilpotent_block
