from .gle import GramianPair, gle_operator, gle_residuals, solve_gle, transpose_gle_matrices, classical_gramians
from .restrict import RestrictedGle, restrict_to_differential
from .containment import containment_report, gramian_images
from .balance import ReducedModel, balance, reduce_mode, reduce_jump_ode, compare_reduced, reduce_and_compare
