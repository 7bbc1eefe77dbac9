from .property_check import PropertyCheck
from .check_data import CheckData
from .pencil_invariants import PencilInvariants, basis_choice_deviation
from .impulsive_equivalence import ImpulsiveEquivalence, state_deviation
from .reachability_oracle import ReachabilityOracle
from .observability_oracle import ObservabilityOracle
from .theorem_checks import Theorem1, Theorem2, NoJumpInclusion
from .gramian_containment import GramianContainment
