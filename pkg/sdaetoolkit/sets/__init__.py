from .recursions import ReachResult, ObsResult, local_reachable, local_unobservable, flow_projected, pull_back, \
    reach_recursion, unobs_recursion, reachable_span, observable_span
from .theorems import VerificationReport, state_jump_reach_chain, augmented_unobs_chain, verify_theorem1, \
    verify_theorem2, verify_nojump_inclusion
from .oracles import reachability_oracle, observability_oracle
