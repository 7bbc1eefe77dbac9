from .check_classes import PencilInvariants, ImpulsiveEquivalence, ReachabilityOracle, ObservabilityOracle, \
    Theorem1, Theorem2, NoJumpInclusion, GramianContainment

checks_full_list = [
    PencilInvariants,
    ImpulsiveEquivalence,
    ReachabilityOracle,
    ObservabilityOracle,
    Theorem1,
    Theorem2,
    NoJumpInclusion,
    GramianContainment,
]

check_dict = {c_class.check_name: c_class for c_class in checks_full_list}


def get_checks_list():
    return [c_class.check_name for c_class in checks_full_list]
