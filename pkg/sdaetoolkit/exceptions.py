"""
Error types raised by the toolkit.

Input problems derive from ValueError, failures of a numerical procedure on
valid input derive from ArithmeticError. The command line maps the two roots
to distinct exit codes.
"""


class ValidationError(ValueError):
    pass


class NumericalFailure(ArithmeticError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = "{}: {}".format(location, message)
        super().__init__(message)


class DimensionMismatch(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class NotRegular(ValidationError):
    def __init__(self, message, mode_index=None):
        self.mode_index = mode_index
        if mode_index is not None:
            message = "mode {}: {}".format(mode_index + 1, message)
        super().__init__(message)


class AmbientMismatch(ValidationError):
    pass


class OutOfHorizon(ValidationError):
    pass


class InsufficientInputSmoothness(ValidationError):
    pass


class RankTooLow(ValidationError):
    def __init__(self, message, max_order):
        self.max_order = max_order
        super().__init__("{} (max feasible order {})".format(message, max_order))


class HeterogeneousDifferentialSubspaces(ValidationError):
    pass


class IllConditionedBasis(NumericalFailure):
    def __init__(self, message, condition_number):
        self.condition_number = condition_number
        super().__init__("{} (condition number {:.3e})".format(message, condition_number))


class OperatorSingular(NumericalFailure):
    pass


class NotPSD(NumericalFailure):
    def __init__(self, message, min_eigenvalue):
        self.min_eigenvalue = min_eigenvalue
        super().__init__("{} (most negative eigenvalue {:.6e})".format(message, min_eigenvalue))
