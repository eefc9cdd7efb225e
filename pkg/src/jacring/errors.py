"""Exception and warning types."""


class JacRingError(Exception):
    pass


class InvalidParameter(JacRingError, ValueError):
    pass


class DimensionMismatch(JacRingError, ValueError):
    pass


class FormSyntaxError(JacRingError, ValueError):
    pass


class InhomogeneousForm(JacRingError, ValueError):
    pass


class UnknownVariable(JacRingError, ValueError):
    pass


class NotSmooth(JacRingError):
    """The Jacobian ring is not Artinian in the expected range."""


class SmoothnessNotFound(NotSmooth):
    pass


class RingMismatch(JacRingError, ValueError):
    pass


class LimitExceeded(JacRingError):
    pass


class HypothesisWarning(UserWarning):
    """Inputs fall outside the range where the classical statements apply."""
