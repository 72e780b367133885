"""Exception types shared across the package."""


class SeqBellError(Exception):
    """Base class for all package errors."""


class SizeLimitError(SeqBellError, ValueError):
    """Requested size exceeds a configured cap or valid range."""


class DimensionError(SeqBellError, ValueError):
    """Matrix shapes are incompatible."""


class NumericalConsistencyError(SeqBellError, ArithmeticError):
    """A quantity that must be real (or exact) carries a residue above tolerance."""


class ParameterError(SeqBellError, ValueError):
    """POVM or protocol parameters outside their valid domain."""


class NoConstraintsError(SeqBellError, ValueError):
    """There are no non-trivial parity constraints for the requested n."""


class InfeasibleFamilyError(ParameterError):
    """A POVM family rule produced parameters violating |alpha| + eta <= 1.

    ``step`` is the 1-based index of the Bob whose parameters were infeasible.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
