"""Exception types raised across the package."""


class ABCError(Exception):
    """Base class for all errors raised by abcprc."""


class InvalidInputError(ABCError, ValueError):
    pass


class DegenerateWeightsError(ABCError):
    """Raised when a weight vector cannot be normalised.

    ``index`` is the offending particle when a single one is to blame,
    otherwise None.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BudgetExceededError(ABCError):
    """Simulator call budget exhausted before enough acceptances."""

    def __init__(self, message, sim_calls, accepted, iteration=None, epsilon=None):
        super().__init__(message)
        self.sim_calls = sim_calls
        self.accepted = accepted
        self.iteration = iteration
        self.epsilon = epsilon


class ScheduleParseError(ABCError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
