"""Exception hierarchy shared by every module of the package."""


class ModpowerError(Exception):
    """Base class for all computational errors raised by modpower."""


class LimitExceededError(ModpowerError):
    """A sieve was asked for more entries than the configured memory budget allows."""


class BudgetExceededError(ModpowerError):
    """A brute-force computation exceeds its configured size budget."""


class ArithmeticOverflowError(ModpowerError, OverflowError):
    """An exact integer result does not fit in the widest supported integer."""


class NoKnownAsymptoteError(ModpowerError):
    """No leading-order asymptote is known for the requested summatory function."""


class UnsupportedFunctionError(ModpowerError):
    """The requested function has no evaluator for the requested range."""


class PrecisionUnreachableError(ModpowerError):
    """The requested target error lies below the working-precision floor."""


class ConvergenceRegionError(ModpowerError):
    """A Dirichlet series was evaluated outside its region of absolute convergence."""


class BracketFailureError(ModpowerError):
    """No interior minimum was bracketed inside the search window."""
