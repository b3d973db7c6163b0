"""Exception hierarchy.

Two families matter to callers: :class:`InputError` covers bad parameters
and evaluation points (the CLI maps these to exit code 2), and
:class:`NumericalError` covers failures of the numerics themselves
(exit code 3).
"""


class HeunError(Exception):
    """Base class for every error raised by this package."""


class InputError(HeunError, ValueError):
    pass


class NumericalError(HeunError, ArithmeticError):
    pass


# -- parameters ------------------------------------------------------------

class ZeroPError(InputError):
    """p = 0 takes the equation out of the confluent Heun class."""


class NonFiniteError(InputError):
    pass


class NotApplicableError(InputError):
    """A reduction was requested for parameters outside its case."""


class DegenerateBranchesError(InputError):
    """The two exponent branches of a reduction coincide."""


class NotSigmaZeroError(InputError):
    pass


class DegenerateGammaError(InputError):
    pass


class DegenerateAlphaError(InputError):
    pass


# -- evaluation points -----------------------------------------------------

class SingularPointError(InputError):
    pass


class GZeroError(InputError):
    """The u-coefficient g vanishes, so g'/g is undefined there."""


class OutOfDiskError(InputError):
    pass


class BranchCutError(InputError):
    pass


class ZeroBaseError(InputError):
    pass


class PathTooCloseToSingularityError(InputError):
    pass


# -- numerics --------------------------------------------------------------

class PoleParameterError(NumericalError):
    """A lower hypergeometric parameter hit a nonpositive integer."""


class NoConvergenceError(NumericalError):
    pass


class ResonantGammaError(NumericalError):
    """Frobenius exponents differ by an integer (logarithmic case)."""


class DegenerateRnError(NumericalError):
    """A leading recurrence coefficient R_n vanished."""


class ZeroGammaNError(NumericalError):
    pass


class C0UndeterminedError(NumericalError):
    pass


class DegeneratePolynomialError(NumericalError):
    pass


class StepUnderflowError(NumericalError):
    pass
