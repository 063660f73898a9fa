"""Exception hierarchy.

Input problems (bad files, dependent bases, shape errors) derive from
:class:`InputError`; failures that indicate a numerical or internal defect
derive from :class:`NumericalError`. The CLI maps the two families to
distinct exit codes.
"""


class CoapproxError(Exception):
    pass


class InputError(CoapproxError, ValueError):
    pass


class NumericalError(CoapproxError, ArithmeticError):
    pass


class DimensionMismatch(InputError):
    pass


class DependentBasis(InputError):
    pass


class NotSymmetric(InputError):
    pass


class ZeroClass(InputError):
    """The zero component class never satisfies the *-Property."""


class ZeroDirection(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class NotSimultaneouslyDiagonalized(InputError):
    pass


class CycleGuardExceeded(NumericalError):
    """Simplex iteration cap hit. Under Bland's rule this means a bug."""


class InternalInvariantViolated(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass
