"""Exception types raised across the package."""


class QuatCalcError(Exception):
    """Base class for every error raised by quatcalc."""


class ZeroDivisor(QuatCalcError, ZeroDivisionError):
    """Inverse requested for a quaternion of (numerically) zero norm."""


class NearRealAxis(QuatCalcError, ValueError):
    """The imaginary magnitude is below r_min, so the unit imaginary is undefined."""


class InvalidUnitImaginary(QuatCalcError, ValueError):
    """A quaternion passed as a unit imaginary does not square to -1."""


class SingularOperator(QuatCalcError, ArithmeticError):
    """The real-linear map x -> a x + x b is singular or near-singular."""


class Overflow(QuatCalcError, OverflowError):
    pass


class ZeroArgument(QuatCalcError, ValueError):
    """Logarithm of zero."""


class BranchPoint(QuatCalcError, ValueError):
    """Logarithm (or its expansion) evaluated where the direction is undefined."""


class NonRealG(QuatCalcError, ValueError):
    """The right factor of a product rule check must have real coefficients."""


class NearScalar(QuatCalcError, ValueError):
    """An su(2) element is too close to a multiple of the identity."""


class UnknownStudy(QuatCalcError, KeyError):
    pass


class ConfigInvalid(QuatCalcError, ValueError):
    pass
