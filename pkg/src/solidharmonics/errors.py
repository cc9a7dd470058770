"""Exception types raised across the package."""


class SolidHarmonicsError(Exception):
    """Base class for all errors raised by :mod:`solidharmonics`."""


class DomainError(SolidHarmonicsError, ValueError):
    """Argument outside the mathematical domain of a function."""


class SingularityError(DomainError):
    """Evaluation requested at a singular point (e.g. the origin for 1/r)."""


class HarmonicIndexError(SolidHarmonicsError, IndexError):
    """Degree/order pair with |m| > l or l < 0."""


class NotNullVectorError(DomainError):
    """A complex vector expected to satisfy b.b = 0 does not."""


class NotHarmonicError(DomainError):
    """A polynomial expected to satisfy Laplace's equation does not."""


class FrameError(DomainError):
    """Three vectors do not form a right-handed orthonormal triad."""


class EvaluationError(SolidHarmonicsError, ArithmeticError):
    """A quadrature integrand produced a non-finite value."""


class ConsistencyError(SolidHarmonicsError, ArithmeticError):
    """An internal numerical consistency check failed."""
