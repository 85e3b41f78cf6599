"""Exception hierarchy shared by every module of the package."""


class OpHermError(Exception):
    """Base class for all errors raised by opherm."""


class NotRepresentable(OpHermError, ValueError):
    """A square root (or other value) does not lie in Q(i, sqrt2)."""


class DegreeTooLarge(OpHermError, ValueError):
    """A requested degree exceeds the configured degree guard."""


class UnknownSymbol(OpHermError, KeyError):
    """A symbol name is not one of the recognised mode operators."""

    def __str__(self):
        return Exception.__str__(self)


class NonCommutingArguments(OpHermError, ValueError):
    """Two-variable Hermite arguments do not commute as operators."""


class QuadratureDegree(OpHermError, ValueError):
    """Integrand degree exceeds the exactness bound 2N-1 of the rule."""


class UnknownIdentity(OpHermError, KeyError):
    """An identity id is not in the registry."""

    def __str__(self):
        return Exception.__str__(self)


class DegenerateParameters(OpHermError, ValueError):
    """The closed form has a vanishing radical at these parameters."""


class ExprSyntaxError(OpHermError, ValueError):
    """Parse failure with the offending position and the expected tokens."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class NonLinearHermiteArgument(ExprSyntaxError):
    """H(...) or H2(...) applied to an argument that is not a linear form."""
