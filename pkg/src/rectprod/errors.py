from __future__ import annotations


class RectProdError(Exception):
    """Base class for every error raised by rectprod."""


class ChainSpecError(RectProdError, ValueError):
    pass


class DimensionMismatch(ChainSpecError):
    pass


class EndpointMismatch(ChainSpecError):
    pass


class MinViolation(ChainSpecError):
    pass


class NonPositiveGamma(ChainSpecError):
    pass


class DomainError(RectProdError, ValueError):
    pass


class InvalidCoefficients(RectProdError, ValueError):
    pass


class BadParameter(RectProdError, ValueError):
    pass


class UnknownPreset(RectProdError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown preset"


class UnknownFamily(RectProdError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown family"


class EmptySample(RectProdError, ValueError):
    pass


class NumericalBreakdown(RectProdError, ArithmeticError):
    pass


class ConvergenceFailure(RectProdError, ArithmeticError):
    pass


class LawTypeError(RectProdError, TypeError):
    """A Type I only evaluator was called on a degenerate (Type II/III) law."""
