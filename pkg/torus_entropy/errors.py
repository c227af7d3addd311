"""
Exception hierarchy for the torus entropy toolkit.

Domain errors do not derive from ValueError, so pydantic validators let
them through unchanged instead of folding them into a ValidationError.
"""


class TorusEntropyError(Exception):
    """Base class for every error raised by this package."""


# Input invariants

class ValidationFailure(TorusEntropyError):
    """An input object violates one of its invariants."""


class DimensionMismatch(ValidationFailure):
    pass


class NonOrthogonalTransform(ValidationFailure):
    pass


class NonPositiveFrequency(ValidationFailure):
    pass


class NegativeAction(ValidationFailure):
    pass


class InvalidSelector(ValidationFailure):
    pass


class IndexOutOfRange(ValidationFailure):
    pass


class ArityMismatch(ValidationFailure):
    pass


class NotSymmetric(ValidationFailure):
    pass


class NotPSD(ValidationFailure):
    pass


class OddDimension(ValidationFailure):
    pass


class NonUniformActions(ValidationFailure):
    pass


class NonPositiveBeta(ValidationFailure):
    pass


class ParameterRegionViolation(ValidationFailure):
    pass


class NegativeCoupling(ValidationFailure):
    pass


class UnsupportedPower(ValidationFailure):
    pass


# Numerical algorithms

class NumericalFailure(TorusEntropyError):
    """A numerical procedure could not produce a trustworthy result."""


class SingularCovariance(NumericalFailure):
    pass


class EigenvalueBelowHalf(NumericalFailure):
    """A scaled symplectic eigenvalue lies below 1/2: the covariance is not physical."""


class SpectralIdentityViolation(NumericalFailure):
    pass


class BetaDependenceError(NumericalFailure):
    pass


class UnresolvedPairing(NumericalFailure):
    """Eigenvalue-to-particle pairing is undefined for non-uniform actions with n > 1."""


class NoTurningPoint(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass


class RootBracketFailure(NumericalFailure):
    pass


class EnergyDriftExceeded(NumericalFailure):
    pass


class OrbitNotClosed(NumericalFailure):
    pass


# Command line

class CliError(TorusEntropyError):
    pass


class ConfigParseError(CliError):
    pass


class IoError(CliError):
    pass


class InvalidRange(CliError):
    pass


class PurityAboveOneWarning(UserWarning):
    """A classical purity exceeded one; reported, not rejected."""
