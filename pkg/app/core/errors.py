"""Jerarquía de excepciones. Cada familia lleva el código de salida de la CLI."""


class IsoperimError(Exception):
    exit_code = 4


class ConfigError(IsoperimError, ValueError):
    exit_code = 2


class InvalidDomainSpec(ConfigError):
    pass


class OutOfRange(ConfigError):
    pass


class CoincidentPoints(ConfigError):
    pass


class DomainPreconditionError(IsoperimError):
    exit_code = 3


class NonConvex(DomainPreconditionError):
    pass


class NotClassA(DomainPreconditionError):
    pass


class NotNormalized(DomainPreconditionError):
    pass


class IsDisk(DomainPreconditionError):
    pass


class NotAVertex(DomainPreconditionError):
    pass


class DegenerateVertex(DomainPreconditionError):
    pass


class NonConvexPerturbation(DomainPreconditionError):
    pass


class NumericalFailure(IsoperimError):
    exit_code = 4


class NoConvergence(NumericalFailure):
    pass


class DegenerateGradient(NumericalFailure):
    pass


class NotPerfect(NumericalFailure):
    pass


class NormalsParallelButNotAligned(NumericalFailure):
    pass


class NoArcAtArea(NumericalFailure):
    pass


class OracleFailure(NumericalFailure):
    pass


class FitIllConditioned(NumericalFailure):
    pass


class AreaNormalizationFailure(NumericalFailure):
    pass


class QuadratureMismatch(NumericalFailure):
    pass
