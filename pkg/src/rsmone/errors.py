"""Exception types shared across the package.

Every refusal the library makes is a subclass of :class:`RsmoneError`, so
callers (and the CLI) can distinguish domain errors from genuine bugs.
"""

from __future__ import annotations


class RsmoneError(Exception):
    """Base class for all errors raised by this package."""


class SpecValidationError(RsmoneError, ValueError):
    """A representation spec document violates the schema or an invariant."""


class MissingLocalDataError(RsmoneError, LookupError):
    """No Satake data (explicit or generated) at a requested place."""

    def __init__(self, message: str, norm: int | None = None):
        super().__init__(message)
        self.norm = norm


class UnresolvedPairConductorError(RsmoneError, ValueError):
    """The pair-level arithmetic conductor is needed but was never supplied."""


class GammaPoleError(RsmoneError, ValueError):
    """log-Gamma was requested at (or too close to) a pole."""

    def __init__(self, message: str, pole: int):
        super().__init__(message)
        self.pole = pole


class ArchFactorPoleError(RsmoneError, ValueError):
    """An archimedean L-factor hit a Gamma pole; names the offending index."""

    def __init__(self, message: str, j: int, pole_index: int):
        super().__init__(message)
        self.j = j
        self.pole_index = pole_index


class ExclusionDiscError(RsmoneError, ValueError):
    """A point fell inside an excluded disc around a Gamma-factor pole."""

    def __init__(self, message: str, pole: complex, distance: float, radius: float):
        super().__init__(message)
        self.pole = pole
        self.distance = distance
        self.radius = radius


class QuadratureError(RsmoneError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class ConvergenceDomainError(RsmoneError, ValueError):
    """Evaluation requested outside the region of guaranteed convergence."""
