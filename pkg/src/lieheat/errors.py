"""Exception types shared across the package."""


class LieHeatError(Exception):
    """Base class for all package errors."""


class GroupSpecError(LieHeatError, ValueError):
    """Unparseable or invalid group specification."""


class DomainError(LieHeatError, ValueError):
    """A point lies outside the exponential-chart domain (some ad-angle >= 2*pi)."""


class WeylSingularError(DomainError):
    """The Weyl denominator vanishes (to 1e-10) at the requested torus element."""


class InternalConsistencyError(LieHeatError, RuntimeError):
    """Two independent computational routes disagree beyond tolerance."""
