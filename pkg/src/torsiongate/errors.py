"""Exception hierarchy shared by all torsiongate modules."""

from __future__ import annotations


class TorsionGateError(Exception):
    """Base class for all errors raised by this package."""


class DegreeCapExceeded(TorsionGateError):
    """A construction would need a field or factorization beyond the configured cap.

    Carries enough detail to report the failure instead of silently skipping.
    """

    def __init__(self, needed: int, cap: int, context: str = ""):
        self.needed = needed
        self.cap = cap
        self.context = context
        msg = f"degree {needed} exceeds cap {cap}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class EnumerationCapExceeded(TorsionGateError):
    """A group closure or subgroup sweep grew past the configured element cap."""


class ReduciblePolynomialError(TorsionGateError):
    """A polynomial required to be irreducible has a proper factor."""

    def __init__(self, factor_repr: str):
        self.factor_repr = factor_repr
        super().__init__(f"polynomial is reducible; found factor {factor_repr}")


class SingularCurveError(TorsionGateError):
    """Weierstrass coefficients with vanishing discriminant."""


class BadReductionError(TorsionGateError):
    """Reduction mod p requested at a prime of bad reduction."""


class SpecError(TorsionGateError):
    """A JSON spec file violates its schema; message names the offending field."""
