"""Exception hierarchy shared by all subpackages."""

from __future__ import annotations


class ExtVanishError(Exception):
    """Base class for every error raised by this package."""


# exact arithmetic


class DivisionByZeroPoly(ExtVanishError, ZeroDivisionError):
    pass


class BothZero(ExtVanishError, ValueError):
    pass


class InconsistentSystem(ExtVanishError, ValueError):
    """A linear system ``A x = b`` has no solution."""


# algebras and modules


class ResourceCap(ExtVanishError):
    """A configured size limit would be exceeded."""


class OverflowGuard(ResourceCap):
    pass


class DimensionCap(ResourceCap):
    pass


class BadCommutator(ExtVanishError, ValueError):
    pass


class NotAGroup(ExtVanishError, ValueError):
    pass


class SemisimpleCase(ExtVanishError, ValueError):
    pass


class UnsupportedAlgebra(ExtVanishError, ValueError):
    pass


class NotAnAlgebra(ExtVanishError, ValueError):
    """Structure constants fail associativity or the unit axiom."""


class NotAModule(ExtVanishError, ValueError):
    pass


class NoAugmentation(ExtVanishError, ValueError):
    pass


class NotACocycle(ExtVanishError, ValueError):
    pass


class LiftObstruction(ExtVanishError, RuntimeError):
    """Raised only on an internal inconsistency: lifts into free modules always exist."""


class RangeExceedsResolution(ExtVanishError, ValueError):
    pass


# generating functions and vanishing analysis


class EmptyDegrees(ExtVanishError, ValueError):
    pass


class NotRational(ExtVanishError):
    """The dimension window is not the expansion of g(z)/prod(1 - z^d) for the given degrees."""


class InsufficientData(ExtVanishError, ValueError):
    pass


class FitContradiction(ExtVanishError, RuntimeError):
    pass


class RegularElementNotFound(ExtVanishError):
    pass
