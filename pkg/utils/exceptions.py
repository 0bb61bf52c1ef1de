"""
Error hierarchy shared by every hpforge module
"""


class HPForgeError(Exception):
    """Base class for all errors raised by hpforge"""


# Field arithmetic
class NonPrimeCharacteristic(HPForgeError):
    pass


class NoIrreducibleFound(HPForgeError):
    pass


class FieldMismatch(HPForgeError):
    pass


class DivisionByZero(HPForgeError, ZeroDivisionError):
    pass


class NotAnExtensionOverRequestedBase(HPForgeError):
    pass


class FieldTooLarge(HPForgeError):
    pass


# Geometry
class DimensionOutOfRange(HPForgeError):
    pass


class SpaceMismatch(HPForgeError):
    pass


class ArgumentOutOfRange(HPForgeError, ValueError):
    pass


class ArrangementError(HPForgeError):
    pass


# Constructions
class PointInHyperplane(HPForgeError):
    pass


class PointOnElement(HPForgeError):
    pass


class DegenerateTriple(HPForgeError):
    pass


class SearchBudgetExhausted(HPForgeError):
    """Raised when a seeded search runs out of trials before certifying a result"""

    def __init__(self, message, trials=0):
        super().__init__(message)
        self.trials = trials


class ConstructionNotCertified(HPForgeError):
    """A construction produced a set whose certificate says NotHigPig"""

    def __init__(self, message, arrangement=None):
        super().__init__(message)
        self.arrangement = arrangement


# Codes and graphs
class NotSpanning(HPForgeError):
    pass


class BudgetExceeded(HPForgeError):
    pass


class InvalidPicks(HPForgeError):
    pass


# Files
class ArtifactError(HPForgeError):
    """Malformed or unsupported artifact file"""


class DegenerateConfiguration(HPForgeError):
    """A pinned choice violates a genericity condition of a staged construction"""
