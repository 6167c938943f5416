"""
Error Types
Exception hierarchy shared by the field, matrix, code and CLI layers.
"""

from typing import Optional


class UnitCodeError(ValueError):
    """Base class for every error raised by the unit-code library."""


class FieldMismatchError(UnitCodeError):
    """Operands live in different finite fields."""


class FieldConstructionError(UnitCodeError):
    """A field, root of unity or extension could not be built."""


class ShapeError(UnitCodeError):
    """Incompatible dimensions or invalid row/column indices."""


class SingularMatrixError(UnitCodeError):
    """Inverse requested for a singular matrix."""


class SchemeError(UnitCodeError):
    """U·V is not a nonzero scalar multiple of the identity, or a split is malformed."""


class ConstructionError(UnitCodeError):
    """A code builder's precondition or construction identity failed."""


class ClassificationError(UnitCodeError):
    """Classification needs data the code does not carry."""


class CatastrophicEncoderError(UnitCodeError):
    """The free-distance oracle refuses catastrophic encoders."""


class NonUnitError(UnitCodeError):
    """A group ring element used as a unit is not invertible."""


class GirthError(UnitCodeError):
    """A derived control matrix has cycles shorter than requested."""


class BudgetExceededError(UnitCodeError):
    """An exhaustive oracle would exceed its enumeration cap."""

    def __init__(self, what: str, required: int, cap: int, hint: Optional[str] = None):
        self.what = what
        self.required = required
        self.cap = cap
        message = f"{what}: {required:,} exceeds enumeration cap {cap:,}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)
