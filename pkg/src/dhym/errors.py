"""Shared exception types."""


class ModelError(ValueError):
    """Invalid intersection model (bad dimensions, non-positive volumes, ...)."""


class ModelParseError(ModelError):
    """Model file violates the documented grammar or is inconsistent."""


class DegenerateChargeError(ValueError):
    """Charge polynomial identically zero (or otherwise unusable)."""


class UncertifiedChargeError(ValueError):
    """Winding requested for a charge without a nonvanishing certificate."""


class BorderlineError(ArithmeticError):
    """A strict angle comparison fell inside the indeterminate band."""


class InconsistentAngleError(ValueError):
    """Supplied phase data contradicts the exact class-level identities."""


class SoundnessError(RuntimeError):
    """An identity that must hold by theorem failed: implementation bug."""


class InadmissibleFieldError(ValueError):
    """A grid field drives the pointwise phase out of its admissible range."""


class GoldenMismatchError(AssertionError):
    """The built-in golden reproduction produced a wrong exact value."""
