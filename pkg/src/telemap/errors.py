"""Exception types shared across the package."""


class TelemapError(Exception):
    """Base class for all validation and mapping errors."""


class SchemaError(TelemapError):
    """A document does not conform to its file schema.

    Carries enough context (file, field) for CLI error messages.
    """

    def __init__(self, message, field=None, path=None):
        self.field = field
        self.path = path
        parts = []
        if path is not None:
            parts.append(str(path))
        if field is not None:
            parts.append(f"field '{field}'")
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class LimitError(TelemapError):
    """Joint limits are inverted or a pose violates them."""


class LengthMismatchError(TelemapError):
    """A pose vector does not match its model's joint count."""


class UnknownFingerError(TelemapError):
    """A finger chain name does not exist on the model."""


class CalibrationError(TelemapError):
    """A calibration set is incomplete or inconsistent."""
