"""Shared exception types."""


class PreconditionError(ValueError):
    """Raised when an operation is invoked outside its stated contract.

    The CLI maps this to exit code 2: the input was well formed but the
    requested computation rejects it (a zero polynomial fed to ``resultant``,
    a tuple of the wrong length, an order with augmentation zero, and so on).
    """


class PolyParseError(ValueError):
    """Raised on malformed polynomial text, with the offending position."""

    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            caret = " " * position + "^"
            message = f"{message}\n  {text}\n  {caret}"
        super().__init__(message)


class JumpPointError(PreconditionError):
    """Signature requested exactly at a jump of the signature function.

    The value there is a matter of convention, so the caller is pointed at
    the profile API instead of being handed an arbitrary midpoint value.
    """


class InconclusiveError(PreconditionError):
    """An exact answer was demanded but only a bounded search was possible."""
