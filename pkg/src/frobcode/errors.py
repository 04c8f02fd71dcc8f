"""Exception types shared across the package."""


class FrobcodeError(Exception):
    """Base class for all package errors."""


class SpecParseError(FrobcodeError):
    """Malformed ring spec text or code input file."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CapExceededError(FrobcodeError):
    """A construction or enumeration would exceed the configured cap."""


class ReduciblePolynomialError(FrobcodeError):
    """The modulus polynomial handed to a field constructor is reducible."""


class RingConstructionError(FrobcodeError):
    """Ring tables failed an axiom or a structural invariant."""


class CharacterError(FrobcodeError):
    """The character is not generating, or a character-based computation
    produced a non-rational intermediate (both signal a construction bug)."""


class ZeroColumnError(FrobcodeError):
    """A generator matrix contains an all-zero column."""


class PreconditionError(FrobcodeError):
    """An operation was called outside its stated precondition."""


class IdentityCheckError(FrobcodeError):
    """An identity that must hold by theory failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
