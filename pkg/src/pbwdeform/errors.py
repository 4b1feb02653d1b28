"""Exception types raised across the package."""


class PBWError(Exception):
    """Base class for errors raised by pbwdeform."""


class FieldMismatchError(PBWError, ValueError):
    """Values from two different fields were combined."""


class GroupMismatchError(PBWError, ValueError):
    """Values over two different groups or representations were combined."""


class ParseError(PBWError, ValueError):
    """Malformed instance text.  ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ClosureError(PBWError):
    """Matrix generators did not close up to a group within the cap."""


class NotAGroupError(PBWError, ValueError):
    pass


class NotAReflectionError(PBWError, ValueError):
    pass


class WellDefinednessError(PBWError):
    """A recursively extended lambda violates the cocycle condition.

    ``witness`` is the offending ``(g, h, basis_index)`` triple.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CharacteristicError(PBWError):
    """The field characteristic divides the group order."""


class NotConfluentError(PBWError):
    """A reduction system has an unresolved overlap ambiguity."""


class SliceError(PBWError):
    """A bar-side cochain was evaluated outside span(V u G)."""


class PreconditionError(PBWError):
    pass
