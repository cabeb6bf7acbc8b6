"""Exception hierarchy.

Every input-level failure derives from :class:`FullGroupError`; the CLI maps
those to exit status 2.  :class:`InvariantError` signals a broken internal
identity (a bug, never bad input) and maps to exit status 3.
"""


class FullGroupError(ValueError):
    """Base class for invalid-input errors."""


class CodeOutOfRange(FullGroupError):
    pass


class SystemMismatch(FullGroupError):
    pass


class EmptySet(FullGroupError):
    pass


class NotBijective(FullGroupError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        # (code_a, code_b, common_image)
        self.witness = witness


class DepthOverflow(FullGroupError):
    pass


class NotPositive(FullGroupError):
    pass


class NotPeriodic(FullGroupError):
    pass


class TailMismatch(FullGroupError):
    pass


class OverlapError(FullGroupError):
    pass


class NotInFullGroup(FullGroupError):
    pass


class ParseError(FullGroupError):
    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


class InvariantError(RuntimeError):
    """An exact identity that must hold by construction failed."""


def check(condition, message):
    if not condition:
        raise InvariantError(message)
