"""Exception hierarchy shared by the library and the CLI exit codes."""


class FascliqueError(Exception):
    exit_code = 1


class ParameterError(FascliqueError, ValueError):
    """Invalid argument value (exit code 2)."""

    exit_code = 2


class PreconditionError(FascliqueError):
    """Input violates an operation's documented precondition."""

    exit_code = 2


class FormatError(ParameterError):
    """Malformed serialized tournament; ``offset`` is the byte position."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class StageFailure(FascliqueError):
    """A construction stage could not complete.

    ``stage`` names the failing step and ``diagnostic`` carries whatever
    certificate the stage produced (a Hall violator, the failing part, ...).
    """

    exit_code = 3

    def __init__(self, stage, message, diagnostic=None):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.diagnostic = diagnostic or {}


class ResourceError(FascliqueError):
    """Requested computation exceeds the configured exact/enumeration budget."""

    exit_code = 4
