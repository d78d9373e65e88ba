"""Exception hierarchy, mirrored by the CLI exit codes."""


class StacklearnError(Exception):
    """Base class for package errors."""


class InputError(StacklearnError):
    """Malformed input: bad indices, shapes, schemas, parse failures."""


class CapExceededError(StacklearnError):
    """A configured search/enumeration cap was exceeded."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class RealizabilityError(StacklearnError):
    """An observed (context, type) stream is inconsistent with the class."""

    def __init__(self, message, round_index=None):
        super().__init__(message)
        self.round_index = round_index
