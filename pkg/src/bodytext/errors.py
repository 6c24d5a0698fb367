"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: FormatError -> 2 (bad input),
PipelineError -> 3 (a stage could not produce a result).
"""


class BodyTextError(Exception):
    """Base class for all package errors."""


class FormatError(BodyTextError):
    """An input file (HTML, CSS, config, gold text) violates its format."""


class ReplicaParseError(FormatError):
    """Malformed replica markup. Carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ReplicaFormatError(FormatError):
    """Structurally valid markup that is not a replica (e.g. no page container)."""


class PipelineError(BodyTextError):
    """A processing stage failed on otherwise well-formed input."""
