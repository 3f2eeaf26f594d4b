"""Exception hierarchy shared across the checker engines and the service."""


class DavidError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(DavidError):
    """Document is malformed: bad JSON/XML, missing or mistyped fields."""


class ValidationError(DavidError):
    """Document parsed but violates a model invariant (unknown state,
    undeclared symbol, nondeterminism where a DFA was expected, ...)."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class ParseError(DavidError):
    """Syntax error in a textual regex or CFG, with a character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class AlphabetMismatch(DavidError):
    """The two models being compared do not share an alphabet."""


class StateBlowupError(DavidError):
    """Subset construction exceeded the configured state cap."""


class EnumerationCapExceeded(DavidError):
    """Bounded string enumeration would exceed the configured cap."""


class GrammarBlowupError(DavidError):
    """PDA-to-CFG conversion exceeded the configured rule cap."""


class SearchCapExceeded(DavidError):
    """PDA configuration search hit its cap; membership is unknown,
    which is distinct from `False`."""


class StorageError(DavidError):
    """Submission log or problem registry I/O failure."""


class UnknownProblem(DavidError):
    """Referenced problem id does not exist."""


class AuthError(DavidError):
    """Missing or wrong instructor credentials."""


class SelfCheckError(DavidError):
    """A reference solution did not check as correct against itself."""


class MalformedLogLine(DavidError):
    """A submission-log line failed to parse; carries the line number."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
