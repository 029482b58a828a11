"""Exception types shared across the package."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this library."""


class InvalidInput(WorkbenchError, ValueError):
    """An argument violates a documented precondition."""


class ParseError(WorkbenchError, ValueError):
    """Malformed or schema-violating serialized automaton; names the field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class TableIncomplete(WorkbenchError):
    """An observation-table cell was read before being filled; names the cell."""


class SampleConflict(WorkbenchError):
    """A word is required to be both accepted and rejected."""

    def __init__(self, word):
        super().__init__(f"word labeled both accept and reject: {word!r}")
        self.word = word


class SolverError(WorkbenchError):
    """SAT backend failed: missing executable, crash, or unparsable reply."""


class SolverTimeout(SolverError):
    """SAT backend exceeded its per-call time limit."""


class ConstructionConflict(WorkbenchError):
    """Two table words demand different counter-actions on one transition."""


class GenerationFailure(WorkbenchError):
    """Random automaton generation exhausted its attempt budget."""


class LearnTimeout(WorkbenchError):
    """Learning exceeded its deadline; carries the statistics gathered so far."""

    def __init__(self, message, stats):
        super().__init__(message)
        self.stats = stats
