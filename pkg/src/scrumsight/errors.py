"""Exception types shared across the package."""


class ScrumsightError(Exception):
    """Base class for all domain-level errors."""

    code = "ERROR"


class IllegalTransition(ScrumsightError):
    code = "ILLEGAL_TRANSITION"


class TimestampOrderViolation(ScrumsightError):
    code = "TIMESTAMP_ORDER_VIOLATION"


class CorruptLog(ScrumsightError):
    """Event log with a gap, regression, or truncated line."""

    code = "CORRUPT_LOG"


class InvalidEvent(ScrumsightError):
    """An event that cannot be applied to the state built so far."""

    code = "INVALID_EVENT"

    def __init__(self, index: int, message: str):
        super().__init__(f"event {index}: {message}")
        self.index = index


class NoEstimates(ScrumsightError):
    code = "NO_ESTIMATES"


class IncompleteTask(ScrumsightError):
    code = "INCOMPLETE_TASK"


class EmptyCohort(ScrumsightError):
    code = "EMPTY_COHORT"


class DegenerateInput(ScrumsightError):
    code = "DEGENERATE_INPUT"


class NoSprints(ScrumsightError):
    code = "NO_SPRINTS"


class NoOverlap(ScrumsightError):
    code = "NO_OVERLAP"


class InvalidConfig(ScrumsightError):
    code = "INVALID_CONFIG"
