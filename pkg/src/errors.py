"""
Exception hierarchy for lindyn-lab.

Every error raised by the library derives from LabError so the CLI can map
failures to exit codes in one place:
- MalformedInputError (and subclasses) → exit 2
- any other LabError → exit 1

Messages are meant to be read by a person running an experiment: say what
failed, show the offending value, and say what to change.
"""


class LabError(Exception):
    """Base class for all lindyn-lab errors"""


class MalformedInputError(LabError, ValueError):
    """Input document, flag value or literal could not be parsed or validated"""


class MalformedScheduleError(MalformedInputError):
    """Schedule arrays have inconsistent lengths or impossible base values"""


class PrefixExceededError(LabError, IndexError):
    """An index or block lies beyond the finite schedule prefix"""


class PrefixTooShortError(LabError):
    """A witness construction needs a block the schedule prefix does not contain"""

    def __init__(self, message: str, needed_block: int | None = None):
        super().__init__(message)
        self.needed_block = needed_block


class ResourceLimitError(LabError, RuntimeError):
    """A configured support or mantissa guard would be exceeded"""


class DyadicOverflowError(LabError, OverflowError):
    """Dyadic exponent left the signed 64-bit range"""


class ScheduleConditionError(LabError):
    """Schedule fails a condition the requested operation depends on"""


class ZeroVectorError(LabError, ValueError):
    """Operation is undefined for the zero vector"""


class TooManyProgressionsError(LabError, OverflowError):
    """Inclusion-exclusion over arithmetic progressions would be too large"""
