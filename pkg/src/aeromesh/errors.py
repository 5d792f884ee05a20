"""Exception hierarchy shared across the toolkit.

Two failure families matter to callers (and map onto CLI exit codes):
bad input (exit 2) versus an analysis that honestly concluded the
requested property cannot hold (exit 1).
"""

from __future__ import annotations


class AeromeshError(Exception):
    """Base class for all library errors."""


class ScenarioError(AeromeshError, ValueError):
    """Invalid input: malformed file, bad parameter, impossible request.

    ``field`` is a dotted path naming the offending value (e.g.
    ``platforms[0].orbit_radius``); ``line`` is the 1-based line number
    when the error came from a scenario file.
    """

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        super().__init__(message)
        self.field = field
        self.line = line

    def __str__(self) -> str:
        msg = super().__str__()
        prefix = []
        if self.line is not None:
            prefix.append(f"line {self.line}")
        if self.field is not None:
            prefix.append(self.field)
        if prefix:
            return f"{': '.join(prefix)}: {msg}"
        return msg


class InfeasibleError(AeromeshError, RuntimeError):
    """The inputs were valid but the analyzed property cannot be met."""


class CoverageGapError(InfeasibleError):
    """No admissible path extends the communication channel past ``gap_time``."""

    def __init__(self, gap_time: float):
        super().__init__(f"coverage gap at time {gap_time:.9g}")
        self.gap_time = gap_time
