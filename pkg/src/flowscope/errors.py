"""
Exception hierarchy for flowscope.

Every failure a caller can act on derives from FlowscopeError so the CLI can
report it with the stage that raised it.
"""

from typing import Optional


class FlowscopeError(Exception):
    """Base class for all flowscope errors."""


class ParameterError(FlowscopeError, ValueError):
    """A parameter is outside the range its operation accepts."""


class ParseError(FlowscopeError, ValueError):
    """A malformed row in an input file."""

    def __init__(self, message: str, line_number: Optional[int] = None, path: Optional[str] = None):
        self.line_number = line_number
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}"
        if line_number is not None:
            location += f":{line_number}" if location else f"line {line_number}"
        super().__init__(f"{location}: {message}" if location else message)


class EmptyGraphError(FlowscopeError):
    """An input produced a graph without nodes or edges."""


class NodeLookupError(FlowscopeError, KeyError):
    """A node label is not part of the graph."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown node"


class PartitionError(FlowscopeError, ValueError):
    """A partition does not describe a valid node -> community assignment."""


class DimensionError(FlowscopeError, ValueError):
    """Two objects that must cover the same nodes do not."""


class ConvergenceError(FlowscopeError):
    """An iterative method stopped before reaching its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (residual={residual:.3e} after {iterations} iterations)")


class ConfigError(FlowscopeError, ValueError):
    """The run configuration cannot be loaded or validated."""


class StageError(FlowscopeError):
    """A pipeline stage failed; wraps the original error."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
