"""
hsofdmtdr.core.errors - Exception hierarchy.

Every error raised by the library derives from TdrError, itself a
ValueError, so callers that only care about "bad input" can keep
catching ValueError.
"""

from __future__ import annotations


class TdrError(ValueError):
    """Base class for every simulator error."""


class SpectralError(TdrError):
    """Bad vector handed to a transform or reconstruction."""


class NetworkError(TdrError):
    """Invalid cable parameters or network topology."""


class TxRxError(TdrError):
    """Transmitter/receiver chain rejected its input."""


class ReflectogramError(TdrError):
    """Reflectogram processing could not run on the given spectra."""


class MetricsError(TdrError):
    """A metric was requested with out-of-range parameters."""


class AccessError(TdrError):
    """Multiple-access scheme misconfigured."""


class InvariantViolation(TdrError):
    """A post-condition that should always hold did not."""


class ConfigError(TdrError):
    """
    Scenario configuration could not be parsed.

    Attributes:
        field:  Dotted path of the offending field, if known.
        line:   1-based line in the source file (JSON syntax errors).
        column: 1-based column in the source file.
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        prefix = f"[{'; '.join(where)}] " if where else ""
        super().__init__(prefix + message)

    def to_dict(self) -> dict[str, object]:
        return {
            "error": "config",
            "message": str(self),
            "field": self.field,
            "line": self.line,
            "column": self.column,
        }
