"""Exception types shared across the toolkit.

Every error raised on purpose by this package derives from TabPremError so
callers can catch one base class at the CLI boundary.
"""

from __future__ import annotations

__all__ = [
    "TabPremError",
    "MalformedInput",
    "EmptyTable",
    "MissingCategory",
    "EmptyHypothesis",
    "DanglingTableRef",
    "DimensionMismatch",
    "ZeroVector",
    "GatewayUnavailable",
    "ProtocolError",
    "PairMismatch",
    "ConfigError",
]


class TabPremError(Exception):
    """Base class for all toolkit errors."""


class MalformedInput(TabPremError):
    """An input file violates the canonical schema.

    Carries a locator (path plus 1-based line number) so the offending
    record can be found without re-running with a debugger.
    """

    def __init__(self, message: str, path: str | None = None, line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        locator = ""
        if path is not None:
            locator = f" [{path}" + (f":{line_no}" if line_no is not None else "") + "]"
        super().__init__(message + locator)


class EmptyTable(MalformedInput):
    """A table record parsed cleanly but contains zero rows."""


class MissingCategory(TabPremError):
    """Category sentence requested for a table whose category is empty."""


class EmptyHypothesis(TabPremError):
    """Row scoring received a hypothesis with no content words."""


class DanglingTableRef(TabPremError):
    """A pair references a table id that was never loaded."""

    def __init__(self, table_id: str, pair_id: str = ""):
        self.table_id = table_id
        self.pair_id = pair_id
        suffix = f" (pair {pair_id})" if pair_id else ""
        super().__init__(f"unknown table id {table_id!r}{suffix}")


class DimensionMismatch(TabPremError):
    """Two vectors of different dimensionality met in one operation."""


class ZeroVector(TabPremError):
    """Cosine similarity is undefined for an all-zero vector."""


class GatewayUnavailable(TabPremError):
    """The contextual-embedding endpoint could not be reached after retries."""


class ProtocolError(TabPremError):
    """The embedding endpoint answered, but not in the agreed wire format."""


class PairMismatch(TabPremError):
    """Prediction files do not cover the same pair-id set."""

    def __init__(self, missing: list[str], extra: list[str], which: str):
        self.missing = sorted(missing)
        self.extra = sorted(extra)
        self.which = which
        parts = [f"prediction file {which!r} does not match the gold pair set"]
        if self.missing:
            parts.append(f"missing: {', '.join(self.missing[:10])}")
        if self.extra:
            parts.append(f"extra: {', '.join(self.extra[:10])}")
        super().__init__("; ".join(parts))


class ConfigError(TabPremError):
    """Invalid stage/flag combination or a missing required resource path."""
