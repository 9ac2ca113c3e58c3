"""Deterministic text reports."""

from .report_writer import (
    format_value,
    write_audience,
    write_bridgeness,
    write_component_report,
    write_crosstab,
    write_key_values,
    write_roles,
    write_rows,
    write_sweep,
    write_windows,
)

__all__ = [
    "format_value",
    "write_audience",
    "write_bridgeness",
    "write_component_report",
    "write_crosstab",
    "write_key_values",
    "write_roles",
    "write_rows",
    "write_sweep",
    "write_windows",
]
