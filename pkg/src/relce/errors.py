"""Error base for the laboratory.

Every domain error carries a stable ``kind`` tag and an optional payload so
the CLI can turn it into a machine-readable error object.
"""
from __future__ import annotations


class LabError(Exception):
    """Base class for errors the CLI reports as JSON objects (exit code 2)."""

    kind = "error"

    def payload(self) -> dict:
        """Extra key/value detail merged into the CLI error object."""
        return {}


class SchemaError(LabError, ValueError):
    """An input file or value does not match its documented schema."""

    kind = "schema"
