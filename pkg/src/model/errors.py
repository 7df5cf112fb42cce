"""
Error hierarchy shared by every record-linkage module.

Each module defines its own exception type deriving from
RecordLinkageError so the CLI can map all user-facing failures to a
single exit code while tests can still assert on the precise type.
"""

from __future__ import annotations


class RecordLinkageError(Exception):
    """Base class for all errors raised by the linkage toolkit."""

    pass
