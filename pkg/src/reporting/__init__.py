"""
Reporting Module.

Handles the files a linkage run leaves behind:
- Matches, combinations, signature dumps and sweep tables as CSV.
- Metrics, runtime and resolved-config reports as key = value text.
"""

from src.reporting.writers import (
    format_key_values,
    write_combinations_csv,
    write_key_values,
    write_matches_csv,
    write_metrics_report,
    write_runtime_report,
    write_signature_dump,
    write_sweep_csv,
)

__all__ = [
    "format_key_values",
    "write_combinations_csv",
    "write_key_values",
    "write_matches_csv",
    "write_metrics_report",
    "write_runtime_report",
    "write_signature_dump",
    "write_sweep_csv",
]
