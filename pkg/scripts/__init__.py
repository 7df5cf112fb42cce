"""Command-line and benchmark scripts for signature-based record linkage."""
