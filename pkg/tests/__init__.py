"""
Signature-based Record Linkage - Test Suite Package.

Contains Pytest-based test suites:
- test_*.py: Unit tests per source package.
- functional/: End-to-end, property and oracle tests (markers: functional, oracle, slow).
"""
