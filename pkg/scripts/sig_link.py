#!/usr/bin/env python
"""
Signature Linkage Script.

Runs the ``sig-link`` command line from a source checkout.

Usage:
    python scripts/sig_link.py synth --n 1000 --overlap 0.8 --seed 7 --out-dir out/synth
    python scripts/sig_link.py link --db-a out/synth/db_a.csv --db-b out/synth/db_b.csv \
        --config config/synthetic.example.cfg --out-dir out/link
"""

import sys

# Add project root to path
sys.path.insert(0, ".")

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
