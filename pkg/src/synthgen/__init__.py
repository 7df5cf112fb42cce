"""
Synthetic Data Module.

Seeded database pairs with known ground truth, plus MCAR missingness
and value corruption for stress-testing a linkage run.
"""

from src.synthgen.generator import (
    SYNTH_QIDS,
    SYNTH_SCHEMA,
    SynthesisError,
    generate_pair,
    load_tables,
)
from src.synthgen.perturb import (
    EDIT_OPERATIONS,
    apply_edit,
    corrupt,
    inject_mcar,
    perturbed_pair,
)

__all__ = [
    "EDIT_OPERATIONS",
    "SYNTH_QIDS",
    "SYNTH_SCHEMA",
    "SynthesisError",
    "apply_edit",
    "corrupt",
    "generate_pair",
    "inject_mcar",
    "load_tables",
    "perturbed_pair",
]
