"""
Signature Generation Module.

Attribute signatures (transformed QID value tuples), probability
filtering, the record graph and relational signatures.
"""

from src.signatures.generation import (
    build_signature_database,
    gen_attribute_signature,
    signature_probability,
)
from src.signatures.graph import RecordGraph, build_record_graph, egonet_density
from src.signatures.relational import gen_relational_signature
from src.signatures.transforms import SignatureError, TransformFn, apply_transform, get_transform

__all__ = [
    "RecordGraph",
    "SignatureError",
    "TransformFn",
    "apply_transform",
    "build_record_graph",
    "build_signature_database",
    "egonet_density",
    "gen_attribute_signature",
    "gen_relational_signature",
    "get_transform",
    "signature_probability",
]
