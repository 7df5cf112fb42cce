"""
Matching Module.

Candidate generation through inverted signature indexes and two-stage
(attribute, then relational) classification of candidate pairs.
"""

from src.matching.candidates import (
    CandidatePair,
    gen_candidate_pairs,
    gen_relational_candidate_pairs,
)
from src.matching.matcher import MatchError, classify_pair, match, resolve_one_to_one
from src.matching.similarity import dice, jaccard, numeric_similarity, relational_similarity

__all__ = [
    "CandidatePair",
    "MatchError",
    "classify_pair",
    "dice",
    "gen_candidate_pairs",
    "gen_relational_candidate_pairs",
    "jaccard",
    "match",
    "numeric_similarity",
    "relational_similarity",
    "resolve_one_to_one",
]
