"""
Attribute Selection Module.

Scores attribute combinations by completeness and Gini impurity and
searches the combination lattice level by level for the best n_a.
"""

from src.selection.lattice import (
    SelectionLattice,
    combination_from_labels,
    gen_combinations,
    seed_combinations,
    select_attribute_combinations,
    select_combinations,
    select_random_combinations,
)
from src.selection.scoring import (
    SelectionError,
    combined_score,
    completeness_score,
    gini_impurity_score,
)

__all__ = [
    "SelectionError",
    "SelectionLattice",
    "combination_from_labels",
    "combined_score",
    "completeness_score",
    "gen_combinations",
    "gini_impurity_score",
    "seed_combinations",
    "select_attribute_combinations",
    "select_combinations",
    "select_random_combinations",
]
