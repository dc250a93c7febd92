"""Finite 2-cell structures (sesquicategories), their naturality, and pseudocategories."""
from .cartesian import is_cartesian, product_cell
from .cellstruct import (CellStructure, TableStructure, check_structure_morphism, identity_morphism, materialize,
                         validate_structure)
from .fincat import PullbackSquare, TableCategory, validate_category
from .naturality import commutator, failing_pairs, hcomp, is_natural, is_two_category, natural_wrt
from .naturalize import check_reflection_property, naturalize
from .pseudocat import (PseudocategoryData, build_additive_pseudocategory, build_group_pseudocategory,
                        check_pseudocategory)
from .report import Finding, ValidationReport

__version__ = "0.1.0"

__all__ = [
    "CellStructure", "Finding", "PseudocategoryData", "PullbackSquare", "TableCategory", "TableStructure",
    "ValidationReport", "build_additive_pseudocategory", "build_group_pseudocategory", "check_pseudocategory",
    "check_reflection_property", "check_structure_morphism", "commutator", "failing_pairs", "hcomp",
    "identity_morphism", "is_cartesian", "is_natural", "is_two_category", "materialize", "natural_wrt",
    "naturalize", "product_cell", "validate_category", "validate_structure",
]
