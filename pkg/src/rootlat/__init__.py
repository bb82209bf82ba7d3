"""Exact computations with root lattices, their subroot lattices and Weyl groups."""

from .exact_linalg import QuotientStructure
from .root_model import RootLattice, RootSystem, RootSystemType, TypeDecomposition, build_root_system, identify_type
from .subroot import BddsScript, SubrootLattice, run_script, span_subroot

__all__ = [
    "BddsScript",
    "QuotientStructure",
    "RootLattice",
    "RootSystem",
    "RootSystemType",
    "SubrootLattice",
    "TypeDecomposition",
    "build_root_system",
    "identify_type",
    "run_script",
    "span_subroot",
]
__version__ = "0.1.0"
