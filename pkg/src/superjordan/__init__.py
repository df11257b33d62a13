"""Finite-dimensional Jordan superalgebras and their two-part decompositions, in exact arithmetic."""

from .catalog import FamilySpec, InvalidParameters, SpecParseError, build, family_dims, parse_spec
from .superalgebra import EVEN, ODD, Subspace, SuperAlgebra, check_axioms, is_simple

__version__ = "0.1.0"
