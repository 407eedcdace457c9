"""Exact algebra of polynomial automorphisms of the affine plane.

The package decomposes tame automorphisms into affine and triangular
letters, linearizes finite diagonalizable group actions over a field,
classifies the equivariant automorphisms of diagonal actions, and
removes the parameter poles of linearizing conjugators over the
coordinate ring of a line, one discrete valuation at a time.
"""

from .decompose import TameDecomposition, decompose, invert, polydegree
from .dvr import (coordinate_mate, endo_valuation, is_integral, lift_affine,
                  perturbation_bound, remove_pole, w_invariant)
from .equivariant import (CommutantSolution, CyclicDiagonalAction,
                          FiberNormalForm, TorusDiagonalAction,
                          centralizer_structure_noncyclic,
                          classify_ad_centralizer,
                          classify_fiber_centralizer,
                          conjugate_by_diagonal, extract_fiber,
                          is_torus_equivariant, solve_commutant_bruteforce)
from .errors import (FamilyValidationError, NotACoordinate,
                     NotAnAutomorphism, PlaneautError, SchemaError)
from .family import (FamilyLinearization, TorusFamily, linearize_family,
                     linearize_family_generic, pole_set, verify_family)
from .fields import DVRContext, FieldDescriptor
from .groups import automorphism_order, linearize_over_field
from .plane import AffineMap, BiPoly, ElementaryMap, PlaneAut, PlaneEndo

__all__ = [
    "AffineMap", "BiPoly", "CommutantSolution", "CyclicDiagonalAction",
    "DVRContext", "ElementaryMap", "FamilyLinearization",
    "FamilyValidationError", "FiberNormalForm", "FieldDescriptor",
    "NotACoordinate", "NotAnAutomorphism", "PlaneAut", "PlaneEndo",
    "PlaneautError", "SchemaError", "TameDecomposition",
    "TorusDiagonalAction", "TorusFamily", "automorphism_order",
    "centralizer_structure_noncyclic", "classify_ad_centralizer",
    "classify_fiber_centralizer", "conjugate_by_diagonal",
    "coordinate_mate", "decompose", "endo_valuation", "extract_fiber",
    "invert", "is_integral", "is_torus_equivariant", "lift_affine",
    "linearize_family", "linearize_family_generic",
    "linearize_over_field", "perturbation_bound", "pole_set",
    "polydegree", "remove_pole", "solve_commutant_bruteforce",
    "verify_family", "w_invariant",
]

__version__ = "0.1.0"
