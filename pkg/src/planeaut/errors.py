"""Exception hierarchy.

Every failure mode that callers are expected to branch on gets its own
class; anything raised from a bug in this package stays a plain
AssertionError / RuntimeError so it is never confused with a
mathematically meaningful rejection.
"""


class PlaneautError(Exception):
    """Base class for all deliberate rejections."""


# -- scalar / field layer ---------------------------------------------------

class DescriptorMismatch(PlaneautError):
    """Arithmetic attempted between elements of different fields."""


class DivisionByZero(PlaneautError):
    pass


class NotIntegral(PlaneautError):
    """Residue requested of an element with a pole at the center."""


class SchemaError(PlaneautError):
    """Malformed JSON payload or field descriptor."""


# -- plane maps -------------------------------------------------------------

class NotAnAutomorphism(PlaneautError):
    """Degree reduction stalled: the endomorphism is not invertible."""


class DegreeTooLow(PlaneautError):
    """Operation needs a nonlinear map (e.g. anchor line of an affine map)."""


class NotInFiber(PlaneautError):
    """Automorphism is not of the normalized triangular-word shape."""


class DegreeMismatch(PlaneautError):
    """Declared polydegree disagrees with the actual one."""


# -- group reduction --------------------------------------------------------

class NotFiniteOrder(PlaneautError):
    """Cyclic reduction met an alternating word of length >= 2."""


class GroupReductionFailed(PlaneautError):
    """Sequential multi-generator reduction did not converge."""


class UnsupportedGroup(PlaneautError):
    """Group shape outside the classified cases."""


class GroupIsCyclic(PlaneautError):
    """Non-cyclic structure theorem asked about a cyclic group."""


class BoundTooLarge(PlaneautError):
    """Brute-force commutant degree bound above the desk-scale cap."""


# -- valuation / pole removal ----------------------------------------------

class ZeroEndomorphism(PlaneautError):
    pass


class NotIntegralInput(PlaneautError):
    """Operation requires a map with nonnegative coefficient valuations."""


class NotNormalized(PlaneautError):
    """Operation requires least coefficient valuation exactly zero."""


class NotLinearizing(PlaneautError):
    """Claimed conjugator does not linearize the group."""


class NotDegenerate(PlaneautError):
    """Residue map is not a map onto a curve (image is a point or all of the plane)."""


class NotInvariantLine(PlaneautError):
    """Curve equation is not a semi-invariant of the linear action."""


class NotACoordinate(PlaneautError):
    """No polynomial mate found: the input does not embed in an automorphism."""


class CompositionNotIntegral(PlaneautError):
    """Perturbation bound requested for a tuple whose composition has poles."""


class ResidualNonRationalPoles(PlaneautError):
    """Denominators have irreducible factors with no root in the base field."""


class FamilyValidationError(PlaneautError):
    """Family generators fail their declared relations or regularity."""
