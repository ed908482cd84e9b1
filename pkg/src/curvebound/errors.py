"""Exception hierarchy for curvebound."""


class CurveboundError(Exception):
    """Base class for all package errors."""


# ribbon graphs
class DuplicateEndpoint(CurveboundError):
    """An endpoint occurs more than once in a pairing."""


class FixedPointInPairing(CurveboundError):
    """A pairing matches an endpoint with itself."""


class UnpairedEndpoint(CurveboundError):
    """Some endpoint is missing from the pairing."""


class InvalidParameter(CurveboundError):
    """A structural parameter is out of range."""


class InvalidGluing(CurveboundError):
    """A gluing specification references a nonexistent boundary walk."""


class InvalidTree(CurveboundError):
    """The provided edge set is not a spanning tree."""


# hyperbolic geometry
class SharedEndpoint(CurveboundError):
    """Two geodesics share an ideal endpoint within tolerance."""


class NotHyperbolic(CurveboundError):
    """An operation requiring a hyperbolic isometry received another type."""


class NotPairwiseLinked(CurveboundError):
    """The given geodesics are not pairwise linked."""


class DimensionTooSmall(CurveboundError):
    """A cube-configuration operation needs dimension at least three."""


class DegenerateSeparator(CurveboundError):
    """Separators degenerate (2-cubes have none)."""


class InvalidH(CurveboundError):
    """The two geodesics of an H-shape must be disjoint."""


# holonomy
class DimensionMismatch(CurveboundError):
    """Shear vector length does not match the spine."""


class DegenerateStructure(CurveboundError):
    """A face word evaluated elliptic: the construction is broken."""


class EmptyWord(CurveboundError):
    """Curve words must be nonempty."""


class ParabolicCurve(CurveboundError):
    """The curve's holonomy is parabolic (cusp case, length zero)."""


# dual cube complex
class CubeNotInLiftSet(CurveboundError):
    """A cube references lifts outside the ambient lift set."""


class ResourceLimit(CurveboundError):
    """An enumeration exceeded its configured cap."""


# bound engine
class InvalidDimension(CurveboundError):
    """Cube dimensions below two are meaningless here."""


class SeparationFailed(CurveboundError):
    """A certificate was refused because hyperplane separation failed."""
