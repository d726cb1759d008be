"""Exception hierarchy shared by every module in the package."""


class ProjDppError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(ProjDppError):
    """Vector families have incompatible lengths or ambient dimensions."""


class RankDeficient(ProjDppError):
    """A family that must be linearly independent is (numerically) dependent."""


class PointOutOfRange(ProjDppError):
    """A point index lies outside the ground set {1..N}."""


class WrongCardinality(ProjDppError):
    """A point set has the wrong number of elements for the operation."""


class EnumerationTooLarge(ProjDppError):
    """The ground set exceeds the exhaustive-enumeration cap (N <= 20)."""


class FullRank(ProjDppError):
    """The frame already spans the whole space; no orthogonal complement."""


class NotOrthogonal(ProjDppError):
    """A matrix required to be orthogonal/orthonormal is not, within tolerance."""


class TooManyPoints(ProjDppError):
    """More conditioning points than the operation admits."""


class ZeroProbabilityCondition(ProjDppError):
    """Conditioning event has (numerically) zero probability."""


class OverlappingSets(ProjDppError):
    """Point sets required to be disjoint overlap."""


class EmptyGenerator(ProjDppError):
    """The empty set was offered as a generator of an increasing event."""


class PointAlreadyGenerating(ProjDppError):
    """The extension point already occurs among the event's generators."""


class InconsistentCase(ProjDppError):
    """Family cardinalities contradict the decomposition's case tag."""


class DomainError(ProjDppError):
    """Scalar argument outside the domain of a scalar inequality."""


class GroundSizeMismatch(ProjDppError):
    """Operands live on ground sets of different sizes."""
