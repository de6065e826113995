"""Exception hierarchy shared by all gammafan modules."""


class GammafanError(Exception):
    """Base class for all domain errors raised by this package."""


class NoIntegerSolution(GammafanError):
    """The right-hand side is not in the integer column lattice of the matrix."""


class Singular(GammafanError):
    """A square matrix with determinant zero was inverted."""


class DimensionMismatch(GammafanError):
    """Vectors or cones of incompatible ambient dimension were combined."""


class DegenerateHeights(GammafanError):
    """The height vector lies on a wall; some lifting determinant vanishes."""


class WallWeight(GammafanError):
    """The weight vector lies on a hyperplane of the secondary arrangement."""


class InternalInconsistency(GammafanError):
    """A theorem-backed cross-check failed; indicates a bug, not bad input."""


class RankMismatch(InternalInconsistency):
    """The graded ring dimension does not match the maximal simplex count."""


class DegenerateXi(GammafanError):
    """The base-point vector is linearly dependent on n-1 configuration columns."""


class NoDegreeFunctional(GammafanError):
    """No integer row vector pairs to 1 with every configuration column."""


class PreconditionFailed(GammafanError):
    """A Gorenstein-cone precondition (core1, core2 or vol1) does not hold."""

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class NotInLattice(GammafanError):
    """The vector is not in the relation lattice of the configuration."""


class OutsideDomain(GammafanError):
    """The evaluation point fails the certified domain test."""
