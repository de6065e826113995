"""gammafan: exact regular triangulations, secondary fans, graded rings
and ring-valued Gamma-series for resonant GKZ systems."""

from .errors import (DegenerateHeights, DegenerateXi, DimensionMismatch,
                     GammafanError, InternalInconsistency, NoDegreeFunctional,
                     NoIntegerSolution, NotInLattice, OutsideDomain,
                     PreconditionFailed, RankMismatch, Singular, WallWeight)
from .polycone import Cone, chamber_sign_vectors
from .srring import build_ring
from .triang import (PointConfiguration, Triangulation, enumerate_regular,
                     from_heights, from_simplices, from_weight)

__all__ = [
    "Cone", "PointConfiguration", "Triangulation", "build_ring",
    "chamber_sign_vectors", "enumerate_regular", "from_heights",
    "from_simplices", "from_weight",
    "GammafanError", "DegenerateHeights", "DegenerateXi", "DimensionMismatch",
    "InternalInconsistency", "NoDegreeFunctional", "NoIntegerSolution",
    "NotInLattice", "OutsideDomain", "PreconditionFailed", "RankMismatch",
    "Singular", "WallWeight",
]

__version__ = "0.1.0"
