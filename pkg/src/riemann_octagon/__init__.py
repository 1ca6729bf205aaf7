"""Genus-two Riemann surfaces from a symmetric hyperbolic octagon.

Octagon geometry and its Fuchsian group, Fenchel-Nielsen coordinates and the
Weil-Petersson form, constant-perimeter orbits with action-angle variables,
and su(1,1) boost dynamics on them.
"""

__version__ = "0.1.0"

from .errors import (
    BelowMinimumError,
    ConsistencyError,
    DomainError,
    NumericError,
    OctagonError,
    RegionError,
    SingularStateError,
    UnphysicalStateError,
)
from .octagon import A_REG, ALPHA_REG, P_REG, OctagonParams, in_region, perimeter

__all__ = [
    "__version__",
    "OctagonParams",
    "in_region",
    "perimeter",
    "A_REG",
    "ALPHA_REG",
    "P_REG",
    "OctagonError",
    "DomainError",
    "RegionError",
    "BelowMinimumError",
    "UnphysicalStateError",
    "ConsistencyError",
    "NumericError",
    "SingularStateError",
]
