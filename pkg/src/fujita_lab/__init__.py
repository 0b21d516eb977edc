"""Convex Fujita numbers of smooth projective surfaces from exact lattice data."""

from .bundles import (
    PEBundleLineClass,
    SlopeProfile,
    adjoint_pushforward_min_slope,
    butler_is_ample,
    fujita_number_PE,
    mu,
    mu_minus,
    mu_plus,
    slope_global_generation,
)
from .catalog import Family, SurfaceModel
from .engine import classify, ncd_extreme_check, pseudosplit_lower_bound, reider_upper_bound
from .errors import (
    DomainError,
    FujitaError,
    InconsistentVerdictError,
    LatticeMismatchError,
    PreconditionError,
    SchemaError,
)
from .lattice import DivisorClass, IntersectionLattice, is_even, is_primitive, is_unimodular, pair
from .riemann_roch import SurfaceNumerics, adjunction_genus, chi_of_class, h0_ample_numK_trivial
from .verdict import FujitaVerdict, TraceEntry

__version__ = "0.1.0"
