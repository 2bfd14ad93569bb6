"""Simplicity and entanglement of pure states for distinguishable particles,
bosons, fermions and arbitrary parastatistics."""

from .analysis import (
    RankOptions,
    SimplicityReport,
    SymmetryError,
    ZeroTensorError,
    check_simple,
    check_simple_alpha,
    check_simple_bosonic,
    check_simple_fermionic,
    check_simple_general,
    quadratic_residual,
    s_rank,
    s_rank_bruteforce,
    unfolding_rank,
)
from .measures import RoofEstimate, convex_roof_upper, pure_measure, roof_convexity_probe
from .states_segre import (
    DependentFactorsError,
    PureState,
    big_segre,
    orbit_dimension,
    pure_state_from,
    seg_alpha,
    seg_bosonic,
    seg_distinguishable,
    seg_fermionic,
)
from .young import (
    YoungTableau,
    central_projector,
    count_standard_tableaux,
    enumerate_partitions,
    gl_dim,
    mu,
    orthogonal_projector_alpha,
    projector_alpha,
    young_symmetrizer,
)

__version__ = "0.1.0"
