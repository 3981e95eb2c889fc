"""Fiber-preserving branched coverings between Seifert fibered solid tori."""
from .covering_geometry import (
    BranchingData,
    CoverSpec,
    DeckAction,
    InvalidCoverSpecError,
    QuotientPoint,
    UCPoint,
    VerificationReport,
    branching_data,
    build_cover_spec,
    canonical_rep,
    cover_spec_from_json,
    deck_apply,
    divisibility_check,
    fiber_degree,
    lifted_apply,
    preimages,
    quotient_eq,
    quotient_map_apply,
    sample_points,
    validate_cover_spec,
    verify_cover,
    verify_equivariance,
)
from .exact_arith import BezoutPair, bezout, ext_gcd, format_rational, parse_rational, reduce_mod1
from .torus_homology import (
    BoundaryMapMatrix,
    CoverDecision,
    InvalidInvariantError,
    NecessityWitness,
    SeifertInvariant,
    TorusClass,
    boundary_degree,
    boundary_pushforward,
    change_section,
    decide_cover,
    enumerate_sources,
    meridian_class,
    necessity_scale,
    ratio_condition,
    solve_source_beta,
)

__version__ = "0.1.0"
