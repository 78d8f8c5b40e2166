"""Exact minimal log discrepancies of toric surface germs and the
regularity-one linear systems built from them."""

from .acc import (
    CoefficientFamily,
    ScanReport,
    check_stabilization,
    check_system_stabilization,
    enumerate_system_mlds,
    enumerate_toric_mlds,
)
from .cones import (
    ChainDecomposition,
    Cone2D,
    chain_from_weights,
    cone_from_continued_fraction,
    cone_index,
    contains_relint,
    hirzebruch_jung,
    regular_decomposition,
)
from .lattice import LatticePoint, LinearForm, Rational, as_rational, det, format_rational, linear_form_through, primitive
from .mld import (
    MINUS_INFINITY,
    MinusInfinity,
    MldResult,
    ToricPair,
    brute_force_minimum,
    brute_force_mld,
    form_mld,
    kth_mld,
    kth_mlds,
    log_discrepancy_form,
    minimize_over_halfopen,
    rescale_pair,
    toric_mld,
)
from .regone import (
    Complexity,
    DualComplexShape,
    GeometricModel,
    RegOneSystem,
    Shape,
    SingularSystemError,
    SystemSolution,
    SystemSpecError,
    build_system,
    circle_case_toric,
    classify_dual_complex,
    complexity,
    geometric_model,
    interval_form,
    solve_exact,
    solve_system,
    two_anchor_pair,
)

__version__ = "0.1.0"
