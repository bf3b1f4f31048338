"""Exact invariants of Q-factorial toric log germs.

Minimal log discrepancies, adjunction, log canonical thresholds via Newton
polyhedra, flat log structures, and a survey harness over bounded-index germ
corpora.  All arithmetic is exact rational.
"""
from .rationals import Rat, QVec, rat, rat_str, qvec
from .lattice import (
    CosetTable,
    Lattice,
    coset_reps,
    dual_lattice,
    enumerate_superlattices,
    lattice_contains,
    lattice_from_generators,
    lattice_index,
    primitive_scale,
    project_drop_coord,
)
from .germ import (
    Face,
    MldReport,
    ToricGerm,
    cartier_index,
    germ_cyclic_quotient,
    germ_from_px,
    germ_normalize,
    log_discrepancy_of_valuation,
    mld_bruteforce_oracle,
    mld_face,
    mld_global,
    px_mld_formula,
    verify_minkowski,
)
from .adjunction import (
    AdjunctionResult,
    CheckReport,
    adjoin_invariant_divisor,
    check_lower_semicontinuity,
    check_precise_inversion,
    check_shokurov_bounds,
)
from .newton import (
    LctReport,
    NewtonPoly,
    dual_hilbert_basis,
    first_intersection_mu,
    lct_fermat,
    lct_general_member,
    lct_monomial,
    lct_newton,
    lct_upper_bound_from_valuation,
    newton_poly_from_exponents,
)
from .flat import (
    CenterDescriptor,
    FlatBuildResult,
    FlatState,
    build_flat_structure,
    minimal_center,
    state_value,
    threshold_step,
)
from .survey import (
    AccReport,
    CorpusConfig,
    SurveyRow,
    acc_report,
    parse_germ,
    run_survey,
    serialize_germ,
    verify_corpus,
)

__version__ = "0.1.0"
