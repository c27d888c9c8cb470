"""Dimer models on the two-torus: tilings, dual quivers, matchings,
stability, and the toric charts of their moduli spaces.

The package follows one pipeline: a bipartite tiling of the torus is
validated and traced into faces; its dual quiver carries one arrow per
edge and one relation per arrow; perfect matchings give height changes, a
characteristic polynomial, and its Newton polygon; generic stability
weights single out torus-fixed representations, whose fundamental domains
classify the local charts; the chart cones assemble into a fan that is
checked against the polygon as a certificate of crepant resolution.
"""

from .catalog import example, example_names
from .charts import (
    ARROW_CAP,
    CASE_FOUR,
    CASE_SIX_OPPOSITE,
    CASE_SIX_SAME,
    CertificateReport,
    Chart,
    ChartClassification,
    ChartCone,
    FanResult,
    FixedPointCandidate,
    FundamentalDomain,
    assemble_fan,
    chart_characters,
    chart_cone,
    chart_rows,
    chart_transition,
    classify_chart,
    enumerate_fixed_candidates,
    fundamental_domain,
    verify_crepant,
)
from .exceptions import (
    CapacityError,
    DegenerateModelError,
    InternalConsistencyError,
    InvalidModelError,
)
from .heights import (
    LatticePolygon,
    LaurentPoly2,
    area2,
    char_poly,
    contains_point,
    convex_hull,
    height_change,
    laurent_from_counts,
    newton_polygon,
)
from .lattice import (
    Cone3,
    CocharLattice,
    SNFResult,
    Splitting,
    cochar_lattice,
    cone_over_polygon,
    constraint_matrix,
    det_int,
    dual_cone,
    express_functional,
    hilbert_basis,
    in_weight_lattice,
    kernel_basis,
    level_of,
    pm_cocharacter,
    smith_normal_form,
    solve_integer,
    split_by_reference,
    torus_dimension,
    turn_class,
    unturn_class,
)
from .matchings import (
    MATCHING_CAP,
    NON_DEGENERACY_METHODS,
    SUBSET_CAP,
    BipartiteGraph,
    enumerate_matchings,
    from_model,
    has_matching_containing,
    has_perfect_matching,
    is_non_degenerate,
    perfect_matchings,
    r_charge_average,
)
from .model import (
    BLACK,
    WHITE,
    CoverFragment,
    DimerEdge,
    DimerModel,
    DimerVertex,
    Face,
    FaceTrace,
    ValidationCheck,
    ValidationReport,
    compute_faces,
    dump_model,
    face_gluing_shifts,
    lift_patch,
    load_model,
    model_from_dict,
    model_to_dict,
    trace_faces,
    validate_model,
)
from .quiver import (
    Arrow,
    PathSeq,
    Quiver,
    RelationPair,
    allowed_subquiver,
    check_support,
    make_path,
    p_minus,
    p_plus,
    path_class,
    path_weight,
    quiver_of,
    relations,
    rep_satisfies_relations,
)
from .render import render_domain, render_model, render_polygon
from .stability import (
    VERTEX_CAP,
    Theta,
    draw_xi,
    is_generic,
    is_semistable,
    is_stable,
    make_theta,
    sample_generic_theta,
    sardo_infirri_theta,
    successor_closed_subsets,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
