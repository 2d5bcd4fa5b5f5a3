"""Desk-scale combinatorics and convolution algebras of finite rank-k graphs."""

from .skeleton import (
    Degree,
    Edge,
    ExactModeError,
    FactorizationRule,
    Skeleton,
    SkeletonFormatError,
    ValidationReport,
    Vertex,
    degree_box,
    export_dot,
    is_acyclic,
    load_skeleton,
    validate,
    validate_associativity,
    validate_squares,
)
from .paths import (
    AlignmentReport,
    GridModel,
    MinimalExtensionPair,
    Path,
    alignment_report,
    all_paths,
    compose,
    edge_path,
    enumerate_paths,
    factorize,
    grid_skeleton,
    minimal_common_extensions,
    minimal_extension_pairs,
    path_from_word,
    paths_from,
    paths_with_range,
    segment,
    source,
    vertex_at,
    vertex_path,
)
from .boundary import (
    BoundaryCertificate,
    ExhaustiveSet,
    ExhaustivenessResult,
    FinitePathSpace,
    PathSpaceElement,
    VertexClassification,
    boundary_paths,
    boundary_report,
    classify_vertices,
    enumerate_path_space,
    is_boundary,
    is_exhaustive,
    minimal_exhaustive_sets,
    prepend,
    shift,
)
from .groupoid import (
    CylinderSet,
    FiniteGroupoid,
    GroupoidElement,
    build_boundary_groupoid,
    build_path_groupoid,
    cocycle,
    compose_elements,
    cylinder,
    invert_element,
    isotropy,
    orbits,
    verify_etale,
    verify_groupoid_axioms,
)
from .algebra import (
    AlgebraElement,
    BimoduleOperator,
    EdgeFunction,
    GenerationReport,
    RegularRepresentation,
    RelationReport,
    VertexFunction,
    algebra_dimension,
    convolve,
    cuntz_krieger_sides,
    edge_operator,
    gauge_automorphism,
    generation_check,
    i_norm,
    inner_product,
    involution,
    left_action,
    left_mult_operator,
    quotient_restrict,
    rank_one_decomposition,
    rank_one_lift,
    rank_one_operator,
    right_action,
    vertex_operator,
    verify_algebra_identities,
    verify_cuntz_krieger,
    verify_gauge_action,
    verify_quotient,
    verify_toeplitz_identities,
)

__version__ = "0.1.0"
