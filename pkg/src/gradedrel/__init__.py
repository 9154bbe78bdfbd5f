"""Graded families of nested symmetric relations on finite ground sets:
exact dyadic distance geometry, admissible-hull structure, self-map
dynamics, and a seeded claim falsifier.
"""

from .dyadic import DyadicValue, centered_cover_level, floor_log2
from .dynamics import (
    DichotomyEntry,
    DichotomyReport,
    InvariantBallReport,
    MapCheck,
    Orbit,
    OUTCOME_FIXED,
    OUTCOME_MINIMAL_BALL,
    OUTCOME_NEITHER,
    RegularFixedPointReport,
    RegularityReport,
    SelfMap,
    VARIANTS,
    fixed_points,
    identity_map,
    is_homomorphism,
    is_nonexpansive,
    ks_dichotomy,
    minimal_invariant_admissible,
    minimal_invariant_balls,
    orbit,
    regular_fixed_point,
    regularity_report,
)
from .errors import (
    GradedRelError,
    PreconditionError,
    ResourceLimitError,
    StructuralInputError,
    UsageError,
)
from .formats import (
    CounterexampleBundle,
    Diagnostic,
    FormatError,
    parse_bundle,
    parse_distance_matrix,
    parse_selfmap,
    parse_system,
    serialize_bundle,
    serialize_distance_matrix,
    serialize_selfmap,
    serialize_system,
)
from .harness import (
    CLAIMS,
    Claim,
    Counterexample,
    GenParams,
    Verdict,
    falsify,
    gen_self_map,
    gen_system,
    shrink,
)
from .hulls import (
    ARBITRARY_CENTER,
    AdmissibleSet,
    NormalityCriteria,
    PAPER_COV,
    RadiiReport,
    StructureReport,
    admissible_family_bits,
    ball,
    check_compact_structure,
    check_normal_structure,
    check_spherical_completeness,
    covering_level,
    enumerate_admissible,
    hull,
    min_distance_clique,
    normality_criteria,
    radii,
)
from .pointset import PointSet, iter_bits
from .relations import (
    AxiomReport,
    Grade,
    GradeMatrix,
    LevelList,
    Relation,
    RelationalSystem,
    TOP,
    Top,
    Window,
    check_axiom,
    compact_to_grades,
    compose,
    default_labels,
    expand_level,
    grade_str,
    make_system,
    to_level_list,
    validate_level_list,
)
from .semimetric import (
    ClassificationReport,
    TripleWitness,
    classify,
    delta,
    ingest_distance_matrix,
    metric_ball_collapse,
    minimal_inframetric_constant,
    mu,
    reconstruct_level,
)

__version__ = "0.1.0"

__all__ = [
    "ARBITRARY_CENTER",
    "AdmissibleSet",
    "AxiomReport",
    "CLAIMS",
    "Claim",
    "ClassificationReport",
    "Counterexample",
    "CounterexampleBundle",
    "Diagnostic",
    "DichotomyEntry",
    "DichotomyReport",
    "DyadicValue",
    "FormatError",
    "GenParams",
    "Grade",
    "GradeMatrix",
    "GradedRelError",
    "InvariantBallReport",
    "LevelList",
    "MapCheck",
    "NormalityCriteria",
    "OUTCOME_FIXED",
    "OUTCOME_MINIMAL_BALL",
    "OUTCOME_NEITHER",
    "Orbit",
    "PAPER_COV",
    "PointSet",
    "PreconditionError",
    "RadiiReport",
    "RegularFixedPointReport",
    "RegularityReport",
    "Relation",
    "RelationalSystem",
    "ResourceLimitError",
    "SelfMap",
    "StructuralInputError",
    "StructureReport",
    "TOP",
    "Top",
    "TripleWitness",
    "UsageError",
    "VARIANTS",
    "Verdict",
    "Window",
    "admissible_family_bits",
    "ball",
    "centered_cover_level",
    "check_axiom",
    "check_compact_structure",
    "check_normal_structure",
    "check_spherical_completeness",
    "classify",
    "compact_to_grades",
    "compose",
    "covering_level",
    "default_labels",
    "delta",
    "enumerate_admissible",
    "expand_level",
    "falsify",
    "fixed_points",
    "floor_log2",
    "gen_self_map",
    "gen_system",
    "grade_str",
    "hull",
    "identity_map",
    "ingest_distance_matrix",
    "is_homomorphism",
    "is_nonexpansive",
    "iter_bits",
    "ks_dichotomy",
    "make_system",
    "metric_ball_collapse",
    "min_distance_clique",
    "minimal_inframetric_constant",
    "minimal_invariant_admissible",
    "minimal_invariant_balls",
    "mu",
    "normality_criteria",
    "orbit",
    "parse_bundle",
    "parse_distance_matrix",
    "parse_selfmap",
    "parse_system",
    "radii",
    "reconstruct_level",
    "regular_fixed_point",
    "regularity_report",
    "serialize_bundle",
    "serialize_distance_matrix",
    "serialize_selfmap",
    "serialize_system",
    "shrink",
    "to_level_list",
    "validate_level_list",
]
