"""Finite presentations of globular computads and inverse-tower search."""
from .core import (  # noqa: F401
    Comp, Computad, ComputadError, Gen, Generator, Id, IllTyped, LevelOutOfRange,
    NameCollision, NotParallel, Term, UnknownGenerator, ValidationReport, boundary,
    count_cells, dim_of, empty, is_parallel, is_well_typed, normalize, point, substitute,
    terms_equal, validate_computad,
)
from .constructions import (  # noqa: F401
    Cell, GluingData, InvalidGluing, amalgamate, attach_cells, boundary_globe,
    composable_pair, coproduct, e_omega, e_stage, e_stage_by_pushout, e_truncation_1,
    globe, iso_batch, standard_e, suspend, suspend_n, walking_arrow, walking_iso,
)
from .morphisms import (  # noqa: F401
    ComputadMap, Mismatch, SizeLimitExceeded, apply_map, compose_maps, identity_map,
    iso_check, maps_equal, omega_projection, stage_inclusion, suspension_comparison,
    tau1, validate_map,
)
from .invertibility import (  # noqa: F401
    ClosureReport, Fragment, InverseTower, SearchResult, WitnessFunction,
    canonical_witness_e, copy_witness_e_omega, identity_tower, search_tower,
    unfold_witness, verify_tower, witness_closure, witness_to_map,
)
from .span_model import (  # noqa: F401
    CardinalityAssignment, Certificate, certify_distinct, certify_noninvertible, eval_term,
)
from .dsl import ParseError, format_computad, parse_dsl, parse_term  # noqa: F401

__version__ = "0.1.0"
