"""Combinatorial strata of spaces of Morse functions on closed oriented surfaces.

Morse classes are encoded as leveled surgery programs on oriented circles.
The package enumerates classes, computes their relative homology, builds the
stratification poset, realizes chart coordinates and evaluates invariants.
"""
from .errors import *  # noqa: F401,F403
from .partitions import OrderedPartition, all_ordered_partitions, ordered_partitions
from .program import (
    LabelSpec,
    MorseProgram,
    SurfaceSignature,
    ValidationReport,
    execute,
    program_from_words,
    require_valid,
    surface_signature,
    validate_program,
)
from .levelgraph import Edge, LevelGraph, extract_level_graph, reading_order
from .canonical import (
    Automorphism,
    AutomorphismGroup,
    CanonicalClass,
    automorphism_group,
    canonical_form,
    random_representative,
)
from .enumeration import (
    DEFAULT_BUDGET,
    EnumerationQuery,
    cached_enumeration,
    count_by_saddle_levels,
    delta,
    enumerate_classes,
    load_classes,
    refine_order,
    save_classes,
)
from .linalg import determinant, rank, smith_normal_form
from .homology import (
    CellComplex,
    EdgeBasisCertificate,
    Incidence,
    build_cell_complex,
    class_certificate,
    incidence_matrix,
    relative_h1,
)
from .poset import StrataPoset, build_poset, filtration, specialty_neighborhood
from .atlas import (
    AtlasPoint,
    act,
    atlas_check,
    canonicalize_point,
    induced_partition,
    make_point,
    random_point,
    stabilizer,
    transition,
)
from .invariants import (
    PoincarePolynomial,
    StratumHomotopyPlugin,
    diffeomorphism_homotopy_type,
    dimension_vanishing_check,
    euler_characteristic,
    morse_smale_check,
    q_polynomial,
)

__version__ = "0.1.0"
