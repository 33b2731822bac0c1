"""Exact-arithmetic toolkit for discriminantal arrangements.

Everything runs over arbitrary-precision rationals: construction of the
concurrency hyperplanes of a generic trace, the codimension-2 stratum census
and its multiplicity classification, detection and construction of dependent
configurations, Gale transforms and their discriminantal interpretation, the
combinatorial dimension theory of line arrangements, and braid monodromy
with fundamental-group presentations of generic plane sections.

All values are immutable and all operations pure; any of them may be
evaluated concurrently without coordination.
"""

from .arrangement import (
    GenericArrangement,
    arrangement_from_json,
    arrangement_to_json,
    is_affine_generic,
    is_trace_generic,
    random_generic,
    restrict,
)
from .braid import BraidWord, braids_equal, full_twist, halftwist, smith_invariants
from .discriminantal import (
    DEPENDENT,
    GOOD,
    OTHER,
    SIMPLE,
    DependentTriple,
    DiscForm,
    StratumRecord,
    build_all,
    build_form,
    census_to_json,
    codim2_census,
    codim_intersection,
    construct_dependent,
    dependent_triples,
    project,
)
from .gale import (
    PointConfig,
    concurrent_partition_exists,
    config_from_json,
    config_to_json,
    essential_normals_via_gale,
    gale_transform,
    is_associated,
    pencil_partition_exists,
)
from .linalg import QMatrix
from .monodromy import (
    Presentation,
    SectionLine,
    SectionPlane,
    SingularPoint,
    braid_monodromy,
    nilpotent_relations,
    presentation,
    random_section,
    section_lines,
    singular_points,
)
from .planar import (
    codim_combinatorial,
    dim_combinatorial,
    dim_formula,
    merge_classes,
    verify_independence,
)

__version__ = "0.1.0"
