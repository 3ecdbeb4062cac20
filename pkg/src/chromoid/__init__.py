"""Finite morphism-colored categories and groupoids.

Library for building finite categories/groupoids with explicit
composition tables, checking coloring axioms, computing the universal
quotient groupoid with its projection functor, factoring colored
functors through it, and serializing everything to canonical JSON.
"""

from .builders import (
    action_groupoid,
    disjoint_union,
    discrete_coloring,
    hamming_coloring,
    one_object_group,
    pi_coloring,
    trivial_coloring,
)
from .coloring import (
    Coloring,
    NCountTable,
    check_colored_category,
    check_inverse_compat,
    check_move_lemmas,
    check_schemoid,
    make_coloring,
    n_count,
)
from .congruence import (
    ColorPartition,
    StepTable,
    color_step_table,
    morphism_color_partition,
    object_color_partition,
)
from .core import (
    FinCategory,
    FinGroupoid,
    ValidationReport,
    Violation,
    factorizations,
    validate_category,
    validate_groupoid,
)
from .errors import (
    ChromoidError,
    InvariantViolation,
    PreconditionError,
    ResourceLimitError,
    SerializationError,
    StructuralError,
)
from .functors import (
    ColoredFunctor,
    check_colored_functor,
    compose_colored_functors,
    factor_through_quotient,
    groupoid_isomorphic,
    identity_functor,
    induced_functor,
    universal_functor,
)
from .quotient import GroupTable, QuotientResult, build_quotient, group_table, quotient_group
from .serialization import (
    FORMAT,
    canonical_dumps,
    category_to_doc,
    coloring_to_doc,
    functor_to_doc,
    load_category,
    load_coloring,
    load_functor,
    load_report,
    quotient_maps_to_doc,
    report_to_doc,
    save_category,
    save_coloring,
    save_functor,
    save_quotient_maps,
    save_report,
)

__version__ = "0.1.0"
