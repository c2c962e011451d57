"""Region crossing changes and region freeze crossing changes on link diagrams."""

from .diagram import (
    BLACK,
    WHITE,
    Diagram,
    DiagramError,
    NonPlanarError,
    PreconditionError,
    change_crossings,
    checkerboard,
    descending_target,
    is_descending,
    mirror,
    parse_pd,
    reducible_crossings,
    serialize_pd,
    splice,
    total_linking_number,
)
from .gf2 import NullityCapError
from .moves import (
    RealizabilityReport,
    apply_rcc,
    apply_rfcc,
    incidence_matrix,
    ineffective_sets,
    rcc_effect,
    rfcc_effect,
    rfcc_realizability,
    solve_rcc,
    solve_rfcc,
    star_condition,
    untie_by_rcc,
    untie_by_rfcc,
    untie_knot,
)
from .realization import realize

__all__ = [
    "BLACK",
    "WHITE",
    "Diagram",
    "DiagramError",
    "NonPlanarError",
    "NullityCapError",
    "PreconditionError",
    "RealizabilityReport",
    "apply_rcc",
    "apply_rfcc",
    "change_crossings",
    "checkerboard",
    "descending_target",
    "incidence_matrix",
    "ineffective_sets",
    "is_descending",
    "mirror",
    "parse_pd",
    "rcc_effect",
    "realize",
    "reducible_crossings",
    "rfcc_effect",
    "rfcc_realizability",
    "serialize_pd",
    "solve_rcc",
    "solve_rfcc",
    "splice",
    "star_condition",
    "total_linking_number",
    "untie_by_rcc",
    "untie_by_rfcc",
    "untie_knot",
]
