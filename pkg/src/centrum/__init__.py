"""centrum: exact workbench for centers of algebras, bimodule tensor calculus
and the cospan bicategory of commutative algebras."""

from .exactla import (
    QQ,
    Matrix,
    PrimeField,
    Quotient,
    Subspace,
    field_from_name,
)
from .algebra import (
    Algebra,
    AlgebraMap,
    center,
    centralizer,
    compose_maps,
    identity_map,
    matrix_algebra,
    named_algebra,
    opposite_algebra,
    product_algebra,
    tensor_algebra,
    unit_map,
    validate_algebra,
    validate_algebra_map,
)
from .bimodule import (
    Bimodule,
    BimoduleMap,
    comp_bar,
    end_algebra,
    free_bimodule,
    hom_space,
    interchange_check,
    pentagon_check,
    regular_bimodule,
    tensor_over,
    triangle_check,
    validate_bimodule,
    validate_bimodule_map,
)
from .cospanbicat import (
    CoherenceReport,
    Cospan,
    ThreeCell,
    TwoDiagram,
    beta_cell,
    compose_cospans,
    find_invertible_3cell,
    horizontal_compose,
    identity_cospan,
    is_invertible_cospan,
    validate_2diagram,
    validate_3cell,
    validate_cospan,
    vertical_compose,
)
from .fullcenter import (
    Z_2cell,
    Z_bimodule,
    Z_hom,
    Z_object,
    check_theorem58_hypotheses,
    m_square,
    morita_center_check,
    mult_transform,
    mult_transform_bimodule,
    n_general,
    verify_lax_functor,
)
from .corpus import run_all

__all__ = [
    "QQ",
    "Matrix",
    "PrimeField",
    "Quotient",
    "Subspace",
    "field_from_name",
    "Algebra",
    "AlgebraMap",
    "center",
    "centralizer",
    "compose_maps",
    "identity_map",
    "matrix_algebra",
    "named_algebra",
    "opposite_algebra",
    "product_algebra",
    "tensor_algebra",
    "unit_map",
    "validate_algebra",
    "validate_algebra_map",
    "Bimodule",
    "BimoduleMap",
    "comp_bar",
    "end_algebra",
    "free_bimodule",
    "hom_space",
    "interchange_check",
    "pentagon_check",
    "regular_bimodule",
    "tensor_over",
    "triangle_check",
    "validate_bimodule",
    "validate_bimodule_map",
    "CoherenceReport",
    "Cospan",
    "ThreeCell",
    "TwoDiagram",
    "beta_cell",
    "compose_cospans",
    "find_invertible_3cell",
    "horizontal_compose",
    "identity_cospan",
    "is_invertible_cospan",
    "validate_2diagram",
    "validate_3cell",
    "validate_cospan",
    "vertical_compose",
    "Z_2cell",
    "Z_bimodule",
    "Z_hom",
    "Z_object",
    "check_theorem58_hypotheses",
    "m_square",
    "morita_center_check",
    "mult_transform",
    "mult_transform_bimodule",
    "n_general",
    "verify_lax_functor",
    "run_all",
]

__version__ = "0.1.0"
