"""Exact computer algebra for knot contact homology and topological strings.

Everything is exact: Gaussian rational scalars, Laurent polynomials,
truncated formal series, and cyclotomic numbers.  Floating point appears
only as a cross-check against the exact Wilson loop values.
"""

from .augment import (
    AugmentationSystem,
    AugmentationVarietyResult,
    augmentation_exists,
    augmentation_system,
    eliminate_augmentation_ideal,
    is_augmentation,
)
from .cyclotomic import CyclotomicElement, CyclotomicField, cyclotomic_polynomial
from .dga import (
    DGA,
    AlgebraElement,
    DgaCheckReport,
    Generator,
    build_dga,
    bundled_names,
    load_bundled,
    load_dga,
    load_dga_text,
)
from .errors import (
    DomainError,
    KchError,
    ParseError,
    ResourceLimitError,
    RingMismatchError,
    VerificationError,
)
from .feynman import (
    CubicForm,
    Pairing,
    QuadraticForm,
    RibbonGraph,
    canonical_graph_class,
    connected_exp,
    connected_isomorphism_classes,
    connected_log,
    connected_scalar_series,
    double_factorial,
    enumerate_pairings,
    evaluate_matrix_series,
    matrix_model_series,
    matrix_wick_oracle_series,
    ribbon_census,
    ribbon_faces,
    scalar_model_series,
    stein_oracle_series,
    trace_faces,
)
from .groebner import ideal_contains_one, normal_form, reduced_groebner_basis
from .homfly import BUNDLED_DIAGRAMS, delta, homfly
from .laurent import LaurentPolynomial, parse_polynomial
from .mirror import (
    BranchSeries,
    CurveResidualReport,
    PotentialSeries,
    branch_series,
    p_series,
    potential_series,
    potential_x_derivative,
    verify_on_curve,
)
from .pd import LinkDiagram, parse_pd, smooth_crossing, switch_crossing
from .scalars import I, ONE, ZERO, Scalar, parse_scalar
from .series import FormalSeries
from .symfunc import (
    HolonomySpectrum,
    complete_homogeneous,
    complete_homogeneous_direct,
    determinant_product_series,
    power_sums,
    symmetric_trace_series,
)
from .wilson import wilson_exact, wilson_loop, wilson_loop_float

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AugmentationSystem",
    "AugmentationVarietyResult",
    "BUNDLED_DIAGRAMS",
    "BranchSeries",
    "CubicForm",
    "CurveResidualReport",
    "CyclotomicElement",
    "CyclotomicField",
    "DGA",
    "DgaCheckReport",
    "DomainError",
    "FormalSeries",
    "Generator",
    "HolonomySpectrum",
    "I",
    "KchError",
    "LaurentPolynomial",
    "LinkDiagram",
    "ONE",
    "Pairing",
    "ParseError",
    "PotentialSeries",
    "QuadraticForm",
    "ResourceLimitError",
    "RibbonGraph",
    "RingMismatchError",
    "Scalar",
    "VerificationError",
    "ZERO",
    "augmentation_exists",
    "augmentation_system",
    "branch_series",
    "build_dga",
    "bundled_names",
    "canonical_graph_class",
    "complete_homogeneous",
    "complete_homogeneous_direct",
    "connected_exp",
    "connected_isomorphism_classes",
    "connected_log",
    "connected_scalar_series",
    "cyclotomic_polynomial",
    "delta",
    "determinant_product_series",
    "double_factorial",
    "eliminate_augmentation_ideal",
    "enumerate_pairings",
    "evaluate_matrix_series",
    "homfly",
    "ideal_contains_one",
    "is_augmentation",
    "load_bundled",
    "load_dga",
    "load_dga_text",
    "matrix_model_series",
    "matrix_wick_oracle_series",
    "normal_form",
    "p_series",
    "parse_pd",
    "parse_polynomial",
    "parse_scalar",
    "potential_series",
    "potential_x_derivative",
    "power_sums",
    "reduced_groebner_basis",
    "ribbon_census",
    "ribbon_faces",
    "scalar_model_series",
    "smooth_crossing",
    "stein_oracle_series",
    "switch_crossing",
    "symmetric_trace_series",
    "trace_faces",
    "verify_on_curve",
    "wilson_exact",
    "wilson_loop",
    "wilson_loop_float",
]
