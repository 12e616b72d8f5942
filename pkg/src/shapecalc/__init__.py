"""Shape-derivative calculus on simplices.

Evaluates d/dt of the integral of an affine density over an affinely
perturbed simplex three independent ways (boundary quadrature, divergence
volume integral, finite differences) and uses the boundary decomposition
to verify the Pythagorean theorem, the laws of sines and cosines, and the
N-dimensional Pythagorean theorem.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateSimplexError,
    DimensionMismatchError,
    LegOrthogonalityError,
    NotRightTriangleError,
    ShapeCalcError,
    ShapeParseError,
    ShapeValidationError,
)
from .fields import (
    AffineDensity,
    AffineField,
    cosines_field,
    div_density_field,
    eval_field,
    nd_pythagoras_field,
    pythagoras_field,
    sines_field,
)
from .geometry import (
    DEGENERACY_EPS,
    Facet,
    Simplex,
    Triangle,
    base_height_volume,
    facet_measure,
    facets,
    outward_normal,
    simplex_volume,
    triangle_metrics,
)
from .hadamard import (
    DerivativeReport,
    boundary_integral,
    default_fd_step,
    fd_derivative,
    hadamard_derivative,
    perturbed_integral,
    volume_integral,
)
from .theorems import (
    RightSimplexSpec,
    TheoremReport,
    face_normal_identity,
    random_right_simplex,
    random_triangle,
    verify_law_of_cosines,
    verify_law_of_sines,
    verify_nd_pythagoras,
    verify_pythagoras,
)

__all__ = [
    "__version__",
    "AffineDensity",
    "AffineField",
    "DEGENERACY_EPS",
    "DegenerateSimplexError",
    "DerivativeReport",
    "DimensionMismatchError",
    "Facet",
    "LegOrthogonalityError",
    "NotRightTriangleError",
    "RightSimplexSpec",
    "ShapeCalcError",
    "ShapeParseError",
    "ShapeValidationError",
    "Simplex",
    "TheoremReport",
    "Triangle",
    "base_height_volume",
    "boundary_integral",
    "cosines_field",
    "default_fd_step",
    "div_density_field",
    "eval_field",
    "face_normal_identity",
    "facet_measure",
    "facets",
    "fd_derivative",
    "hadamard_derivative",
    "nd_pythagoras_field",
    "outward_normal",
    "perturbed_integral",
    "pythagoras_field",
    "random_right_simplex",
    "random_triangle",
    "simplex_volume",
    "sines_field",
    "triangle_metrics",
    "verify_law_of_cosines",
    "verify_law_of_sines",
    "verify_nd_pythagoras",
    "verify_pythagoras",
    "volume_integral",
]
