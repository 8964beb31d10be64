"""Exact experiments with solutions of the Fréchet functional equation.

The library works over the real quadratic field Q(sqrt d): rationals and
surd parts are exactly computable there, so discontinuous solutions of
the difference equation can be built, interpolated, decomposed and
sampled with zero numerical error.
"""

from .diffs import (FrechetReport, check_frechet, check_frechet_variable,
                    fixed_step_diff, variable_step_diff)
from .errors import (DimensionMismatchError, FrechetlabError,
                     InconsistentDecompositionError, InvalidGridError,
                     InvalidWindowError, ModelParseError)
from .explore import (CoverageGrid, GrowthTable, PointCloud,
                      coverage_fraction, growth_table, image_cloud,
                      iter_graph_points, sample_graph)
from .interp import (ExtensionReport, GridSpec, SampleTensor,
                     build_interpolant, check_integer_extension,
                     check_rational_refinement, fit_tensor_grid,
                     phi_gamma_eval)
from .parsing import parse_model, parse_poly, parse_scalar
from .poly import (TensorPoly, UniPoly, partial_derivative, poly_equal,
                   substitute_affine, tensor_eval)
from .sampling import Lcg
from .scalars import (DEFAULT_D, QuadScalar, Rational, as_quad,
                      enumerate_by_height, height, quad_conjugate, surd_part)
from .shear import (ShearDecomposition, StrictSearchResult,
                    bivariate_jacobian, find_strict_decomposition,
                    forbidden_alphas, shear_decompose, slice_polynomial,
                    sqrt_in_field, xi_determinant)
from .witness import (Ordinary, Product, Scale, SectionSpec, Sum, SurdPart,
                      WitnessModel, declared_order, eval_model,
                      is_structurally_polynomial, restrict_section)

__version__ = "0.1.0"
