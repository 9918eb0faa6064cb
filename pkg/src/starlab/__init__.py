"""Graded star products of functions on the 2-sphere.

Products are built from midpoint-triangle kernels: an oscillatory holonomy
phase given by the signed area of the geodesic triangle whose side
midpoints are the integration variables, weighted by the Jacobian of the
vertex-to-midpoint change of variables.  The package provides the
geometry, the kernels, antipodally symmetric quadrature, band-limited
function spaces with parity decomposition, the product engine with its
structure constants and semiclassical limit scan, and a batch CLI.
"""

from .sphere_geometry import (
    EPS_DET,
    EPS_SIGN,
    MidpointTriple,
    SpherePoint,
    TriangleVertices,
    amplitude_A,
    antipode,
    classify_batch,
    classify_triple,
    flip_triple,
    make_point,
    midpoints_from_vertices,
    point_reflection,
    rotation_matrix,
    signed_area_from_vertices,
    standardize_conjugate,
    triangle_area_S,
    vertices_from_midpoints,
)
from .quadrature import QuadratureGrid, build_grid, grid_to_csv, integrate
from .function_space import (
    BandlimitedFunction,
    basis_matrix,
    coeff_count,
    coeffs_from_csv,
    coeffs_to_csv,
    evaluate,
    lm_index,
    parity_decompose,
    project,
    random_bandlimited,
)
from .kernels import (
    AMPLITUDES,
    PARTIAL_LABELS,
    KernelSpec,
    complement_label,
    generalized_kernel,
    global_kernel,
    partial_kernel,
    phase_factor,
    restricted_even_kernel,
)
from .product_engine import (
    LimitScanRow,
    ProductResult,
    StructureTensor,
    limit_scan,
    product_generalized,
    product_global,
    product_partial,
    product_partials_all,
    product_restricted_even,
    product_to_csv,
    structure_constants,
    structure_to_csv,
    worker_count,
)
from .config import ConfigError, RunConfig, build_config
from .verify import PropertyResult, run_suite

__version__ = "0.1.0"
