"""Exact symbolic verification of the monogenic Hua-Radon transform, its
reproducing kernel, the dual transform over frames and the inversion formula."""

from .scalar_tower import GaussianRational, HalfInt, PiScalar, gamma_half, gamma_ratio, pochhammer, unit_sphere_area
from .clifford import Blade, CliffordElement, Frame, canonical_frame, rotated_frame, wedge
from .poly import CPoly, SYMBOLIC, dirac, right_dirac, laplacian, gamma_operator, parse_cpoly, vector_variable
from .integrate import ol2_pairing, sphere_integral, stiefel_average, stiefel_moment
from .fischer import fischer_decompose, monogenic_component, z_power_times
from .huaradon import apply_transform, lambda_, lambda_discrepancy, monogenic_psi, mu, phi, lambda_unnormalized, psi, psi_j
from .zonal_dual import (
    dual_of_transform,
    frame_kernel,
    gamma_constant,
    gegenbauer,
    invert,
    total_dual_transform,
    vartheta,
    zonal_monogenic,
    zonal_reproduce,
)
from .identities import IdentityCheck, appendix_b_inner_sum, appendix_b_outer_sum, chu_vandermonde, m2_degeneracy, pascal_sum, roy_sum
from .cli import Report, SuiteConfig, list_suites, run_suite

__version__ = "0.1.0"
