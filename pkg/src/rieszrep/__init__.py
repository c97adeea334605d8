"""Riesz bases obtained by replacing vectors of an orthonormal basis.

Decides whether swapping the first N vectors of an orthonormal basis for
given unit vectors yields a Riesz basis, computes the optimal frame
constants of the result by independent routes, and certifies exponential
Riesz bases on interval-union domains.
"""

__version__ = "0.1.0"

from .coeff import ReplacementProblem, inner, make_problem, split_projections, validate_problem
from .expbasis import (
    Domain,
    ExpCertificate,
    coefficient_matrix,
    fourier_coeff,
    lattice_points,
    make_domain,
    remark_feasibility,
    suff_basis_check,
    tiling_check,
    unit_box,
)
from .families import gen_block_example, gen_random_perturbation, gen_rotation
from .frame_constants import (
    FrameConstants,
    SweepReport,
    closed_form_n1,
    exact_constants,
    sweep,
    tilde_constants,
)
from .gershgorin import gershgorin_report, row_col_sums, sigma_min_lower_bound, singular_intervals
from .gram import RieszVerdict, gram_head, gram_tail, mixing_matrix, riesz_basis_test
from .linalg import hermitian_eigen_range
from .variational import VariationalOptions, variational_constants
