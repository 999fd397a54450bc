"""Finite-volume Ising-chain one-point corrections.

The central object is the correction function v(1/N) multiplying the
conformal prefactor of the critical chain's spin one-point function.  The
package evaluates it by four independent routes (defining integral,
vertical-contour representation, log-Gamma series, Borel-Laplace), walks
its analytic continuation up to the natural boundary on the negative real
axis, and verifies the web of identities tying it to odd divisor-square
sums, Borel-plane pole data, q-product/partition-function formulas, and
the Mordell-integral false-theta decomposition.

Quick start::

    from isingv import v_auto, reflection_residual, one_point
    v_auto(10.0).value            # v(1/10)
    reflection_residual(0.3, 0.4) # ~1e-13
    one_point(4)                  # via_v vs via_p cross-check

Everything is pure and reentrant; scans parallelize freely.
"""

from .boundary import (
    RationalAngle,
    SingularityClass,
    SingularityKind,
    SingularityLaw,
    classify_boundary_point,
    classify_real,
    cosine_sum_rule,
    imag_singular_sum,
    reflection_residual,
    regular_sum_closed,
    singular_sum,
    singularity_fit,
)
from .divisor import (
    DivisorTable,
    check_sigma_identities,
    fig1_table,
    lambert_L,
    s_generating,
    sigma_k,
    sigma_o_minus2,
)
from .emit import RunConfig, ScanTable
from .errors import (
    BranchError,
    ConvergenceError,
    DecayStallError,
    DomainError,
    FitError,
    IsingvError,
    PoleError,
    RouteDisagreementError,
    StokesRayError,
)
from .legcs import (
    LegEvaluation,
    LegRoute,
    cs_identity_residual,
    cs_partition_log,
    gamma_hat,
    leg_asymptotic,
    leg_p,
    one_point,
    product_P,
)
from .mordell import (
    MordellEvaluation,
    MordellRoute,
    fig2_scan,
    j_dual,
    j_mellin_barnes,
    j_quadrature,
    j_reflection_residual,
    psi_false_theta,
)
from .quadrature import QuadratureResult, integrate_half_line, integrate_vertical_line
from .resurgence import (
    BorelPoleData,
    borel_pole_coeffs,
    borel_transform,
    stokes_discontinuity,
)
from .special import (
    barnes_constants,
    bernoulli_number,
    bernoulli_poly,
    hurwitz_zeta,
    log_gamma,
    zeta,
)
from .vfn import (
    Route,
    VEvaluation,
    v_auto,
    v_borel_laplace,
    v_integral,
    v_loggamma_sum,
    v_mellin_barnes,
    v_series_coeff,
    v_series_truncated,
)

__version__ = "0.1.0"
