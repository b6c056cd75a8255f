"""robinball: verification toolkit for a Robin-Poisson problem on a ball
whose explicit solution is radial about an interior offset point rather than
the ball's center.

The package has four parts:

- ``counterexample``: the closed-form solution family (coefficients, phi and
  its derivatives, exact interior/boundary residuals, nonnegativity region
  classification, sign-change and asymmetry scans);
- ``oracle``: an independent finite-difference cross-check that rebuilds
  the Laplacian and the boundary normal derivative from pointwise samples;
- ``bvp1d``: a shooting solver for the 1D Robin problem together with
  evenness/positivity/monotonicity diagnostics (in 1D symmetry provably holds
  for nonnegative right-hand sides, and provably fails without them);
- ``cli``: the ``robinball`` command with verify | sweep | region | profile |
  solve1d subcommands emitting CSV/JSON.
"""

from .bvp1d import (
    Bvp1dProblem,
    Bvp1dSolution,
    SymmetryReport1d,
    SymmetryVerdict,
    diagnose,
    interpolate,
    solve,
    verify_symmetry,
)
from .counterexample import (
    BallGeometry,
    CounterexampleModel,
    NonnegativityClass,
    RobinParameter,
    SymmetryDiagnostics,
    asymmetry_metric,
    check_superharmonic_constraint,
    derive_model,
    f_eval,
    f_of_radius,
    grad_phi,
    laplacian_phi,
    laplacian_radial,
    nonlinearity_min_scan,
    pde_residual,
    phi,
    phi_radial,
    robin_residual,
    sign_change_scan,
    superharmonic_threshold,
    unit_directions,
)
from .errors import (
    DivergenceError,
    DomainError,
    EmptyDomainError,
    HypothesisViolationError,
    IndeterminateOrderError,
    InvalidParameterError,
    NoConvergenceError,
    StencilClearanceError,
)
from .oracle import (
    ResidualReport,
    StencilConfig,
    convergence_order,
    fd_laplacian,
    fd_normal_derivative,
    residual_audit,
    sample_boundary,
    sample_interior,
)

__version__ = "0.1.0"

__all__ = [
    "BallGeometry",
    "RobinParameter",
    "CounterexampleModel",
    "SymmetryDiagnostics",
    "NonnegativityClass",
    "derive_model",
    "phi",
    "phi_radial",
    "grad_phi",
    "laplacian_phi",
    "laplacian_radial",
    "f_eval",
    "f_of_radius",
    "pde_residual",
    "robin_residual",
    "check_superharmonic_constraint",
    "superharmonic_threshold",
    "nonlinearity_min_scan",
    "sign_change_scan",
    "asymmetry_metric",
    "unit_directions",
    "StencilConfig",
    "ResidualReport",
    "fd_laplacian",
    "fd_normal_derivative",
    "sample_interior",
    "sample_boundary",
    "convergence_order",
    "residual_audit",
    "Bvp1dProblem",
    "Bvp1dSolution",
    "SymmetryReport1d",
    "SymmetryVerdict",
    "solve",
    "diagnose",
    "interpolate",
    "verify_symmetry",
    "InvalidParameterError",
    "DomainError",
    "StencilClearanceError",
    "EmptyDomainError",
    "IndeterminateOrderError",
    "NoConvergenceError",
    "DivergenceError",
    "HypothesisViolationError",
    "__version__",
]
