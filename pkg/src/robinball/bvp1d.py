"""Shooting solver and symmetry diagnostics for the 1D Robin boundary-value
problem

    -u'' = f(u)   on (-R, R),
    -u'(-R) + beta*u(-R) = 0,      u'(R) + beta*u(R) = 0,

with the outward-normal convention d(u)/d(nu) = -u' at the left endpoint.

The solver is a single-shooting method: the unknown is s = u(-R), the left
Robin condition fixes u'(-R) = beta*s, the initial-value problem is integrated
with a fixed-step classical 4-stage Runge-Kutta scheme, and a scalar Newton
iteration (difference-quotient derivative, f need only be continuous) drives
the right-endpoint residual g(s) = u'(R) + beta*u(R) to tolerance.

The nonlinear problem may have several solutions; the solver is explicitly
seeded and returns the solution in the basin of the seed.  For nonnegative f
any solution is even, positive and decreasing away from the center, and
``verify_symmetry`` checks exactly those three conclusions; sign-changing f
admits genuinely asymmetric solutions, which ``diagnose`` quantifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, HypothesisViolationError, NoConvergenceError

__all__ = [
    "Bvp1dProblem",
    "Bvp1dSolution",
    "SymmetryReport1d",
    "SymmetryVerdict",
    "solve",
    "diagnose",
    "interpolate",
    "verify_symmetry",
]

MAX_NEWTON_ITERS = 50
DIVERGENCE_GUARD = 1e12
MIN_STEPS = 2000  # step <= 2R/2000


@dataclass(frozen=True)
class Bvp1dProblem:
    """Problem data: half-length R, Robin parameter beta, right-hand side f.

    ``claims_nonnegative`` records the caller's assertion that f >= 0 on the
    solution's range; ``verify_symmetry`` spot-checks it.
    """

    R: float
    beta: float
    f: Callable[[float], float]
    claims_nonnegative: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 0.0):
            raise ValueError(f"R must be positive and finite, got {self.R!r}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ValueError(f"beta must be positive and finite, got {self.beta!r}")


@dataclass(frozen=True)
class Bvp1dSolution:
    """Dense solution samples with solver metadata.

    ``nodes`` are strictly increasing from -R to R and mirror-symmetric about
    0 (odd count, exact node at 0); ``bc_residuals`` holds the signed left and
    right Robin residuals, both within the solver tolerance.
    """

    nodes: np.ndarray
    u: np.ndarray
    du: np.ndarray
    shooting_param: float
    newton_iters: int
    bc_residuals: tuple[float, float]


@dataclass(frozen=True)
class SymmetryReport1d:
    """Evenness, positivity and monotonicity diagnostics of a 1D solution.

    ``symmetry_defect`` is the max over nodes of |u(x) - u(-x)| (mirror values
    by cubic Hermite interpolation); ``endpoint_gap`` is the boundary pair
    difference |u(R) - u(-R)|, the coarsest asymmetry witness.
    """

    symmetry_defect: float
    endpoint_gap: float
    min_value: float
    max_value: float
    argmax: float
    monotone_decreasing_right: bool
    positive: bool


@dataclass(frozen=True)
class SymmetryVerdict:
    """Structured outcome of the nonnegative-f symmetry check."""

    passed: bool
    even: bool
    positive: bool
    monotone: bool
    symmetry_defect: float
    tolerance: float
    report: SymmetryReport1d
    solution: Bvp1dSolution


def _symmetric_nodes(R: float, n_steps: int) -> np.ndarray:
    # Built from one half so that nodes[k] == -nodes[-1-k] bit-exactly.
    half = np.linspace(0.0, R, n_steps // 2 + 1)
    return np.concatenate([-half[::-1], half[1:]])


def _shoot(problem: Bvp1dProblem, s: float, n_steps: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate the IVP u(-R) = s, u'(-R) = beta*s across the interval."""
    nodes = _symmetric_nodes(problem.R, n_steps)
    f = problem.f
    u = np.empty_like(nodes)
    du = np.empty_like(nodes)
    yu = float(s)
    yv = problem.beta * float(s)
    u[0] = yu
    du[0] = yv
    for k in range(nodes.size - 1):
        h = nodes[k + 1] - nodes[k]
        k1u, k1v = yv, -f(yu)
        k2u, k2v = yv + 0.5 * h * k1v, -f(yu + 0.5 * h * k1u)
        k3u, k3v = yv + 0.5 * h * k2v, -f(yu + 0.5 * h * k2u)
        k4u, k4v = yv + h * k3v, -f(yu + h * k3u)
        yu += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        yv += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (math.isfinite(yu) and math.isfinite(yv)) or abs(yu) > DIVERGENCE_GUARD:
            raise DivergenceError(f"integration blew up at x = {nodes[k + 1]:.6g} (|u| = {abs(yu):.3g})")
        u[k + 1] = yu
        du[k + 1] = yv
    return nodes, u, du


def solve(problem: Bvp1dProblem, init_guess: float, tol: float = 1e-10, n_steps: int = MIN_STEPS) -> Bvp1dSolution:
    """Shoot from s = u(-R) seeded at ``init_guess``; Newton on g(s) to |g| <= tol.

    Raises NoConvergenceError (carrying the last residual) after 50 Newton
    iterations and DivergenceError if the integrated state blows up.
    ``n_steps`` must be even and at least 2000 so that the step stays at or
    below 2R/2000.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if n_steps < MIN_STEPS or n_steps % 2:
        raise ValueError(f"n_steps must be an even integer >= {MIN_STEPS}, got {n_steps!r}")

    beta = problem.beta
    s = float(init_guess)
    nodes, u, du = _shoot(problem, s, n_steps)
    g = du[-1] + beta * u[-1]
    iters = 0
    while abs(g) > tol:
        if iters >= MAX_NEWTON_ITERS:
            raise NoConvergenceError(
                f"shooting did not converge in {MAX_NEWTON_ITERS} Newton iterations (|g| = {abs(g):.3g})",
                last_residual=float(g),
            )
        ds = max(1e-7, 1e-7 * abs(s))
        _, u_p, du_p = _shoot(problem, s + ds, n_steps)
        slope = ((du_p[-1] + beta * u_p[-1]) - g) / ds
        if slope == 0.0 or not math.isfinite(slope):
            raise NoConvergenceError(f"degenerate Newton slope {slope!r}", last_residual=float(g))
        s = s - g / slope
        nodes, u, du = _shoot(problem, s, n_steps)
        g = du[-1] + beta * u[-1]
        iters += 1

    left = beta * u[0] - du[0]  # d(u)/d(nu) = -u' at x = -R
    return Bvp1dSolution(
        nodes=nodes,
        u=u,
        du=du,
        shooting_param=s,
        newton_iters=iters,
        bc_residuals=(float(left), float(g)),
    )


def interpolate(solution: Bvp1dSolution, x):
    """Cubic Hermite interpolation of u using the stored (u, u') samples.

    Exact at the nodes; accepts scalars or arrays within [-R, R].
    """
    xq = np.atleast_1d(np.asarray(x, dtype=float))
    nodes, u, du = solution.nodes, solution.u, solution.du
    lo, hi = nodes[0], nodes[-1]
    span_tol = 1e-12 * (hi - lo)
    if np.any(xq < lo - span_tol) or np.any(xq > hi + span_tol):
        raise ValueError("interpolation query outside the solution interval")
    xc = np.clip(xq, lo, hi)
    idx = np.clip(np.searchsorted(nodes, xc, side="right") - 1, 0, nodes.size - 2)
    h = nodes[idx + 1] - nodes[idx]
    t = (xc - nodes[idx]) / h
    h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
    h10 = t * (1.0 - t) ** 2
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    vals = h00 * u[idx] + h10 * h * du[idx] + h01 * u[idx + 1] + h11 * h * du[idx + 1]
    return vals if np.ndim(x) else float(vals[0])


def diagnose(solution: Bvp1dSolution) -> SymmetryReport1d:
    """Evenness/positivity/monotonicity report for a solved 1D problem."""
    nodes, u, du = solution.nodes, solution.u, solution.du
    mirrored = interpolate(solution, -nodes)
    defect = float(np.max(np.abs(u - mirrored)))
    right = nodes > 0.0
    return SymmetryReport1d(
        symmetry_defect=defect,
        endpoint_gap=float(abs(u[-1] - u[0])),
        min_value=float(u.min()),
        max_value=float(u.max()),
        argmax=float(nodes[int(np.argmax(u))]),
        monotone_decreasing_right=bool(np.all(du[right] < 0.0)),
        positive=bool(u.min() > 0.0),
    )


def verify_symmetry(
    problem: Bvp1dProblem,
    init_guess: float,
    tol: float = 1e-10,
    conclusion_tol: float = 1e-6,
    n_steps: int = MIN_STEPS,
    range_samples: int = 1001,
) -> SymmetryVerdict:
    """Solve and check the three conclusions that hold for nonnegative f:
    evenness (defect <= conclusion_tol), positivity, and u' < 0 on (0, R].

    The problem must carry ``claims_nonnegative=True``; the claim is
    spot-checked by sampling f on the solution's range, and a violation
    raises HypothesisViolationError rather than returning a verdict.
    """
    if not problem.claims_nonnegative:
        raise ValueError("verify_symmetry requires a problem with claims_nonnegative=True")
    solution = solve(problem, init_guess, tol=tol, n_steps=n_steps)
    lo, hi = float(solution.u.min()), float(solution.u.max())
    for t in np.linspace(lo, hi, range_samples):
        ft = problem.f(float(t))
        if ft < -1e-12:
            raise HypothesisViolationError(f"f({t:.6g}) = {ft:.6g} < 0 on the solution range [{lo:.6g}, {hi:.6g}]")
    report = diagnose(solution)
    even = report.symmetry_defect <= conclusion_tol
    verdict_ok = even and report.positive and report.monotone_decreasing_right
    return SymmetryVerdict(
        passed=bool(verdict_ok),
        even=bool(even),
        positive=report.positive,
        monotone=report.monotone_decreasing_right,
        symmetry_defect=report.symmetry_defect,
        tolerance=float(conclusion_tol),
        report=report,
        solution=solution,
    )
