"""Closed-form engine for a non-radial solution family of the Robin-Poisson
problem on a ball.

With an interior offset center ``x0`` (``a = |x0| < R``), ``r = |x - x0|`` and
``alpha_sq = R**2 - a**2 > 0``, the family

    phi(x) = (r**2 + alpha_sq) ** (-beta*R)

solves ``-laplacian(phi) = f(phi)`` in the ball ``|x| < R`` together with the
Robin boundary condition ``d(phi)/d(nu) + beta*phi = 0`` on ``|x| = R``, where

    f(t) = c1 * t * (c2 * t**p + c3 * t**(2*p)),      p = 1 / (beta*R),
    c1 = 2*beta*R,  c2 = n - 2*(beta*R + 1),  c3 = 2*(beta*R + 1)*alpha_sq.

For ``a > 0`` the solution is radial about ``x0`` but not about the ball's
center, so the usual radial-symmetry expectation fails under Robin boundary
conditions even though ``f`` is locally Lipschitz.

This module derives the coefficients, evaluates ``phi`` and its derivatives in
closed form, measures the (analytically zero) interior and boundary residuals,
classifies the parameter region where ``f`` composed with ``phi`` is known to
be nonnegative, locates sign changes of that composition, and quantifies
non-radiality.  All operations are pure functions of immutable inputs and are
safe to call concurrently.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from .errors import DomainError, InvalidParameterError

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
]

# Points within this relative distance of the sphere are treated as boundary
# samples and projected radially before boundary evaluations.
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class BallGeometry:
    """Ball of radius ``R`` centered at the origin with an interior marker x0.

    ``x0`` is the center of radial symmetry of the solution family; it must
    lie strictly inside the ball.  Scalars are accepted for ``x0`` when
    ``n == 1``.
    """

    n: int
    R: float
    x0: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidParameterError("dimension", f"dimension must be an integer >= 1, got {self.n!r}")
        R = float(self.R)
        if not math.isfinite(R) or R <= 0.0:
            raise InvalidParameterError("radius", f"ball radius must be positive and finite, got {self.R!r}")
        x0 = np.atleast_1d(np.asarray(self.x0, dtype=float)).copy()
        if x0.shape != (self.n,):
            raise InvalidParameterError(
                "center-shape", f"x0 must be a vector of length n={self.n}, got shape {x0.shape}"
            )
        if not np.all(np.isfinite(x0)):
            raise InvalidParameterError("center-shape", "x0 must be finite")
        if float(np.linalg.norm(x0)) >= R:
            raise InvalidParameterError(
                "center-outside", f"|x0| = {np.linalg.norm(x0):.6g} must be strictly less than R = {R:.6g}"
            )
        x0.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "x0", x0)

    @property
    def offset(self) -> float:
        """Distance from the ball's center to x0 (the symbol ``a``)."""
        return float(np.linalg.norm(self.x0))

    @property
    def alpha_sq(self) -> float:
        """R**2 - |x0|**2, strictly positive for an interior x0."""
        return self.R * self.R - float(self.x0 @ self.x0)


@dataclass(frozen=True)
class RobinParameter:
    """Positive boundary parameter beta of d(u)/d(nu) + beta*u = 0."""

    beta: float

    def __post_init__(self):
        b = float(self.beta)
        if not math.isfinite(b) or b <= 0.0:
            raise InvalidParameterError("beta", f"beta must be positive and finite, got {self.beta!r}")
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class CounterexampleModel:
    """Derived coefficients of one (geometry, beta) instance of the family.

    The coefficients are deterministic functions of the inputs; re-deriving a
    model reproduces every field bit-exactly.  The normalization constant of
    ``phi`` is fixed to 1 because ``f`` is derived under that choice; exposing
    it would allow silently inconsistent (phi, f) pairs.
    """

    geom: BallGeometry
    beta: RobinParameter
    c1: float
    c2: float
    c3: float
    alpha_sq: float
    p: float

    @property
    def exponent(self) -> float:
        """The decay power beta*R in phi = (r**2 + alpha_sq) ** -(beta*R)."""
        return self.beta.beta * self.geom.R

    @property
    def r_max(self) -> float:
        """Largest distance from x0 realized on the closed ball: R + |x0|."""
        return self.geom.R + self.geom.offset


class NonnegativityClass(enum.Enum):
    """Classification of whether f(phi(x)) >= 0 is guaranteed on the ball.

    The guarantee is one-sided: GUARANTEED_NONNEGATIVE is sufficient, and the
    classifier never claims negativity above the threshold without a scan.
    In one dimension the composition changes sign for every beta > 0.
    """

    GUARANTEED_NONNEGATIVE = "guaranteed-nonnegative"
    NOT_GUARANTEED = "not-guaranteed"
    NEVER_NONNEGATIVE = "never-nonnegative"


@dataclass(frozen=True)
class SymmetryDiagnostics:
    """Quantified non-radiality of phi about the ball's center.

    ``max_asymmetry`` is the largest spread max(phi) - min(phi) observed over
    equi-distributed directions at any sampled radius; ``radial_variance`` is
    the worst per-radius mean-square deviation of phi from its angular mean.
    """

    max_asymmetry: float
    asymmetry_radius: float
    radial_variance: float
    is_radial: bool
    tolerance: float
    radii: np.ndarray
    spread_per_radius: np.ndarray
    variance_per_radius: np.ndarray


def derive_model(geom: BallGeometry, beta: RobinParameter | float) -> CounterexampleModel:
    """Derive the model coefficients for one geometry and Robin parameter.

    c1 = 2*beta*R, c2 = n - 2*(beta*R + 1), c3 = 2*(beta*R + 1)*alpha_sq and
    p = 1/(beta*R).  Invalid inputs raise InvalidParameterError with a
    distinct ``code`` per violated invariant.
    """
    if not isinstance(beta, RobinParameter):
        beta = RobinParameter(float(beta))
    br = beta.beta * geom.R
    alpha_sq = geom.alpha_sq
    return CounterexampleModel(
        geom=geom,
        beta=beta,
        c1=2.0 * br,
        c2=-2.0 * (br + 1.0) + geom.n,
        c3=2.0 * (br + 1.0) * alpha_sq,
        alpha_sq=alpha_sq,
        p=1.0 / br,
    )


def _as_point(model: CounterexampleModel, x) -> np.ndarray:
    pt = np.atleast_1d(np.asarray(x, dtype=float))
    if pt.shape != (model.geom.n,):
        raise DomainError(f"point must have shape ({model.geom.n},), got {pt.shape}")
    return pt


def _require_in_ball(model: CounterexampleModel, pt: np.ndarray) -> None:
    R = model.geom.R
    if float(np.linalg.norm(pt)) > R * (1.0 + BOUNDARY_TOL):
        raise DomainError(f"point with |x| = {np.linalg.norm(pt):.6g} lies outside the closed ball of radius {R:.6g}")


def _phi_from_r2(model: CounterexampleModel, r2):
    return (r2 + model.alpha_sq) ** (-model.exponent)


def phi(model: CounterexampleModel, x) -> float:
    """Evaluate phi at a point of the closed ball (small boundary tolerance).

    Strictly positive, and strictly decreasing in the distance r = |x - x0|.
    """
    pt = _as_point(model, x)
    _require_in_ball(model, pt)
    d = pt - model.geom.x0
    return float(_phi_from_r2(model, float(d @ d)))


def phi_radial(model: CounterexampleModel, r):
    """Radial profile phi(r) = (r**2 + alpha_sq) ** -(beta*R); r scalar or array.

    Accepts any r >= 0, including distances beyond R - |x0| that are realized
    only in some directions; used by the scan operations.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise DomainError("radius must be nonnegative")
    return _phi_from_r2(model, r * r)


def grad_phi(model: CounterexampleModel, x) -> np.ndarray:
    """Gradient of phi: phi'(r) * (x - x0)/r, with the exact zero vector at x0.

    Implemented through the smooth factor phi'(r)/r = -c1 * (r**2+alpha_sq)
    ** -(beta*R + 1), so no limit handling is needed at r = 0.
    """
    pt = _as_point(model, x)
    _require_in_ball(model, pt)
    d = pt - model.geom.x0
    A = float(d @ d) + model.alpha_sq
    return (-model.c1 * A ** (-model.exponent - 1.0)) * d


def laplacian_radial(model: CounterexampleModel, r):
    """Laplacian of phi as a function of r = |x - x0|; r scalar or array.

    Evaluates the bracket form
        -lap(phi) = c1 * A**-(beta*R + 1) * (c2 + c3 / A),   A = r**2 + alpha_sq,
    which is smooth at r = 0, unlike the -(n-1) phi'(r)/r composition.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise DomainError("radius must be nonnegative")
    A = r * r + model.alpha_sq
    return -model.c1 * A ** (-model.exponent - 1.0) * (model.c2 + model.c3 / A)


def laplacian_phi(model: CounterexampleModel, x) -> float:
    """Laplacian of phi at a point of the closed ball."""
    pt = _as_point(model, x)
    _require_in_ball(model, pt)
    d = pt - model.geom.x0
    return float(laplacian_radial(model, math.sqrt(float(d @ d))))


def f_eval(model: CounterexampleModel, t):
    """The nonlinearity f(t) = c1*t*(c2*t**p + c3*t**(2p)); t scalar or array.

    Defined for t >= 0 only (fractional powers); t < 0 raises DomainError.
    f(0) = 0 is the continuous limit, and each positive power of t makes the
    direct formula return it exactly.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise DomainError("f is defined on t >= 0 (the range of phi)")
    tp = t_arr**model.p
    out = model.c1 * t_arr * (model.c2 * tp + model.c3 * tp * tp)
    return out if t_arr.ndim else float(out)


def f_of_radius(model: CounterexampleModel, r):
    """f(phi(r)) as a function of the distance r from x0; r scalar or array."""
    return f_eval(model, phi_radial(model, r))


def pde_residual(model: CounterexampleModel, x) -> float:
    """Interior residual -lap(phi)(x) - f(phi(x)); analytically zero.

    Numerically bounded by floating-point cancellation, well below
    1e-10 * max(1, |lap(phi)|).  Requires a strictly interior point.
    """
    pt = _as_point(model, x)
    if float(np.linalg.norm(pt)) >= model.geom.R:
        raise DomainError("pde_residual requires a strictly interior point")
    return float(-laplacian_phi(model, pt) - f_eval(model, phi(model, pt)))


def robin_residual(model: CounterexampleModel, x) -> float:
    """Boundary residual grad(phi) . nu + beta*phi at a point of the sphere.

    The point must lie within BOUNDARY_TOL (relative) of |x| = R and is
    projected radially onto the sphere before evaluation; analytically the
    residual is zero for every boundary point.
    """
    pt = _as_point(model, x)
    R = model.geom.R
    nrm = float(np.linalg.norm(pt))
    if abs(nrm - R) > BOUNDARY_TOL * R or nrm == 0.0:
        raise DomainError(f"point with |x| = {nrm:.6g} is too far from the boundary |x| = {R:.6g}")
    proj = pt * (R / nrm)
    nu = proj / R
    return float(grad_phi(model, proj) @ nu + model.beta.beta * phi(model, proj))


def superharmonic_threshold(geom: BallGeometry) -> float:
    """Largest beta for which f(phi) >= 0 is guaranteed on the whole ball.

    (R - a) / (R*(R + a)) in dimension 2 and (n - 2)/(2R) in dimension >= 3;
    0.0 in dimension 1, where no positive beta qualifies.
    """
    if geom.n == 1:
        return 0.0
    if geom.n == 2:
        a = geom.offset
        return (geom.R - a) / (geom.R * (geom.R + a))
    return (geom.n - 2) / (2.0 * geom.R)


def check_superharmonic_constraint(geom: BallGeometry, beta: RobinParameter | float) -> NonnegativityClass:
    """Classify whether f(phi) >= 0 (hence -lap(phi) >= 0) is guaranteed.

    The threshold comparison is inclusive.  The classification is sufficient
    only: NOT_GUARANTEED makes no claim that the composition goes negative.
    """
    if not isinstance(beta, RobinParameter):
        beta = RobinParameter(float(beta))
    if geom.n == 1:
        return NonnegativityClass.NEVER_NONNEGATIVE
    if beta.beta <= superharmonic_threshold(geom):
        return NonnegativityClass.GUARANTEED_NONNEGATIVE
    return NonnegativityClass.NOT_GUARANTEED


def nonlinearity_min_scan(model: CounterexampleModel, samples: int) -> float:
    """Minimum of f(phi(r)) over r in [0, R + |x0|], the full range on the ball.

    Dense grid sampling followed by bounded local refinement of every grid
    basin; refinement can only lower the reported minimum, so the result is
    monotone under increasing sample counts.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    hi = model.r_max
    grid = np.linspace(0.0, hi, max(int(samples), 2))
    vals = f_of_radius(model, grid)
    best = float(vals.min())

    def objective(r: float) -> float:
        return float(f_of_radius(model, r))

    interior = np.flatnonzero((vals[1:-1] <= vals[:-2]) & (vals[1:-1] <= vals[2:])) + 1
    brackets = [(grid[i - 1], grid[i + 1]) for i in interior]
    brackets.append((grid[0], grid[1]))
    brackets.append((grid[-2], grid[-1]))
    for lo, up in brackets:
        res = minimize_scalar(objective, bounds=(lo, up), method="bounded", options={"xatol": 1e-12})
        best = min(best, float(res.fun))
    return best


def sign_change_scan(model: CounterexampleModel, grid_samples: int = 10_000, xtol: float = 1e-10) -> list[float]:
    """Radii in (0, R + |x0|) where f(phi(r)) changes sign, sorted ascending.

    Sign changes are bracketed on a dense grid and refined by bisection to
    absolute tolerance ``xtol``; returns an empty list when there is none.
    """
    hi = model.r_max
    grid = np.linspace(0.0, hi, int(grid_samples))
    vals = f_of_radius(model, grid)

    def g(r: float) -> float:
        return float(f_of_radius(model, r))

    roots: list[float] = []
    exact = np.flatnonzero(vals == 0.0)
    roots.extend(float(grid[i]) for i in exact if 0.0 < grid[i] < hi)
    flips = np.flatnonzero(vals[:-1] * vals[1:] < 0.0)
    for i in flips:
        roots.append(float(bisect(g, grid[i], grid[i + 1], xtol=xtol)))
    return sorted(roots)


def unit_directions(n: int, count: int) -> np.ndarray:
    """Deterministic quasi-uniform unit directions in dimension n, shape (m, n).

    Dimension 1 has exactly two directions, so m = min(count, 2) there; in 2D
    the directions are equi-angular, in 3D a Fibonacci sphere, and in higher
    dimensions seeded normalized Gaussian draws.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if n == 1:
        return np.array([[1.0], [-1.0]])[: min(count, 2)]
    if n == 2:
        angles = 2.0 * np.pi * np.arange(count) / count
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    if n == 3:
        k = np.arange(count)
        z = 1.0 - (2.0 * k + 1.0) / count
        theta = np.pi * (3.0 - np.sqrt(5.0)) * k
        s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        return np.stack([s * np.cos(theta), s * np.sin(theta), z], axis=1)
    rng = np.random.default_rng(0)
    dirs = rng.standard_normal((count, n))
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def asymmetry_metric(
    model: CounterexampleModel,
    radii,
    directions_per_radius: int,
    tolerance: float = 1e-12,
) -> SymmetryDiagnostics:
    """Measure how far phi is from being radial about the ball's center.

    For each radius rho the profile is evaluated on equi-distributed unit
    directions d through the law-of-cosines distance
    r**2 = rho**2 + |x0|**2 - 2*rho*(d . x0), which degrades gracefully to an
    exactly direction-independent value when x0 = 0 (max_asymmetry == 0.0
    exactly in that case).
    """
    if directions_per_radius < 2:
        raise ValueError("directions_per_radius must be >= 2")
    rho_arr = np.atleast_1d(np.asarray(radii, dtype=float))
    if rho_arr.size == 0:
        raise ValueError("radii must be non-empty")
    R = model.geom.R
    if np.any(rho_arr < 0.0) or np.any(rho_arr > R * (1.0 + BOUNDARY_TOL)):
        raise DomainError("all radii must lie in [0, R]")

    dirs = unit_directions(model.geom.n, directions_per_radius)
    proj = dirs @ model.geom.x0
    a2 = float(model.geom.x0 @ model.geom.x0)
    spreads = np.empty(rho_arr.size)
    variances = np.empty(rho_arr.size)
    for i, rho in enumerate(rho_arr):
        r2 = np.maximum(rho * rho + a2 - 2.0 * rho * proj, 0.0)
        vals = _phi_from_r2(model, r2)
        spreads[i] = float(vals.max() - vals.min())
        variances[i] = float(np.mean((vals - vals.mean()) ** 2))
    worst = int(np.argmax(spreads))
    max_asym = float(spreads[worst])
    return SymmetryDiagnostics(
        max_asymmetry=max_asym,
        asymmetry_radius=float(rho_arr[worst]),
        radial_variance=float(variances.max()),
        is_radial=bool(max_asym <= tolerance),
        tolerance=float(tolerance),
        radii=rho_arr,
        spread_per_radius=spreads,
        variance_per_radius=variances,
    )
