"""Finite-difference oracle: validates the closed-form engine from pointwise
samples of phi alone.

Nothing here uses the closed-form derivatives to *compute* an approximation;
the Laplacian and the boundary normal derivative are rebuilt from central and
one-sided difference stencils so that residual audits cross-check the model
through an independent route.  Closed-form values enter only as references
for error measurement and for the audit pass threshold.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .counterexample import BallGeometry, CounterexampleModel, f_eval, laplacian_phi, phi, unit_directions
from .errors import EmptyDomainError, IndeterminateOrderError, StencilClearanceError

__all__ = [
    "StencilConfig",
    "ResidualReport",
    "fd_laplacian",
    "fd_normal_derivative",
    "sample_interior",
    "sample_boundary",
    "convergence_order",
    "residual_audit",
]

Field = Callable[[np.ndarray], float]

# Relative error floor below which order estimation refuses to report.
NOISE_FLOOR = 1e-13


@dataclass(frozen=True)
class StencilConfig:
    """Spacing and order of the difference stencils.

    ``richardson`` combines the h and h/2 estimates as
    (2**order * L(h/2) - L(h)) / (2**order - 1), cancelling the leading error
    term.
    """

    h: float
    order: int = 2
    richardson: bool = False

    def __post_init__(self):
        if not math.isfinite(self.h) or self.h <= 0.0:
            raise ValueError(f"stencil spacing must be positive, got {self.h!r}")
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order!r}")


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of a finite-difference residual audit of one model."""

    n: int
    R: float
    a: float
    beta: float
    h: float
    n_interior: int
    n_boundary: int
    max_pde_residual_fd: float
    max_robin_residual_fd: float
    observed_order: float | None
    pde_threshold: float
    robin_threshold: float
    passed: bool


def _check_clearance(x: np.ndarray, h: float, order: int, geom: BallGeometry | None) -> None:
    if geom is None:
        return
    limit = geom.R * (1.0 + 1e-12)
    reach = order // 2
    for axis in range(x.size):
        for k in range(1, reach + 1):
            for sign in (1.0, -1.0):
                pt = x.copy()
                pt[axis] += sign * k * h
                if float(np.linalg.norm(pt)) > limit:
                    raise StencilClearanceError(
                        f"stencil point x {'+' if sign > 0 else '-'} {k}h*e{axis} has |.| = "
                        f"{np.linalg.norm(pt):.6g} > R = {geom.R:.6g}"
                    )


def fd_laplacian(field: Field, x, cfg: StencilConfig, geom: BallGeometry | None = None) -> float:
    """Central-difference Laplacian of a scalar field at a point.

    Order 2 uses the 3-point stencil per axis, order 4 the 5-point one; the
    error is O(h**2) or O(h**4) for smooth fields.  When ``geom`` is given,
    every stencil point is required to stay inside the closed ball and a
    StencilClearanceError names the offending offset otherwise.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if cfg.richardson:
        plain = replace(cfg, richardson=False)
        fine = replace(plain, h=cfg.h / 2.0)
        weight = 2.0**cfg.order
        return (weight * fd_laplacian(field, x, fine, geom) - fd_laplacian(field, x, plain, geom)) / (weight - 1.0)
    _check_clearance(x, cfg.h, cfg.order, geom)
    h = cfg.h
    center = field(x)
    acc = 0.0
    for axis in range(x.size):
        e = np.zeros(x.size)
        e[axis] = h
        if cfg.order == 2:
            acc += field(x + e) - 2.0 * center + field(x - e)
        else:
            acc += (
                -field(x + 2.0 * e) + 16.0 * field(x + e) - 30.0 * center + 16.0 * field(x - e) - field(x - 2.0 * e)
            ) / 12.0
    return acc / (h * h)


def fd_normal_derivative(field: Field, x, cfg: StencilConfig) -> float:
    """One-sided second-order approximation of the outward normal derivative.

    Uses the 3-point inward stencil (3/2, -2, 1/2)/h along -nu at a boundary
    point x (nu = x/|x|); the inward ray keeps the stencil inside the ball as
    long as 2h stays below the ray's length budget 2|x|.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    nrm = float(np.linalg.norm(x))
    h = cfg.h
    if nrm == 0.0 or 2.0 * h >= 2.0 * nrm:
        raise StencilClearanceError(f"one-sided stencil of depth 2h = {2 * h:.6g} exceeds the inward budget {2 * nrm:.6g}")
    nu = x / nrm
    f0 = field(x)
    f1 = field(x - h * nu)
    f2 = field(x - 2.0 * h * nu)
    # difference-of-differences association: exact on constants at any h
    return (1.5 * (f0 - f1) - 0.5 * (f1 - f2)) / h


def sample_interior(geom: BallGeometry, count: int, margin: float, seed: int) -> np.ndarray:
    """Seeded quasi-uniform points with |x| <= R - margin, shape (count, n).

    Identical (geom, count, margin, seed) produce bit-identical output.  The
    caller is responsible for a margin covering its stencil reach.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if margin < 0.0:
        raise ValueError("margin must be nonnegative")
    if margin >= geom.R:
        raise EmptyDomainError(f"margin {margin:.6g} leaves no interior of the ball of radius {geom.R:.6g}")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, geom.n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = (geom.R - margin) * rng.random(count) ** (1.0 / geom.n)
    return dirs * radii[:, None]


def sample_boundary(geom: BallGeometry, count: int) -> np.ndarray:
    """Deterministic quasi-uniform points on the sphere |x| = R, shape (m, n).

    Equi-angular in 2D, Fibonacci sphere in 3D, the two endpoints in 1D
    (m = min(count, 2) there); no RNG is involved for n <= 3.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    return geom.R * unit_directions(geom.n, count)


def convergence_order(
    field: Field,
    x,
    h_coarse: float,
    reference: float,
    order: int = 2,
    geom: BallGeometry | None = None,
) -> float:
    """Observed order log2(|e(h)| / |e(h/2)|) against a closed-form reference.

    Raises IndeterminateOrderError instead of fabricating a number when either
    error sits at the relative roundoff floor.
    """
    e_coarse = abs(fd_laplacian(field, x, StencilConfig(h=h_coarse, order=order), geom) - reference)
    e_fine = abs(fd_laplacian(field, x, StencilConfig(h=h_coarse / 2.0, order=order), geom) - reference)
    floor = NOISE_FLOOR * max(1.0, abs(reference))
    if e_coarse <= floor or e_fine <= floor:
        raise IndeterminateOrderError(
            f"errors {e_coarse:.3g}, {e_fine:.3g} are at the noise floor {floor:.3g}; order is indeterminate"
        )
    return math.log2(e_coarse / e_fine)


def residual_audit(model: CounterexampleModel, count: int, cfg: StencilConfig, seed: int = 0) -> ResidualReport:
    """Finite-difference audit of -lap(phi) = f(phi) and the Robin condition.

    Samples ``count`` interior points with margin 3h and ``count`` boundary
    points (fewer in 1D), reduces residuals in a fixed input-determined order,
    and passes iff both maxima stay below C*h**2 with C = 100 * the scale of
    |lap(phi)| over the interior samples.
    """
    geom = model.geom
    beta = model.beta.beta
    margin = 3.0 * cfg.h
    pts = sample_interior(geom, count, margin, seed)
    bpts = sample_boundary(geom, count)

    def field(q: np.ndarray) -> float:
        return phi(model, q)

    max_pde = 0.0
    scale = 0.0
    for q in pts:
        lap_fd = fd_laplacian(field, q, cfg, geom)
        max_pde = max(max_pde, abs(-lap_fd - f_eval(model, phi(model, q))))
        scale = max(scale, abs(laplacian_phi(model, q)))

    max_robin = 0.0
    for b in bpts:
        max_robin = max(max_robin, abs(fd_normal_derivative(field, b, cfg) + beta * phi(model, b)))

    orders = []
    for q in pts[: min(5, len(pts))]:
        try:
            orders.append(convergence_order(field, q, cfg.h, laplacian_phi(model, q), cfg.order, geom))
        except IndeterminateOrderError:
            continue
    observed = statistics.median(orders) if orders else None

    threshold = 100.0 * scale * cfg.h * cfg.h
    return ResidualReport(
        n=geom.n,
        R=geom.R,
        a=geom.offset,
        beta=beta,
        h=cfg.h,
        n_interior=len(pts),
        n_boundary=len(bpts),
        max_pde_residual_fd=max_pde,
        max_robin_residual_fd=max_robin,
        observed_order=observed,
        pde_threshold=threshold,
        robin_threshold=threshold,
        passed=bool(max_pde <= threshold and max_robin <= threshold),
    )
