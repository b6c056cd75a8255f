"""Exception types shared across the package."""

from __future__ import annotations


class InvalidParameterError(ValueError):
    """A constructor argument violates a domain invariant.

    ``code`` is a stable, machine-readable tag, one per invariant:
    ``"radius"``, ``"dimension"``, ``"center-shape"``, ``"center-outside"``,
    ``"beta"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class DomainError(ValueError):
    """A query point lies outside the domain of the requested quantity."""


class StencilClearanceError(ValueError):
    """A finite-difference stencil point would leave the closed ball."""


class EmptyDomainError(ValueError):
    """The requested sampling region is empty."""


class IndeterminateOrderError(ArithmeticError):
    """Convergence-order estimation refused: errors sit at the roundoff floor.

    Raised instead of reporting a meaningless log-ratio of rounding noise.
    """


class NoConvergenceError(RuntimeError):
    """Iteration budget exhausted before the residual tolerance was met."""

    def __init__(self, message: str, last_residual: float):
        super().__init__(message)
        self.last_residual = last_residual


class DivergenceError(RuntimeError):
    """The integrated state blew up (|u| beyond the divergence guard)."""


class HypothesisViolationError(ValueError):
    """A caller-asserted structural hypothesis fails on the computed range."""
