"""Walkthrough: where is the nonlinearity nonnegative along the solution?

For small beta the composition f(phi) stays nonnegative on the whole ball
(so phi is superharmonic there); the guarantee threshold is
(R - a)/(R (R + a)) in 2D and (n - 2)/(2R) for n >= 3.  In 1D no positive
beta qualifies: f(phi) changes sign for every beta.

Run:  python demos/nonnegativity_region.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from robinball import (
    BallGeometry,
    NonnegativityClass,
    check_superharmonic_constraint,
    derive_model,
    nonlinearity_min_scan,
    sign_change_scan,
    superharmonic_threshold,
)

R = 1.0
a_values = np.linspace(0.1, 0.9, 9)
beta_values = np.linspace(0.05, 1.0, 20)

print("n = 2: '#' = guaranteed nonnegative, '.' = not guaranteed (beta across, a down)")
print("        " + " ".join(f"{b:4.2f}" for b in beta_values))
for a in a_values:
    geom = BallGeometry(n=2, R=R, x0=np.array([a, 0.0]))
    cells = []
    for beta in beta_values:
        cls = check_superharmonic_constraint(geom, float(beta))
        cells.append("  # " if cls is NonnegativityClass.GUARANTEED_NONNEGATIVE else "  . ")
    print(f"a={a:4.2f} " + " ".join(cells) + f"   threshold {superharmonic_threshold(geom):.3f}")
print()

print("soundness spot check: minimum of f(phi) on guaranteed cells is never negative")
worst = np.inf
for a in a_values:
    geom = BallGeometry(n=2, R=R, x0=np.array([a, 0.0]))
    for beta in beta_values:
        if beta <= superharmonic_threshold(geom):
            worst = min(worst, nonlinearity_min_scan(derive_model(geom, float(beta)), 4000))
print(f"  worst guaranteed-cell minimum over the grid: {worst:.3e}")
print()

print("n = 3: the threshold (n-2)/(2R) = 0.5 ignores the offset entirely")
for a in (0.1, 0.5, 0.9):
    geom = BallGeometry(n=3, R=R, x0=np.array([a, 0.0, 0.0]))
    print(f"  a = {a}: threshold = {superharmonic_threshold(geom)}")
print()

print("n = 1: sign change for every beta (crossing radius of f(phi), a = 0.5)")
for beta in (0.1, 0.5, 1.0, 2.0, 8.0):
    geom = BallGeometry(n=1, R=R, x0=np.array([0.5]))
    model = derive_model(geom, beta)
    roots = sign_change_scan(model)
    min_f = nonlinearity_min_scan(model, 4000)
    print(f"  beta = {beta:4.1f}: crossings at {[round(r, 6) for r in roots]}, min f(phi) = {min_f:.4f}")
