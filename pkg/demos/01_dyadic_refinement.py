"""Dyadic refinement of the secant inequality for a convex function.

Run with ``python3 demos/01_dyadic_refinement.py``.
"""
import numpy as np

from dyadic_means import engine
from dyadic_means.engine import FunctionHandle, Shape

# exp on [0, 1], declared log-convex (hence convex)
f = FunctionHandle(np.exp, 0.0, 1.0, Shape.LOG_CONVEX, name="exp")

#%% coefficients: distance from 2^(j-1) nu to the nearest integer
for j in range(1, 6):
    c = engine.coefficients(j, 0.3)
    print(f"j={j}  k={c.k}  r={c.r}  A_j={c.A:.4f}")

#%% each level tightens the secant bound
for N in (1, 2, 4, 8):
    rep = engine.refined_secant_margin(f, N, 0.3)
    print(f"N={N}  lhs={rep.lhs:.10f}  rhs={rep.rhs:.10f}  margin={rep.margin:.3e}")

#%% what is left over is the piecewise-linear interpolant on the mesh 2^-N
nu = 0.3
for N in (3, 6):
    left = engine.secant(f, nu) - engine.refinement_sum(f, N, nu)
    print(f"N={N}  secant - sum = {left:.15f}  interpolant = {engine.remainder_identity(f, N, nu):.15f}")

#%% at dyadic points the refinement is exact
print("margin at nu = 3/8, N = 3:", engine.refined_secant_margin(f, 3, 0.375).margin)

#%% the gap shrinks by about a factor 4 per level
prof = engine.interpolant_gap_profile(f, 8, 1025)
for (n0, g0), (n1, g1) in zip(prof, prof[1:]):
    print(f"N={n1}  sup_gap={g1:.3e}  ratio={g1 / g0:.4f}")

#%% reverse inequality; at nu = 1/2 the margin is zero for every function
print("reverse margin nu=0.2:", engine.reverse_margin(f, 3, 0.2).margin)
print("reverse margin nu=0.5:", engine.reverse_margin(f, 3, 0.5).margin)

#%% the one-term reverse fails somewhere for a non-convex function
g = FunctionHandle(np.sin, 0.0, 3.0, name="sin")
samples = engine.random_witness_samples(g, 2000, np.random.default_rng(0))
print("witness for sin on [0, 3]:", engine.convexity_witness(g, samples))
