"""Refined interpolation between weighted discrete L^p norms."""
import math

import numpy as np

from dyadic_means import lp_interpolation as lp
from dyadic_means.lp_interpolation import ExponentTriple, WeightedVector

v = WeightedVector([1.0, 2.0, 3.0])

#%% norms and the interpolation weight
for p in (1, 2, 4, math.inf):
    print(f"||v||_{p} = {lp.lp_norm(v, p):.6f}")
tr = ExponentTriple(1.0, 2.0, 4.0)
print("nu =", tr.nu, " midpoint exponent =", tr.midpoint_exponent)

#%% refined Holder-type interpolation and its reverse
for N in (1, 3, 6):
    ref = lp.lp_refinement(v, tr, N)
    first, second = lp.lp_reverse(v, tr, N)
    print(f"N={N}  refinement {ref.margin:.3e}  reverse {first.margin:.3e} / {second.margin:.3e}")

#%% r = infinity works too
print(lp.lp_refinement(v, ExponentTriple(1.0, 2.0, math.inf), 4).verdict.value)

#%% log-convexity of t -> ||v||_{1/t} and t -> ||v||_t^t
print(lp.logconvexity_equivalence_check(v, np.linspace(0.2, 5, 40)).details["worst"])
