"""Heinz functionals nu -> |||A^nu X B^(1-nu) + A^(1-nu) X B^nu|||."""
import numpy as np

from dyadic_means import matrix_means as mm
from dyadic_means.matrix_means import NormKind

rng = np.random.default_rng(3)
A, B = mm.random_spd(4, rng), mm.random_spd(4, rng)
X = rng.standard_normal((4, 4))

#%% symmetric about 1/2 and smallest there
for nu in np.linspace(0, 1, 5):
    print(f"nu={nu:.2f}  f={mm.heinz_functional(A, B, X, nu):.6f}")

#%% refinement and reverse in three unitarily invariant norms
for norm in NormKind:
    rep = mm.heinz_refinement(A, B, X, 0.3, 4, norm)
    print(f"{norm.value:>9}: refinement {rep.margin:.3e}  reverse {rep.details['reverse'].margin:.3e}")

#%% log-convexity on a 33-point midpoint grid and the squared refinement
print("log-convexity:", mm.heinz_logconvexity_check(A, B, X, 33).verdict.value)
print("squared refinement margin:", mm.heinz_squared_refinement(A, B, X, 0.3, 3).margin)
