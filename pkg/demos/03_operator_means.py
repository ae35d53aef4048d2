"""Operator means of positive definite matrices under the Loewner order."""
import numpy as np

from dyadic_means import matrix_means as mm

rng = np.random.default_rng(7)
A, B = mm.random_spd(3, rng), mm.random_spd(3, rng)

#%% weighted means; the harmonic mean sits below the geometric one
G = mm.op_mean("geometric", A, B, 0.3)
H = mm.op_mean("harmonic", A, B, 0.3)
print("geometric mean eigenvalues:", G.eigenvalues)
print("H <= G margin:", mm.loewner_margin(H.data, G.data).margin)

#%% refined Young, arithmetic-harmonic and their reverse
for N in (1, 3, 6):
    y = mm.op_young_refinement(A, B, 0.3, N)
    ah = mm.op_arith_harm_refinement(A, B, 0.3, N)
    rv = mm.op_arith_harm_reverse(A, B, 0.3, N)
    print(f"N={N}  young {y.margin:.3e}  arith-harm {ah.margin:.3e}  reverse {rv.margin:.3e}")

#%% Kantorovich-type bound for the geometric-harmonic pair
k = mm.op_kantorovich_geom_harm(A, B, 0.4)
print("Kantorovich margin:", k.margin, " literal product gap:", k.details["literal_gap"])

#%% commuting diagonals reduce to scalar values
D = mm.op_young_refinement(np.diag([1.0, 4.0]), np.diag([4.0, 1.0]), 0.5, 1)
print("diagonal lhs:", np.diag(D.lhs), " rhs:", np.diag(D.rhs))
