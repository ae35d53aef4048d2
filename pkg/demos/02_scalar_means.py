"""Refined and reversed inequalities between weighted scalar means."""
from dyadic_means import scalar_means as sm
from dyadic_means.scalar_means import MeanKind, MeanPair

pair = MeanPair(1.0, 4.0)

#%% the means themselves
for kind in MeanKind:
    print(f"{kind.value:>10}: {sm.mean(kind, pair, 0.5):.6f}")
print("Kantorovich constant:", sm.kantorovich_constant(pair))

#%% Young's inequality refined: equality at the dyadic point 1/2
rep = sm.young_refinement(pair, 0.5, 1)
print("Young at 1/2:", rep.lhs, "<=", rep.rhs)

#%% closed forms and the generic engine agree
for name, fn in sm.STATEMENTS.items():
    rep = fn(pair, 0.3, 4)
    print(f"{name:>30}: margin {rep.margin:+.3e}  {rep.verdict.value}"
          f"  engine gap {rep.details.get('engine_gap', 0.0):.1e}")

#%% geometric vs harmonic: one level gives the Kantorovich factor
rep = sm.geom_harm_refinement(pair, 0.25, 1)
print("factor:", rep.details["kantorovich_factor"], "=", 1.5625 ** 0.25)
