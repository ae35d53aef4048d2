"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line that is printed in the terminal summary.
"""
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE, convex_family, log_convex_family, non_convex_family, \
    unconstrained_family
from dyadic_means import engine
from dyadic_means import lp_interpolation as lp
from dyadic_means import matrix_means as mm
from dyadic_means import scalar_means as sm
from dyadic_means.instances import generate_instance, random_triple
from dyadic_means.lp_interpolation import ExponentTriple, WeightedVector

NUS = (0.1, 0.25, 0.5, 0.7, 0.9)


def record(number, title, ok, detail):
    ACCEPTANCE.append((number, title, bool(ok), detail))
    assert ok, f"criterion {number} ({title}): {detail}"


def _scale(*arrays):
    return np.maximum.reduce([np.abs(a) for a in arrays] + [np.ones_like(arrays[0])])


def test_remainder_identity_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    families = (convex_family, log_convex_family, unconstrained_family)
    nu = np.linspace(0.0, 1.0, 1024)
    worst = 0.0
    for i in range(200):
        f = families[i % 3](rng)
        fine = np.abs(f.at(np.linspace(0.0, 1.0, 4097)))
        scale = max(float(fine.max()), 1.0)
        sec = engine.secant(f, nu)
        sums = engine.refinement_sums(f, 20, nu)
        for N in range(1, 21):
            resid = sec - sums[N - 1] - engine.remainder_identity(f, N, nu)
            worst = max(worst, float(np.max(np.abs(resid))) / scale)
    elapsed = time.perf_counter() - start
    record(1, "remainder identity", worst <= 1e-12 and elapsed < 10.0,
           f"max scaled residual {worst:.2e} (<= 1e-12), {elapsed:.1f} s (< 10 s)")


def test_refined_secant_suite():
    rng = np.random.default_rng(202)
    worst_margin, worst_monotone, worst_dyadic, api_gap = 0.0, 0.0, 0.0, 0.0
    for i in range(100):
        f = convex_family(rng)
        nu = rng.uniform(0.0, 1.0, 257)
        fv, sec = f.at(nu), engine.secant(f, nu)
        prev = None
        for N in range(1, 11):
            lhs = fv + engine.refinement_sum(f, N, nu)
            margin = sec - lhs
            rel = margin / _scale(lhs, sec)
            worst_margin = min(worst_margin, float(rel.min()))
            if prev is not None:
                worst_monotone = max(worst_monotone, float(np.max((margin - prev) / _scale(lhs, sec))))
            prev = margin
            dy = np.arange(2 ** N + 1) / 2 ** N
            dm = engine.secant(f, dy) - f.at(dy) - engine.refinement_sum(f, N, dy)
            worst_dyadic = max(worst_dyadic, float(np.max(np.abs(dm) / _scale(f.at(dy)))))
        # the certified report agrees with the vectorised margin
        for k in range(3):
            rep = engine.refined_secant_margin(f, 10, float(nu[k]))
            api_gap = max(api_gap, abs(rep.margin - float(margin[k])))
    ok = worst_margin >= -1e-10 and worst_monotone <= 1e-10 and worst_dyadic <= 1e-12 \
        and api_gap <= 1e-12
    record(2, "refined secant", ok,
           f"min rel margin {worst_margin:.2e}, max rel increase in N {worst_monotone:.2e}, "
           f"max dyadic margin {worst_dyadic:.2e}, report vs vector gap {api_gap:.1e}")


def test_convergence_rate():
    f = engine.FunctionHandle(np.exp, 0.0, 1.0, engine.Shape.LOG_CONVEX)
    prof = dict(engine.interpolant_gap_profile(f, 10, 2049))
    bound_ok = all(prof[N] <= 4.0 ** -N * math.e / 8 for N in range(1, 11))
    ratios = [prof[N + 1] / prof[N] for N in range(3, 10)]
    ratio_ok = all(0.2 <= r <= 0.3 for r in ratios)
    record(3, "convergence rate", bound_ok and ratio_ok,
           f"max gap/bound {max(prof[N] / (4.0 ** -N * math.e / 8) for N in prof):.3f}, "
           f"ratios {min(ratios):.4f}..{max(ratios):.4f}")


def test_reverse_suites():
    rng = np.random.default_rng(404)
    worst, worst_mid = 0.0, 0.0

    def rel(rep):
        return rep.margin / max(abs(rep.lhs), abs(rep.rhs), 1.0)

    for i in range(100):
        f = convex_family(rng)
        g = log_convex_family(rng)
        for N in (1, 3, 6, 10):
            for nu in rng.uniform(0, 1, 5):
                worst = min(worst, rel(engine.reverse_margin(f, N, nu)))
                for fn in (engine.log_reverse_margin, engine.squared_reverse_margin):
                    worst = min(worst, rel(fn(g, N, nu)))
            worst_mid = max(worst_mid, abs(rel(engine.reverse_margin(f, N, 0.5))),
                            abs(rel(engine.reverse_margin(g, N, 0.5))))
    for i in range(300):
        inst = generate_instance("scalar", 1, 404, i)
        N = 1 + i % 8
        for name in ("young-reverse", "arith-harm-reverse", "squared-geometric-reverse",
                     "squared-harmonic-reverse"):
            worst = min(worst, rel(sm.STATEMENTS[name](inst.data["pair"], inst.nu, N)))
        for fn in (sm.young_reverse, sm.arith_harm_reverse):
            worst_mid = max(worst_mid, abs(rel(fn(inst.data["pair"], 0.5, N))))
        worst_mid = max(worst_mid, abs(rel(sm.squared_reverses(inst.data["pair"], 0.5, N))))
    record(4, "reverse inequalities", worst >= -1e-10 and worst_mid <= 1e-12,
           f"min rel margin {worst:.2e}, max |margin| at nu=1/2 {worst_mid:.2e}")


def test_scalar_closed_forms():
    worst = 0.0
    for i in range(1000):
        inst = generate_instance("scalar", 1, 505, i)
        N = 1 + i % 8
        for name, fn in sm.STATEMENTS.items():
            rep = fn(inst.data["pair"], inst.nu, N)
            if "engine_gap" in rep.details:
                worst = max(worst, rep.details["engine_gap"] / max(abs(rep.lhs), abs(rep.rhs), 1.0))
    y = sm.young_refinement(sm.MeanPair(1.0, 4.0), 0.5, 1)
    exact = abs(y.lhs - 2.5) <= 1e-15 and abs(y.rhs - 2.5) <= 1e-15
    record(5, "scalar closed forms vs engine", worst <= 1e-12 and exact,
           f"max rel gap {worst:.2e} over 1000 tuples x 9 statements; "
           f"Young(1,4,1/2,1) lhs={y.lhs!r} rhs={y.rhs!r}")


def test_convexity_witness():
    found, false_alarms = 0, 0
    for i in range(20):
        f = non_convex_family(i)
        if engine.convexity_witness(f, engine.random_witness_samples(
                f, 10_000, np.random.default_rng(600 + i))) is not None:
            found += 1
    rng = np.random.default_rng(606)
    for i in range(20):
        f = convex_family(rng)
        if engine.convexity_witness(f, engine.random_witness_samples(f, 10_000, rng)) is not None:
            false_alarms += 1
    record(6, "convexity witness", found == 20 and false_alarms == 0,
           f"non-convex detected {found}/20, convex flagged {false_alarms}/20")


def test_operator_suite():
    start = time.perf_counter()
    worst, count = 0.0, 0
    for dim in (2, 3, 4, 8):
        for i in range(100):
            inst = generate_instance("matrix", dim, 707, i)
            A = mm.as_positive(inst.data["A"])
            B = mm.as_positive(inst.data["B"])
            for nu in NUS:
                reps = [mm.op_kantorovich_geom_harm(A, B, nu)]
                for N in range(1, 7):
                    reps += [mm.op_young_refinement(A, B, nu, N),
                             mm.op_arith_harm_refinement(A, B, nu, N),
                             mm.op_arith_harm_reverse(A, B, nu, N)]
                for rep in reps:
                    scale = max(rep.tolerance / mm.LOEWNER_RTOL, 1.0)
                    worst = min(worst, rep.margin / scale)
                    count += 1
    elapsed = time.perf_counter() - start

    rng = np.random.default_rng(708)
    diag_gap = 0.0
    for i in range(20):
        a, b = 10 ** rng.uniform(-2, 2, 4), 10 ** rng.uniform(-2, 2, 4)
        A, B = np.diag(a), np.diag(b)
        pairs = [sm.MeanPair(float(x), float(y)) for x, y in zip(a, b)]
        for nu in NUS:
            for N in (1, 3, 6):
                for op, scalar in ((mm.op_young_refinement(A, B, nu, N), sm.young_refinement),
                                   (mm.op_arith_harm_refinement(A, B, nu, N),
                                    sm.arith_harm_refinement),
                                   (mm.op_arith_harm_reverse(A, B, nu, N),
                                    sm.arith_harm_reverse)):
                    for k, p in enumerate(pairs):
                        rep = scalar(p, nu, N)
                        small, big = (rep.lhs, rep.rhs) if rep.sense == "<=" else (rep.rhs, rep.lhs)
                        diag_gap = max(diag_gap, abs(op.lhs[k, k] - small) / max(abs(small), 1),
                                       abs(op.rhs[k, k] - big) / max(abs(big), 1))
            kop = mm.op_kantorovich_geom_harm(A, B, nu)
            for k, p in enumerate(pairs):
                rep = sm.geom_harm_refinement(p, nu, 1)
                diag_gap = max(diag_gap, abs(kop.lhs[k, k] - rep.lhs) / max(rep.lhs, 1),
                               abs(kop.rhs[k, k] - rep.rhs) / max(rep.rhs, 1))
    ok = worst >= -1e-9 and diag_gap <= 1e-10 and elapsed < 60.0
    record(7, "operator suite", ok,
           f"{count} comparisons, min margin/lambda_max {worst:.2e}, "
           f"diagonal reduction gap {diag_gap:.2e}, {elapsed:.1f} s (< 60 s)")


def test_heinz_suite():
    worst, worst_log = 0.0, math.inf
    for i in range(50):
        inst = generate_instance("matrix", 4, 808, i)
        A, B, X = inst.data["A"], inst.data["B"], inst.data["X"]
        for nu in NUS:
            for N in (1, 3, 6):
                reps = [mm.heinz_refinement(A, B, X, nu, N, norm, rtol=1e-9)
                        for norm in mm.NormKind]
                reps.append(mm.heinz_squared_refinement(A, B, X, nu, N, rtol=1e-9))
                for rep in reps:
                    worst = min(worst, rep.margin / max(abs(rep.lhs), abs(rep.rhs), 1.0))
        logc = mm.heinz_logconvexity_check(A, B, X, 33, rtol=1e-9)
        worst_log = min(worst_log, logc.details["min_relative_margin"])
    record(8, "Heinz suite", worst >= -1e-9 and worst_log >= -1e-9,
           f"min rel margin {worst:.2e} (refinement in 3 norms, squared), "
           f"min log-convexity rel margin {worst_log:.2e}")


def test_lp_suite():
    rng = np.random.default_rng(909)
    worst, infinite, logc_ok = 0.0, 0, True
    grid = np.linspace(0.1, 6.0, 33)
    for i in range(200):
        n = 1 + i % 64
        v = WeightedVector(rng.uniform(-10, 10, n), 10 ** rng.uniform(-1, 1, n))
        tr = random_triple(rng)
        if i % 4 == 0:
            tr = ExponentTriple(tr.p, tr.q, math.inf)
        infinite += math.isinf(tr.r)
        for N in (1, 2, 4, 8):
            ref = lp.lp_refinement(v, tr, N)
            for rep in (ref, *ref.details["one_term"], *lp.lp_reverse(v, tr, N)):
                worst = min(worst, rep.margin / max(abs(rep.lhs), abs(rep.rhs), 1.0))
        logc_ok &= lp.logconvexity_equivalence_check(v, grid).holds
    const_worst = 0.0
    for n in (1, 2, 7, 64):
        v = WeightedVector(np.full(n, 3.7), np.full(n, 0.6))
        for tr in (ExponentTriple(1, 2, 5), ExponentTriple(0.7, 1.1, math.inf)):
            for N in (1, 5):
                for rep in (lp.lp_refinement(v, tr, N), *lp.lp_reverse(v, tr, N)):
                    const_worst = max(const_worst, abs(rep.margin) / rep.rhs)
    ok = worst >= -1e-10 and const_worst <= 1e-14 and logc_ok and infinite >= 50
    record(9, "L^p suite", ok,
           f"min rel margin {worst:.2e} ({infinite} with r = inf), "
           f"constant-vector gap {const_worst:.2e}, log-convexity all pass: {logc_ok}")


GOLDEN_CONFIGS = [
    ["refine", "--fn", "exp", "--a", "0", "--b", "1", "--nu", "0.3", "--N", "5"],
    ["matrix", "--check", "all", "--dim", "3", "--trials", "5", "--seed", "7"],
    ["lp", "--trials", "10", "--seed", "11", "--N", "6"],
]


def _cli(args):
    env = dict(os.environ)
    env.pop("DYADIC_TOL", None)
    return subprocess.run([sys.executable, "-m", "dyadic_means", *args], capture_output=True,
                          env=env, timeout=120)


def test_cli_determinism_and_exit_codes():
    identical = []
    for args in GOLDEN_CONFIGS:
        a, b = _cli(args + ["--no-timestamp"]), _cli(args + ["--no-timestamp"])
        ta, tb = _cli(args), _cli(args)
        same_body = ta.stdout.split(b"\n", 1)[1] == tb.stdout.split(b"\n", 1)[1] == a.stdout
        identical.append(a.stdout == b.stdout and a.returncode == b.returncode == 0 and same_body)
    codes = (_cli(GOLDEN_CONFIGS[0] + ["--no-timestamp"]).returncode,
             _cli(GOLDEN_CONFIGS[2] + ["--inject-false"]).returncode,
             _cli(["refine", "--fn", "unknown"]).returncode,
             _cli(["matrix", "--dim", "zero"]).returncode)
    ok = all(identical) and codes == (0, 1, 2, 2)
    record(10, "CLI determinism", ok,
           f"byte-identical {sum(identical)}/3, exit codes (hold, violated, usage, usage) = {codes}")
