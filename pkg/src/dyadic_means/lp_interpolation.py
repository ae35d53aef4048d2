"""
Weighted discrete L^p norms and refined interpolation between them.

``t -> ||v||_{1/t}`` is log-convex, so the log-convex refinements of the
engine apply on the reciprocal-exponent interval ``[1/r, 1/p]``.  ``r`` may
be infinite, in which case the interval starts at 0 and the left endpoint
value is the sup norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import engine
from .engine import DEFAULT_RTOL, CertificationReport, FunctionHandle, Shape, certify


@dataclass(frozen=True)
class WeightedVector:
    """Samples of a function on a finite measure space with point masses ``weights``."""

    values: np.ndarray
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        weights = (np.ones_like(values) if self.weights is None
                   else np.atleast_1d(np.asarray(self.weights, dtype=float)))
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a nonempty 1-d sequence")
        if weights.shape != values.shape:
            raise ValueError("values and weights differ in length")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(weights))):
            raise ValueError("values and weights must be finite")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.values.size

    @property
    def nonzero(self) -> bool:
        return bool(np.any(self.values != 0))

    @classmethod
    def from_json(cls, obj) -> "WeightedVector":
        """``{"values": [...], "weights": [...]}``; weights default to 1."""
        try:
            return cls(obj["values"], obj.get("weights"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed vector object: {exc}") from exc

    def to_json(self) -> dict:
        return {"values": self.values.tolist(), "weights": self.weights.tolist()}


def _reciprocal(p):
    return 0.0 if math.isinf(p) else 1.0 / p


def interpolation_nu(p: float, q: float, r: float) -> float:
    """``(1/q - 1/r) / (1/p - 1/r)``, so that ``1/q = nu/p + (1 - nu)/r``."""
    if not (0 < p < q < r) or math.isnan(r) or math.isinf(p) or math.isinf(q):
        raise ValueError(f"need 0 < p < q < r <= inf, got {p}, {q}, {r}")
    ir = _reciprocal(r)
    return (1.0 / q - ir) / (1.0 / p - ir)


@dataclass(frozen=True)
class ExponentTriple:
    p: float
    q: float
    r: float

    def __post_init__(self):
        interpolation_nu(self.p, self.q, self.r)

    @property
    def nu(self) -> float:
        return interpolation_nu(self.p, self.q, self.r)

    @property
    def midpoint_exponent(self) -> float:
        """``2 p r / (p + r)``, the exponent at the centre of ``[1/r, 1/p]``."""
        return 2.0 * self.p if math.isinf(self.r) else 2.0 * self.p * self.r / (self.p + self.r)


def lp_norm(v: WeightedVector, p: float) -> float:
    """``(sum_i w_i |v_i|^p)^(1/p)``; ``max |v_i|`` for ``p = inf``.

    The maximum is factored out before raising to ``p``.
    """
    if not p > 0:
        raise ValueError(f"exponent must be positive, got {p}")
    mags = np.abs(v.values)
    top = float(mags.max())
    if top == 0.0 or math.isinf(p):
        return top
    s = float(np.dot(v.weights, (mags / top) ** p))
    return top * s ** (1.0 / p)


def _norms_at_reciprocal(v: WeightedVector, t: np.ndarray) -> np.ndarray:
    """``||v||_{1/t}`` for an array ``t >= 0``; ``t = 0`` is the sup norm."""
    t = np.asarray(t, dtype=float)
    mags = np.abs(v.values)
    top = mags.max()
    if top == 0.0:
        return np.zeros_like(t)
    ratio = mags / top
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        expo = np.where(t > 0, 1.0 / np.where(t > 0, t, 1.0), np.inf)
        s = (ratio[None, :] ** expo.reshape(-1, 1)) @ v.weights
        out = top * s ** t.reshape(-1)
    out = np.where(t.reshape(-1) == 0, top, out)
    return out.reshape(t.shape)


def reciprocal_norm_handle(v: WeightedVector, a: float, b: float) -> FunctionHandle:
    """``t -> ||v||_{1/t}`` on ``[a, b]``, declared log-convex."""
    return FunctionHandle(lambda t: _norms_at_reciprocal(v, t), a, b, Shape.LOG_CONVEX,
                          name="lp-reciprocal")


def _setup(v: WeightedVector, triple: ExponentTriple):
    if not v.nonzero:
        raise ValueError("vector must have a nonzero entry")
    a, b = _reciprocal(triple.r), 1.0 / triple.p
    return reciprocal_norm_handle(v, a, b), triple.nu


def lp_refinement(v: WeightedVector, triple: ExponentTriple, N: int,
                  rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Refined interpolation
    ``||v||_q prod_j (||v||_{1/x_j} ||v||_{1/y_j} / ||v||_{1/z_j}^2)^{A_j} <= ||v||_p^nu ||v||_r^{1-nu}``.

    ``details['one_term']`` carries the margins of the chain
    ``||v||_q <= ||v||_r^{1-2nu} ||v||_m^{2nu} <= ||v||_p^nu ||v||_r^{1-nu}``
    (or its mirror for ``nu >= 1/2``) with ``m = 2pr/(p + r)``.
    """
    h, nu = _setup(v, triple)
    report = engine.log_refinement_margin(h, N, nu, rtol)
    nq, np_, nr = lp_norm(v, triple.q), lp_norm(v, triple.p), lp_norm(v, triple.r)
    nm = lp_norm(v, triple.midpoint_exponent)
    if nu <= 0.5:
        middle = nr ** (1.0 - 2.0 * nu) * nm ** (2.0 * nu)
    else:
        middle = np_ ** (2.0 * nu - 1.0) * nm ** (2.0 - 2.0 * nu)
    outer = np_ ** nu * nr ** (1.0 - nu)
    report = certify("lp-refinement", report.lhs, report.rhs, "<=", rtol, report.terms,
                     report.details)
    report.details["one_term"] = (certify("lp-one-term-lower", nq, middle, "<=", rtol),
                                  certify("lp-one-term-upper", middle, outer, "<=", rtol))
    report.details["norm_q"] = nq
    return report


def lp_reverse(v: WeightedVector, triple: ExponentTriple, N: int,
               rtol: float = DEFAULT_RTOL) -> tuple:
    """Reversed interpolation chain; returns ``(first_link, second_link)``.

    For ``nu <= 1/2`` (``2pr/(p+r) <= q``):
    ``||v||_q >= ||v||_m^{2-2nu} ||v||_p^{2nu-1} P >= ||v||_m^{2-2nu} ||v||_p^{2nu-1}``;
    for ``nu >= 1/2``:
    ``||v||_q >= ||v||_m^{2nu} ||v||_r^{1-2nu} P >= ||v||_m^{2nu} ||v||_r^{1-2nu}``,
    where ``P`` is the product of norm ratios at the shifted dyadic nodes.
    The first link is the engine's multiplicative reverse rearranged.
    """
    h, nu = _setup(v, triple)
    rev = engine.log_reverse_margin(h, N, nu, rtol)
    log_product = rev.details["log_rhs"] - ((1.0 - nu) * math.log(h.at(0.0))
                                            + nu * math.log(h.at(1.0)))
    nm = lp_norm(v, triple.midpoint_exponent)
    if nu <= 0.5:
        log_bound = (2.0 - 2.0 * nu) * math.log(nm) + (2.0 * nu - 1.0) * math.log(lp_norm(v, triple.p))
    else:
        log_bound = 2.0 * nu * math.log(nm) + (1.0 - 2.0 * nu) * math.log(lp_norm(v, triple.r))
    nq = lp_norm(v, triple.q)
    first = certify("lp-reverse", nq, math.exp(log_bound + log_product), ">=", rtol, rev.terms,
                    {"engine_log_margin": rev.details["log_margin"],
                     "log_margin": math.log(nq) - log_bound - log_product,
                     "shifted_nu": rev.details["shifted_nu"]})
    second = certify("lp-reverse-product", math.exp(log_bound + log_product),
                     math.exp(log_bound), ">=", rtol, details={"log_product": log_product})
    return first, second


def _log_norm_power(v: WeightedVector, t: np.ndarray) -> np.ndarray:
    """``log(sum_i w_i |v_i|^t)`` for ``t > 0`` via log-sum-exp."""
    mask = v.values != 0
    lm = np.log(np.abs(v.values[mask]))
    lw = np.log(v.weights[mask])
    z = lw[None, :] + np.outer(t, lm)
    zmax = z.max(axis=1, keepdims=True)
    return (zmax + np.log(np.exp(z - zmax).sum(axis=1, keepdims=True))).ravel()


def logconvexity_equivalence_check(v: WeightedVector, grid: Sequence[float],
                                   rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Midpoint log-convexity of ``t -> ||v||_{1/t}`` and ``t -> ||v||_t^t`` on a grid.

    For every pair ``s < t`` of grid points, ``L(s) + L(t) - 2 L((s+t)/2) >= 0``
    is checked for both logarithms ``L``.  The margin is the smallest such
    second difference over both functions; the tolerance is ``rtol`` times
    the largest ``|L|`` involved (at least 1).
    """
    if not v.nonzero:
        raise ValueError("vector must have a nonzero entry")
    t = np.unique(np.asarray(grid, dtype=float))
    if t.size < 2 or np.any(t <= 0) or not np.all(np.isfinite(t)):
        raise ValueError("grid needs at least two positive finite points")
    i, k = np.triu_indices(t.size, 1)
    s, u, mid = t[i], t[k], 0.5 * (t[i] + t[k])
    worst = {}
    scale = 1.0
    # log ||v||_{1/t} = t log S(1/t),  log ||v||_t^t = log S(t)
    fns = {
        "reciprocal-norm": lambda x: x * _log_norm_power(v, 1.0 / x),
        "norm-power": lambda x: _log_norm_power(v, x),
    }
    for name, L in fns.items():
        Ls, Lu, Lm = L(s), L(u), L(mid)
        second = Ls + Lu - 2.0 * Lm
        worst[name] = float(second.min())
        scale = max(scale, float(np.max(np.abs(np.concatenate([Ls, Lu, Lm])))))
    margin = min(worst.values())
    tol = rtol * scale
    verdict = engine.Verdict.HOLDS if margin >= -tol else engine.Verdict.VIOLATED
    return CertificationReport("lp-log-convexity", 0.0, margin, margin, tol, verdict,
                               details={"worst": worst})
