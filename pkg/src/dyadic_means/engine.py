"""
Dyadic refinement engine for the secant gap of a real function.

For a function ``f`` on ``[a, b]`` and a parameter ``nu`` in ``[0, 1]`` the
secant gap ``(1 - nu) f(a) + nu f(b) - f((1 - nu) a + nu b)`` is split into
nonnegative pieces ``A_j(nu) * Delta_j f(nu; a, b)``, one for every dyadic
level ``j``.  Truncating after ``N`` levels gives refined convexity
inequalities; the truncation error is exactly the piecewise-linear
interpolation error of ``f`` on the mesh ``2**-N``.

Everything here works on numpy arrays of ``nu`` where it matters for speed;
the public scalar entry points wrap those kernels and return small frozen
records.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

MAX_LEVEL = 52
DEFAULT_RTOL = 1e-10


class ShapeError(ValueError):
    """A statement was applied to a function of the wrong declared shape."""


class Shape(enum.Enum):
    CONVEX = "convex"
    LOG_CONVEX = "log-convex"
    UNCONSTRAINED = "unconstrained"

    @property
    def is_convex(self) -> bool:
        # log-convex functions are convex
        return self is not Shape.UNCONSTRAINED


class Verdict(enum.Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    DEGENERATE = "Degenerate"


class FunctionHandle:
    """Real function on a closed interval, extended by zero outside it.

    Parameters
    ----------
    evaluator : callable
        Maps a float (or, if ``vectorized``, a float array) to values.
    a, b : float
        Domain endpoints, ``a < b``.
    shape : Shape
        Declared shape; statements that presume convexity check it.
    vectorized : bool
        Whether ``evaluator`` accepts numpy arrays.
    name : str
        Label used in reports.
    """

    def __init__(
        self,
        evaluator: Callable,
        a: float = 0.0,
        b: float = 1.0,
        shape: Shape = Shape.UNCONSTRAINED,
        vectorized: bool = True,
        name: str = "",
    ):
        a, b = float(a), float(b)
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"invalid domain [{a}, {b}]")
        self.evaluator = evaluator
        self.a = a
        self.b = b
        self.shape = Shape(shape)
        self.vectorized = vectorized
        self.name = name

    def __repr__(self):
        return (f"FunctionHandle({self.name or self.evaluator!r}, "
                f"[{self.a}, {self.b}], {self.shape.value})")

    def _raw(self, x: np.ndarray) -> np.ndarray:
        if x.size == 0:
            return np.zeros(0)
        if self.vectorized:
            return np.asarray(self.evaluator(x), dtype=float).reshape(x.shape)
        return np.array([float(self.evaluator(float(s))) for s in x.ravel()]).reshape(x.shape)

    def __call__(self, x):
        """Evaluate at ambient points; points outside ``[a, b]`` give 0."""
        arr = np.asarray(x, dtype=float)
        flat = arr.reshape(-1)
        out = np.zeros(flat.shape)
        inside = (flat >= self.a) & (flat <= self.b)
        out[inside] = self._raw(flat[inside])
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    def point(self, t):
        """Ambient coordinate ``(1 - t) a + t b`` of the parameter ``t``."""
        t = np.asarray(t, dtype=float)
        return (1.0 - t) * self.a + t * self.b

    def at(self, t):
        """Evaluate at parameter ``t``; ``t`` outside ``[0, 1]`` gives 0.

        The in-domain test is done on the parameter rather than on the
        ambient point so that rounding in the node map never pushes an
        endpoint out of the domain.
        """
        arr = np.asarray(t, dtype=float)
        flat = arr.reshape(-1)
        out = np.zeros(flat.shape)
        inside = (flat >= 0.0) & (flat <= 1.0)
        x = np.clip(self.point(flat[inside]), self.a, self.b)
        out[inside] = self._raw(x)
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    def on(self, c: float, d: float) -> "FunctionHandle":
        """The same function restricted to the sub-interval ``[c, d]``."""
        span = self.b - self.a
        if c < self.a - 1e-12 * span or d > self.b + 1e-12 * span:
            raise ValueError(f"[{c}, {d}] is not inside [{self.a}, {self.b}]")
        return FunctionHandle(self.evaluator, c, d, self.shape, self.vectorized, self.name)

    def squared(self) -> "FunctionHandle":
        """``f**2``; convex whenever ``f`` is log-convex."""
        shape = Shape.LOG_CONVEX if self.shape is Shape.LOG_CONVEX else Shape.UNCONSTRAINED
        ev, vec = self.evaluator, self.vectorized

        def sq(x):
            v = np.asarray(ev(x), dtype=float) if vec else float(ev(x))
            return v * v

        return FunctionHandle(sq, self.a, self.b, shape, vec, f"({self.name})^2")

    def log(self) -> "FunctionHandle":
        """``log f``; convex whenever ``f`` is log-convex."""
        shape = Shape.CONVEX if self.shape is Shape.LOG_CONVEX else Shape.UNCONSTRAINED
        ev, vec = self.evaluator, self.vectorized

        def lg(x):
            v = np.asarray(ev(x), dtype=float) if vec else float(ev(x))
            if np.any(v <= 0):
                raise ValueError("non-positive function value encountered")
            return np.log(v)

        return FunctionHandle(lg, self.a, self.b, shape, vec, f"log({self.name})")


@dataclass(frozen=True)
class DyadicCoefficients:
    j: int
    nu: float
    k: int
    r: int
    A: float


@dataclass(frozen=True)
class RefinementTerm:
    j: int
    alpha: float
    beta: float
    gamma: float
    x_node: float
    y_node: float
    z_node: float
    delta: float
    weight: float
    contribution: float


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of checking one inequality at one instance.

    ``margin`` is signed so that a positive value means the inequality is
    satisfied, whatever its direction (``sense`` records which side should
    be the smaller one).  ``tolerance`` is absolute.
    """

    statement_id: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    verdict: Verdict
    sense: str = "<="
    terms: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def certify(statement_id, lhs, rhs, sense="<=", rtol=DEFAULT_RTOL, terms=(),
            details=None, margin=None) -> CertificationReport:
    """Build a report for ``lhs <= rhs`` (or ``lhs >= rhs`` if ``sense='>='``).

    The tolerance is ``rtol * max(|lhs|, |rhs|, 1)``.  ``margin`` may be
    supplied when it was computed more accurately than ``rhs - lhs``.
    """
    lhs, rhs = float(lhs), float(rhs)
    if margin is None:
        margin = rhs - lhs if sense == "<=" else lhs - rhs
    margin = float(margin)
    scale = max(abs(lhs), abs(rhs), 1.0) if math.isfinite(lhs) and math.isfinite(rhs) else 1.0
    tol = rtol * scale
    if not math.isfinite(margin):
        verdict = Verdict.DEGENERATE
    elif margin >= -tol:
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.VIOLATED
    return CertificationReport(statement_id, lhs, rhs, margin, tol, verdict, sense,
                               tuple(terms), dict(details or {}))


# --------------------------------------------------------------------------
# coefficients

def _check_level(j):
    if isinstance(j, bool) or int(j) != j or not 1 <= j <= MAX_LEVEL:
        raise ValueError(f"level must be an integer in [1, {MAX_LEVEL}], got {j!r}")
    return int(j)


def _check_nu(nu):
    if isinstance(nu, (float, int)) and not isinstance(nu, bool):
        if not 0.0 <= nu <= 1.0:
            raise ValueError(f"nu must lie in [0, 1], got {nu!r}")
        return np.float64(nu)
    arr = np.asarray(nu, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"nu must lie in [0, 1], got {nu!r}")
    return arr


def _coefficient_arrays(j: int, nu: np.ndarray):
    """Vectorised ``(k, r, A)`` for level ``j``.

    ``ldexp`` scales by a power of two exactly, so the floors are exact.
    """
    half = np.ldexp(nu, j - 1)
    k = np.floor(half)
    r = np.floor(np.ldexp(nu, j))
    sign = 1.0 - 2.0 * np.mod(r, 2.0)
    A = sign * half - sign * np.floor((r + 1.0) / 2.0)
    return k, r, A


def coefficients(j: int, nu: float) -> DyadicCoefficients:
    """Indices ``k = floor(2**(j-1) nu)``, ``r = floor(2**j nu)`` and weight ``A_j(nu)``.

    ``A_j(nu)`` is the distance from ``2**(j-1) nu`` to the nearest integer.

    >>> coefficients(1, 0.75).A
    0.25
    """
    j = _check_level(j)
    _check_nu(nu)
    nu = float(nu)
    half = math.ldexp(nu, j - 1)
    k, r = math.floor(half), math.floor(math.ldexp(nu, j))
    sign = -1.0 if r % 2 else 1.0
    A = sign * half - sign * ((r + 1) // 2)
    return DyadicCoefficients(j, nu, k, r, A)


def dyadic_parameters(j: int, nu):
    """Dyadic fractions ``(alpha, beta, gamma)`` of level ``j`` bracketing ``nu``."""
    j = _check_level(j)
    if isinstance(nu, float):
        k = float(coefficients(j, nu).k)
        return (math.ldexp(k, 1 - j), math.ldexp(k + 1.0, 1 - j),
                math.ldexp(2.0 * k + 1.0, -j))
    nu = _check_nu(nu)
    k, _, _ = _coefficient_arrays(j, nu)
    alpha = np.ldexp(k, 1 - j)
    beta = np.ldexp(k + 1.0, 1 - j)
    gamma = np.ldexp(2.0 * k + 1.0, -j)
    if nu.ndim == 0:
        return float(alpha), float(beta), float(gamma)
    return alpha, beta, gamma


def shifted_dyadic_parameters(j: int, nu: float):
    """Weight and ``[0, 1]``-coordinates of the level-``j`` nodes of the reverse sum.

    For ``nu <= 1/2`` the reverse inequality refines the secant of the upper
    half interval at parameter ``1 - 2 nu``; for ``nu >= 1/2`` the lower half
    at ``2 - 2 nu``.  Returns ``(weight, alpha, beta, gamma)`` where the
    fractions locate the nodes on the full interval, so that a mean of
    parameter ``alpha`` can be used directly.
    """
    nu = float(nu)
    if nu <= 0.5:
        mu = 1.0 - 2.0 * nu
        al, be, ga = dyadic_parameters(j, mu)
        lift = lambda s: 0.5 + 0.5 * s  # noqa: E731
    else:
        mu = 2.0 - 2.0 * nu
        al, be, ga = dyadic_parameters(j, mu)
        lift = lambda s: 0.5 * s  # noqa: E731
    return coefficients(j, mu).A, lift(al), lift(be), lift(ga)


# --------------------------------------------------------------------------
# correction terms and sums

def _delta_arrays(f: FunctionHandle, j: int, nu: np.ndarray):
    """``(A_j, Delta_j f)`` on an array of parameters."""
    k, _, A = _coefficient_arrays(j, nu)
    alpha = np.ldexp(k, 1 - j)
    beta = np.ldexp(k + 1.0, 1 - j)
    gamma = np.ldexp(2.0 * k + 1.0, -j)
    delta = f.at(alpha) + f.at(beta) - 2.0 * f.at(gamma)
    return A, delta


def _partial_sums(f: FunctionHandle, N: int, nu: np.ndarray, first: int = 1):
    """Cumulative refinement sums for ``N = first..N``; shape ``(N - first + 1, len(nu))``."""
    out = np.empty((N - first + 1,) + nu.shape)
    acc = np.zeros(nu.shape)
    for j in range(first, N + 1):
        A, delta = _delta_arrays(f, j, nu)
        # zero weights multiply values that may be non-finite outside the domain
        acc = acc + np.where(A > 0, A * delta, 0.0)
        out[j - first] = acc
    return out


def refinement_term(f: FunctionHandle, j: int, nu: float) -> RefinementTerm:
    """The level-``j`` correction term ``A_j(nu) Delta_j f(nu; a, b)``."""
    c = coefficients(j, nu)
    alpha, beta, gamma = dyadic_parameters(j, nu)
    fx, fy, fz = f.at(alpha), f.at(beta), f.at(gamma)
    delta = fx + fy - 2.0 * fz
    x_node, y_node = float(f.point(alpha)), float(f.point(beta))
    return RefinementTerm(
        j=c.j, alpha=alpha, beta=beta, gamma=gamma,
        x_node=x_node, y_node=y_node, z_node=(x_node + y_node) / 2.0,
        delta=delta, weight=c.A,
        contribution=c.A * delta if c.A > 0 else 0.0,
    )


def refinement_terms(f: FunctionHandle, N: int, nu: float) -> list:
    """Per-level terms ``j = 1..N``."""
    _check_level(N)
    return [refinement_term(f, j, nu) for j in range(1, N + 1)]


def refinement_sum(f: FunctionHandle, N: int, nu):
    """``sum_{j=1}^{N} A_j(nu) Delta_j f(nu; a, b)``; ``nu`` may be an array."""
    N = _check_level(N)
    arr = _check_nu(nu)
    total = _partial_sums(f, N, np.atleast_1d(arr))[-1]
    return float(total[0]) if arr.ndim == 0 else total


def refinement_sums(f: FunctionHandle, N_max: int, nu) -> np.ndarray:
    """Partial sums for every ``N = 1..N_max`` at once; row ``N - 1`` is level ``N``."""
    N_max = _check_level(N_max)
    arr = _check_nu(nu)
    out = _partial_sums(f, N_max, np.atleast_1d(arr))
    return out[:, 0] if arr.ndim == 0 else out


def secant(f: FunctionHandle, nu):
    """``(1 - nu) f(a) + nu f(b)``."""
    nu = np.asarray(nu, dtype=float)
    val = (1.0 - nu) * f.at(0.0) + nu * f.at(1.0)
    return float(val) if nu.ndim == 0 else val


def remainder_identity(f: FunctionHandle, N: int, nu):
    """Linear interpolant of ``f`` at the mesh ``2**-N``, evaluated at ``nu``.

    This is what remains of the secant after subtracting the first ``N``
    refinement terms, for any function whatsoever.
    """
    N = _check_level(N)
    arr = _check_nu(nu)
    scaled = np.ldexp(arr, N)
    m = np.floor(scaled)
    w = scaled - m
    val = (m + 1.0 - scaled) * f.at(np.ldexp(m, -N))
    val = val + np.where(w > 0, w * f.at(np.ldexp(m + 1.0, -N)), 0.0)
    return float(val) if arr.ndim == 0 else val


# --------------------------------------------------------------------------
# certified inequalities

def _require_convex(f: FunctionHandle):
    if not f.shape.is_convex:
        raise ShapeError(f"{f!r} is not declared convex")


def _require_log_convex(f: FunctionHandle):
    if f.shape is not Shape.LOG_CONVEX:
        raise ShapeError(f"{f!r} is not declared log-convex")


def refined_secant_margin(f: FunctionHandle, N: int, nu: float,
                          rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Certify ``f(pt) + sum_{j<=N} A_j Delta_j f <= (1 - nu) f(a) + nu f(b)``."""
    _require_convex(f)
    terms = refinement_terms(f, N, nu)
    total = math.fsum(t.contribution for t in terms)
    lhs = f.at(nu) + total
    rhs = secant(f, nu)
    return certify("refined-secant", lhs, rhs, "<=", rtol, terms)


def _reverse_parts(f: FunctionHandle, N: int, nu: float):
    """Pieces shared by the additive and squared reverse forms.

    Returns ``(target, mu, terms)``: the half-interval handle, the shifted
    parameter and its refinement terms.
    """
    mid = 0.5 * (f.a + f.b)
    if nu <= 0.5:
        target, mu = f.on(mid, f.b), 1.0 - 2.0 * nu
    else:
        target, mu = f.on(f.a, mid), 2.0 - 2.0 * nu
    return target, mu, refinement_terms(target, N, mu)


def _midpoint_difference(f: FunctionHandle) -> float:
    """``f(a) + f(b) - 2 f(m)``: the level-1 difference for every ``nu < 1``.

    Used by the reverse forms so that ``nu = 1`` is not sent through nodes
    outside the domain.
    """
    return f.at(0.0) + f.at(1.0) - 2.0 * f.at(0.5)


def _reverse_once(f, N, nu, rtol):
    A1 = coefficients(1, nu).A
    d1 = _midpoint_difference(f)
    _, mu, terms = _reverse_parts(f, N, nu)
    lhs = f.at(nu) + (1.0 - A1) * d1
    rhs = secant(f, nu) + math.fsum(t.contribution for t in terms)
    return certify("reverse-secant", lhs, rhs, ">=", rtol, terms, {"shifted_nu": mu})


def reverse_margin(f: FunctionHandle, N: int, nu: float,
                   rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Certify the one-term reverse refined by ``N`` levels of the half-interval secant.

    ``f(pt) + (1 - A_1) Delta_1 f >= (1 - nu) f(a) + nu f(b) + sum_j ...``.
    At ``nu = 1/2`` both branches are evaluated and must agree.
    """
    _require_convex(f)
    _check_nu(nu)
    nu = float(nu)
    report = _reverse_once(f, N, nu, rtol)
    if nu == 0.5:
        # the other branch, with mu = 2 - 2 nu = 1 on the lower half
        lower = f.on(f.a, 0.5 * (f.a + f.b))
        other = math.fsum(t.contribution for t in refinement_terms(lower, N, 1.0))
        report.details["branch_gap"] = abs(other - (report.rhs - secant(f, nu)))
    return report


def _log_values(f: FunctionHandle, params) -> np.ndarray:
    vals = np.asarray(f.at(np.asarray(params, dtype=float)), dtype=float)
    if np.any(~(vals > 0)):
        raise ValueError("non-positive function value encountered")
    return np.log(vals)


def _log_terms(f: FunctionHandle, N: int, nu: float):
    """``sum_j A_j log(f(x_j) f(y_j) / f(z_j)^2)`` over levels with nonzero weight."""
    pieces = []
    for j in range(1, _check_level(N) + 1):
        A = coefficients(j, nu).A
        if A == 0:
            pieces.append(0.0)
            continue
        lx, ly, lz = _log_values(f, dyadic_parameters(j, nu))
        pieces.append(A * (lx + ly - 2.0 * lz))
    total = math.fsum(pieces)
    return total, pieces


def _certify_log(statement_id, log_lhs, log_rhs, sense, rtol, details):
    log_margin = log_rhs - log_lhs if sense == "<=" else log_lhs - log_rhs
    with np.errstate(over="ignore"):
        lhs, rhs = float(np.exp(log_lhs)), float(np.exp(log_rhs))
    details = dict(details, log_lhs=log_lhs, log_rhs=log_rhs, log_margin=log_margin)
    if math.isfinite(lhs) and math.isfinite(rhs):
        return certify(statement_id, lhs, rhs, sense, rtol, details=details)
    # sides overflowed: decide on the relative (log) margin instead
    return certify(statement_id, lhs, rhs, sense, rtol, details=details, margin=log_margin)


def log_refinement_margin(f: FunctionHandle, N: int, nu: float,
                          rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Certify ``f(pt) prod_j (f(x_j) f(y_j) / f(z_j)^2)^{A_j} <= f(a)^{1-nu} f(b)^nu``.

    Evaluated in log space; the sides are exponentiated only for reporting.
    """
    _require_log_convex(f)
    _check_nu(nu)
    nu = float(nu)
    la, lb, lp = _log_values(f, [0.0, 1.0, nu])
    corr, pieces = _log_terms(f, N, nu)
    return _certify_log("log-refinement", lp + corr, (1.0 - nu) * la + nu * lb, "<=",
                        rtol, {"log_terms": pieces})


def log_reverse_margin(f: FunctionHandle, N: int, nu: float,
                       rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Multiplicative reverse:
    ``f(pt) (f(a) f(b) / f(m)^2)^{1 - A_1} >= f(a)^{1-nu} f(b)^nu prod_j (...)^{A_j(mu)}``
    with the shifted nodes of the half interval.
    """
    _require_log_convex(f)
    _check_nu(nu)
    nu = float(nu)
    la, lb, lm, lp = _log_values(f, [0.0, 1.0, 0.5, nu])
    A1 = coefficients(1, nu).A
    target, mu, _ = _reverse_parts(f, 1, nu)
    corr, pieces = _log_terms(target, N, mu)
    log_lhs = lp + (1.0 - A1) * (la + lb - 2.0 * lm)
    log_rhs = (1.0 - nu) * la + nu * lb + corr
    return _certify_log("log-reverse", log_lhs, log_rhs, ">=", rtol,
                        {"shifted_nu": mu, "log_terms": pieces})


def squared_correction(f: FunctionHandle, nu: float) -> float:
    """``2 nu (1 - nu) (f(m)^2 - f(a) f(b))``: the slack dropped by the squared refinement.

    Nonpositive for log-convex ``f``.
    """
    fa, fb, fm = f.at(0.0), f.at(1.0), f.at(0.5)
    return 2.0 * nu * (1.0 - nu) * (fm * fm - fa * fb)


def squared_refined_margin(f: FunctionHandle, N: int, nu: float,
                           rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Certify
    ``f(pt)^2 + A_1^2 Delta_1 f^2 + sum_{j=2}^{N} A_j Delta_j f^2 <= ((1-nu) f(a) + nu f(b))^2``.

    ``N = 1`` keeps only the ``A_1^2`` term.
    """
    _require_log_convex(f)
    _check_nu(nu)
    nu = float(nu)
    g = f.squared()
    terms = refinement_terms(g, N, nu)
    first = terms[0]
    rest = math.fsum(t.contribution for t in terms[1:])
    lhs = g.at(nu) + first.weight ** 2 * first.delta + rest
    rhs = secant(f, nu) ** 2
    return certify("squared-refinement", lhs, rhs, "<=", rtol, terms,
                   {"H": squared_correction(f, nu)})


def squared_reverse_margin(f: FunctionHandle, N: int, nu: float,
                           rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Certify the squared reverse
    ``f(pt)^2 + c^2 Delta_1 f^2 + 2 nu (1-nu)(f(a) f(b) - f(m)^2) >= secant^2 + sum_j ...``
    where ``c = 1 - nu`` for ``nu <= 1/2`` and ``c = nu`` otherwise and the
    sum runs over the squared function on the shifted half interval.
    """
    _require_log_convex(f)
    _check_nu(nu)
    nu = float(nu)
    g = f.squared()
    c = 1.0 - nu if nu <= 0.5 else nu
    fa, fb, fm = f.at(0.0), f.at(1.0), f.at(0.5)
    d1 = _midpoint_difference(g)
    _, mu, terms = _reverse_parts(g, N, nu)
    lhs = g.at(nu) + c * c * d1 + 2.0 * nu * (1.0 - nu) * (fa * fb - fm * fm)
    rhs = secant(f, nu) ** 2 + math.fsum(t.contribution for t in terms)
    return certify("squared-reverse", lhs, rhs, ">=", rtol, terms, {"shifted_nu": mu})


def interpolant_gap_profile(f: FunctionHandle, N_max: int, grid_size: int) -> list:
    """``[(N, sup_nu |h(nu) - g_N(nu)|)]`` for ``N = 1..N_max``.

    ``h`` is the secant gap of ``f`` and ``g_N`` the ``N``-level refinement
    sum, both sampled on a uniform grid of ``grid_size`` points.
    """
    N_max = _check_level(N_max)
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    nu = np.linspace(0.0, 1.0, int(grid_size))
    h = secant(f, nu) - f.at(nu)
    sums = _partial_sums(f, N_max, nu)
    return [(n + 1, float(np.max(np.abs(h - sums[n])))) for n in range(N_max)]


# --------------------------------------------------------------------------
# convexity witness

@dataclass(frozen=True)
class WitnessViolation:
    a: float
    b: float
    nu: float
    margin: float
    tolerance: float


def one_term_reverse_margins(f: FunctionHandle, a, b, nu):
    """Margins of ``f(pt) + (1 - A_1) Delta_1 f >= secant`` for arrays of triples."""
    a, b, nu = (np.asarray(v, dtype=float) for v in (a, b, nu))
    _, _, A1 = _coefficient_arrays(1, nu)
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    fp = f((1.0 - nu) * a + nu * b)
    lhs = fp + (1.0 - A1) * (fa + fb - 2.0 * fm)
    rhs = (1.0 - nu) * fa + nu * fb
    return lhs - rhs, np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)


def convexity_witness(f: FunctionHandle, samples: Iterable[Sequence[float]],
                      rtol: float = DEFAULT_RTOL) -> Optional[WitnessViolation]:
    """First triple ``(a', b', nu)`` where the one-term reverse fails, or ``None``.

    That reverse holds on every subinterval exactly when ``f`` is convex, so
    a violation certifies non-convexity.
    """
    arr = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples,
                     dtype=float)
    if arr.size == 0:
        return None
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("samples must be (a, b, nu) triples")
    a, b, nu = arr.T
    span = f.b - f.a
    bad = ~((a < b) & (a >= f.a - 1e-12 * span) & (b <= f.b + 1e-12 * span)
            & (nu >= 0) & (nu <= 1))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(f"malformed triple {tuple(arr[i])}")
    a, b = np.clip(a, f.a, f.b), np.clip(b, f.a, f.b)
    margins, scale = one_term_reverse_margins(f, a, b, nu)
    tol = rtol * scale
    failing = np.flatnonzero(margins < -tol)
    if failing.size == 0:
        return None
    i = int(failing[0])
    return WitnessViolation(float(a[i]), float(b[i]), float(nu[i]),
                            float(margins[i]), float(tol[i]))


def random_witness_samples(f: FunctionHandle, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly drawn triples ``(a', b', nu)`` with ``a' < b'`` inside the domain."""
    ends = np.sort(rng.uniform(f.a, f.b, size=(count, 2)), axis=1)
    nu = rng.uniform(0.0, 1.0, size=count)
    keep = ends[:, 0] < ends[:, 1]
    return np.column_stack([ends[keep, 0], ends[keep, 1], nu[keep]])
