"""
Weighted arithmetic, geometric, harmonic and Heinz means of two positive
numbers, and the refined and reversed inequalities between them.

Every statement is evaluated twice: through an explicit closed form in the
mean parameters, and through the generic engine applied to the matching
``t -> mean(t)`` handle.  The closed form gives the report; the absolute gap
between the two left-hand sides is kept in ``details['engine_gap']``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .engine import (DEFAULT_RTOL, CertificationReport, FunctionHandle, Shape, certify,
                     coefficients, dyadic_parameters, shifted_dyadic_parameters)


class MeanKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"
    HEINZ = "heinz"


@dataclass(frozen=True)
class MeanPair:
    x: float
    y: float

    def __post_init__(self):
        for v in (self.x, self.y):
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"mean arguments must be positive, got {self.x}, {self.y}")

    @property
    def degenerate(self) -> bool:
        return self.x == self.y


def _arith(x, y, t):
    return (1.0 - t) * x + t * y


def _geom(x, y, t):
    return np.power(x, 1.0 - t) * np.power(y, t)


def _harm(x, y, t):
    return 1.0 / ((1.0 - t) / x + t / y)


def _heinz(x, y, t):
    return 0.5 * (_geom(x, y, t) + _geom(x, y, 1.0 - t))


_MEANS = {
    MeanKind.ARITHMETIC: _arith,
    MeanKind.GEOMETRIC: _geom,
    MeanKind.HARMONIC: _harm,
    MeanKind.HEINZ: _heinz,
}

_SHAPES = {
    MeanKind.ARITHMETIC: Shape.CONVEX,
    MeanKind.GEOMETRIC: Shape.LOG_CONVEX,
    MeanKind.HARMONIC: Shape.LOG_CONVEX,
    MeanKind.HEINZ: Shape.LOG_CONVEX,
}


def mean(kind: MeanKind, pair: MeanPair, t: float) -> float:
    """Weighted mean of ``pair`` with weight ``t`` on ``y``.

    >>> mean(MeanKind.HARMONIC, MeanPair(1, 4), 0.5)
    1.6
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return float(_MEANS[MeanKind(kind)](pair.x, pair.y, t))


def mean_handle(kind: MeanKind, pair: MeanPair) -> FunctionHandle:
    """``t -> mean(kind, pair, t)`` on ``[0, 1]`` with its known shape."""
    kind = MeanKind(kind)
    fn = _MEANS[kind]
    x, y = pair.x, pair.y
    return FunctionHandle(lambda t: fn(x, y, t), 0.0, 1.0, _SHAPES[kind],
                          name=f"{kind.value}({x:g},{y:g})")


def kantorovich_constant(pair: MeanPair) -> float:
    """``((x + y) / 2 / sqrt(x y))**2``."""
    return (pair.x + pair.y) ** 2 / (4.0 * pair.x * pair.y)


def _levels(N, nu):
    """Nonzero-weight levels ``(j, A_j, alpha, beta, gamma)`` up to ``N``."""
    out = []
    for j in range(1, N + 1):
        A = coefficients(j, nu).A
        if A > 0:
            out.append((j, A) + dyadic_parameters(j, nu))
    return out


def _shifted_levels(N, nu):
    out = []
    for j in range(1, N + 1):
        A, al, be, ga = shifted_dyadic_parameters(j, nu)
        if A > 0:
            out.append((j, A, al, be, ga))
    return out


def _equality(statement_id, value, sense="<=", rtol=DEFAULT_RTOL):
    return certify(statement_id, value, value, sense, rtol, details={"degenerate_pair": True})


def _attach(report: CertificationReport, engine_report: CertificationReport, engine_lhs=None):
    lhs = engine_report.lhs if engine_lhs is None else engine_lhs
    report.details["engine_gap"] = abs(report.lhs - lhs)
    report.details["engine_margin"] = engine_report.margin
    return report


def _check_common(nu, N):
    engine._check_nu(nu)
    engine._check_level(N)
    return float(nu), int(N)


# --------------------------------------------------------------------------
# refinements


def young_refinement(pair: MeanPair, nu: float, N: int,
                     rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Refined Young inequality ``x #_nu y + sum_j A_j (u_j - v_j)^2 <= x nabla_nu y``.

    ``u_j, v_j`` are the ``2**j``-th roots ``(y^k x^(2^(j-1)-k))^(1/2^j)`` and
    ``(y^(k+1) x^(2^(j-1)-k-1))^(1/2^j)``.
    """
    nu, N = _check_common(nu, N)
    x, y = pair.x, pair.y
    if pair.degenerate:
        return _equality("young-refinement", x, rtol=rtol)
    terms = []
    for j, A, *_ in _levels(N, nu):
        k = coefficients(j, nu).k
        half, root = 2.0 ** (j - 1), 2.0 ** j
        u = x ** ((half - k) / root) * y ** (k / root)
        v = x ** ((half - k - 1) / root) * y ** ((k + 1) / root)
        terms.append(A * (u - v) ** 2)
    lhs = _geom(x, y, nu) + math.fsum(terms)
    report = certify("young-refinement", lhs, _arith(x, y, nu), "<=", rtol,
                     details={"terms": terms})
    return _attach(report, engine.refined_secant_margin(mean_handle(MeanKind.GEOMETRIC, pair),
                                                        N, nu, rtol))


def _harmonic_second_difference(x, y, al, be, ga, power=1):
    return (_harm(x, y, al) ** power + _harm(x, y, be) ** power
            - 2.0 * _harm(x, y, ga) ** power)


def arith_harm_refinement(pair: MeanPair, nu: float, N: int,
                          rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """``x !_nu y + sum_j A_j (x!_alpha y + x!_beta y - 2 x!_gamma y) <= x nabla_nu y``."""
    nu, N = _check_common(nu, N)
    x, y = pair.x, pair.y
    if pair.degenerate:
        return _equality("arith-harm-refinement", x, rtol=rtol)
    terms = [A * _harmonic_second_difference(x, y, al, be, ga)
             for _, A, al, be, ga in _levels(N, nu)]
    lhs = _harm(x, y, nu) + math.fsum(terms)
    report = certify("arith-harm-refinement", lhs, _arith(x, y, nu), "<=", rtol,
                     details={"terms": terms})
    return _attach(report, engine.refined_secant_margin(mean_handle(MeanKind.HARMONIC, pair),
                                                        N, nu, rtol))


def geom_harm_refinement(pair: MeanPair, nu: float, N: int,
                         rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Multiplicative refinement
    ``x !_nu y * prod_j ((x!_alpha y)(x!_beta y) / (x!_gamma y)^2)^{A_j} <= x #_nu y``.

    For ``N = 1`` the product is the Kantorovich constant raised to
    ``min(nu, 1 - nu)``; that factor is reported as ``details['kantorovich_factor']``.
    """
    nu, N = _check_common(nu, N)
    x, y = pair.x, pair.y
    if pair.degenerate:
        return _equality("geom-harm-refinement", x, rtol=rtol)
    logs = [A * (math.log(_harm(x, y, al)) + math.log(_harm(x, y, be))
                 - 2.0 * math.log(_harm(x, y, ga)))
            for _, A, al, be, ga in _levels(N, nu)]
    log_lhs = math.log(_harm(x, y, nu)) + math.fsum(logs)
    log_rhs = (1.0 - nu) * math.log(x) + nu * math.log(y)
    lhs, rhs = math.exp(log_lhs), math.exp(log_rhs)
    report = certify("geom-harm-refinement", lhs, rhs, "<=", rtol, details={
        "log_margin": log_rhs - log_lhs,
        "kantorovich_factor": kantorovich_constant(pair) ** min(nu, 1.0 - nu),
    })
    return _attach(report, engine.log_refinement_margin(mean_handle(MeanKind.HARMONIC, pair),
                                                        N, nu, rtol))


def squared_refinements(pair: MeanPair, nu: float, N: int, kind: MeanKind = MeanKind.GEOMETRIC,
                        rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Squared refinements against ``(x nabla_nu y)^2``.

    Geometric: ``(x#_nu y)^2 + A_1^2 (x - y)^2 + sum_{j>=2} A_j (x#_alpha y - x#_beta y)^2``.

    Harmonic: ``(x!_nu y)^2 + 2 A_1^2 (x^2 nabla y^2 - (x!y)^2)
    + sum_{j>=2} A_j ((x!_alpha y)^2 + (x!_beta y)^2 - 2 (x!_gamma y)^2)``.
    """
    nu, N = _check_common(nu, N)
    kind = MeanKind(kind)
    x, y = pair.x, pair.y
    sid = f"squared-{kind.value}-refinement"
    if kind not in (MeanKind.GEOMETRIC, MeanKind.HARMONIC):
        raise ValueError(f"squared refinement is defined for geometric and harmonic means, not {kind}")
    if pair.degenerate:
        return _equality(sid, x * x, rtol=rtol)
    A1 = coefficients(1, nu).A
    if kind is MeanKind.GEOMETRIC:
        base = _geom(x, y, nu) ** 2
        first = A1 * A1 * (x - y) ** 2
        rest = [A * (_geom(x, y, al) - _geom(x, y, be)) ** 2
                for j, A, al, be, _ in _levels(N, nu) if j >= 2]
    else:
        base = _harm(x, y, nu) ** 2
        first = 2.0 * A1 * A1 * (0.5 * (x * x + y * y) - _harm(x, y, 0.5) ** 2)
        rest = [A * _harmonic_second_difference(x, y, al, be, ga, power=2)
                for j, A, al, be, ga in _levels(N, nu) if j >= 2]
    lhs = base + first + math.fsum(rest)
    handle = mean_handle(kind, pair)
    g1 = engine.refinement_term(handle.squared(), 1, nu)
    report = certify(sid, lhs, _arith(x, y, nu) ** 2, "<=", rtol, details={
        "first_term": first,
        # closed-form first term against A_1^2 Delta_1 f^2
        "first_term_gap": abs(first - A1 * A1 * g1.delta),
    })
    return _attach(report, engine.squared_refined_margin(handle, N, nu, rtol))


# --------------------------------------------------------------------------
# reverses


def _reverse_coefficient(nu):
    return 1.0 - nu if nu <= 0.5 else nu


def young_reverse(pair: MeanPair, nu: float, N: int,
                  rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Reversed Young inequality
    ``x #_nu y + c (sqrt x - sqrt y)^2 >= x nabla_nu y + sum_j A_j(mu) Delta_j``
    with ``c = 1 - nu`` (``nu <= 1/2``) or ``nu`` (``nu >= 1/2``) and the
    second differences taken on the shifted half-interval nodes.
    """
    nu, N = _check_common(nu, N)
    x, y = pair.x, pair.y
    if pair.degenerate:
        return _equality("young-reverse", x, ">=", rtol)
    c = _reverse_coefficient(nu)
    # second differences of a log-affine function are perfect squares
    terms = [A * (math.sqrt(_geom(x, y, al)) - math.sqrt(_geom(x, y, be))) ** 2
             for _, A, al, be, _ in _shifted_levels(N, nu)]
    lhs = _geom(x, y, nu) + c * (math.sqrt(x) - math.sqrt(y)) ** 2
    rhs = _arith(x, y, nu) + math.fsum(terms)
    report = certify("young-reverse", lhs, rhs, ">=", rtol, details={"terms": terms})
    return _attach(report, engine.reverse_margin(mean_handle(MeanKind.GEOMETRIC, pair), N, nu, rtol))


def arith_harm_reverse(pair: MeanPair, nu: float, N: int,
                       rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """``x !_nu y + c (x + y - 2 x!y) >= x nabla_nu y + sum_j A_j(mu) (harmonic second differences)``."""
    nu, N = _check_common(nu, N)
    x, y = pair.x, pair.y
    if pair.degenerate:
        return _equality("arith-harm-reverse", x, ">=", rtol)
    c = _reverse_coefficient(nu)
    terms = [A * _harmonic_second_difference(x, y, al, be, ga)
             for _, A, al, be, ga in _shifted_levels(N, nu)]
    lhs = _harm(x, y, nu) + c * (x + y - 2.0 * _harm(x, y, 0.5))
    rhs = _arith(x, y, nu) + math.fsum(terms)
    report = certify("arith-harm-reverse", lhs, rhs, ">=", rtol, details={"terms": terms})
    return _attach(report, engine.reverse_margin(mean_handle(MeanKind.HARMONIC, pair), N, nu, rtol))


def squared_reverses(pair: MeanPair, nu: float, N: int, kind: MeanKind = MeanKind.GEOMETRIC,
                     rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Squared reverses against ``(x nabla_nu y)^2``.

    Geometric: ``(x#_nu y)^2 + c^2 (x - y)^2 >= (x nabla_nu y)^2 + sum_j A_j(mu) Delta_j f^2``.

    Harmonic: ``(x!_nu y)^2 + 2 c^2 (x^2 nabla y^2 - (x!y)^2)
    + 2 nu (1 - nu)(x y - (2xy/(x+y))^2) >= (x nabla_nu y)^2 + sum_j ...``.

    The level sums use the parameter ``1 - 2 nu`` on the upper half for
    ``nu <= 1/2`` and ``2 - 2 nu`` on the lower half otherwise.
    """
    nu, N = _check_common(nu, N)
    kind = MeanKind(kind)
    x, y = pair.x, pair.y
    sid = f"squared-{kind.value}-reverse"
    if kind not in (MeanKind.GEOMETRIC, MeanKind.HARMONIC):
        raise ValueError(f"squared reverse is defined for geometric and harmonic means, not {kind}")
    if pair.degenerate:
        return _equality(sid, x * x, ">=", rtol)
    c = _reverse_coefficient(nu)
    shifted = _shifted_levels(N, nu)
    if kind is MeanKind.GEOMETRIC:
        lhs = _geom(x, y, nu) ** 2 + c * c * (x - y) ** 2
        terms = [A * (_geom(x, y, al) - _geom(x, y, be)) ** 2 for _, A, al, be, _ in shifted]
    else:
        hm = 2.0 * x * y / (x + y)
        lhs = (_harm(x, y, nu) ** 2 + 2.0 * c * c * (0.5 * (x * x + y * y) - hm * hm)
               + 2.0 * nu * (1.0 - nu) * (x * y - hm * hm))
        terms = [A * _harmonic_second_difference(x, y, al, be, ga, power=2)
                 for _, A, al, be, ga in shifted]
    rhs = _arith(x, y, nu) ** 2 + math.fsum(terms)
    report = certify(sid, lhs, rhs, ">=", rtol, details={"terms": terms})
    return _attach(report, engine.squared_reverse_margin(mean_handle(kind, pair), N, nu, rtol))


#: statement id -> callable(pair, nu, N, rtol) for batch use
STATEMENTS = {
    "young-refinement": young_refinement,
    "arith-harm-refinement": arith_harm_refinement,
    "geom-harm-refinement": geom_harm_refinement,
    "squared-geometric-refinement":
        lambda p, nu, N, rtol=DEFAULT_RTOL: squared_refinements(p, nu, N, MeanKind.GEOMETRIC, rtol),
    "squared-harmonic-refinement":
        lambda p, nu, N, rtol=DEFAULT_RTOL: squared_refinements(p, nu, N, MeanKind.HARMONIC, rtol),
    "young-reverse": young_reverse,
    "arith-harm-reverse": arith_harm_reverse,
    "squared-geometric-reverse":
        lambda p, nu, N, rtol=DEFAULT_RTOL: squared_reverses(p, nu, N, MeanKind.GEOMETRIC, rtol),
    "squared-harmonic-reverse":
        lambda p, nu, N, rtol=DEFAULT_RTOL: squared_reverses(p, nu, N, MeanKind.HARMONIC, rtol),
}
