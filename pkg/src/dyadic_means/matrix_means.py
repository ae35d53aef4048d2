"""
Operator means of positive definite matrices and Loewner-order certificates.

All matrix functions (powers, inverses, square roots) go through one path:
symmetrize, take a Hermitian eigendecomposition, apply a scalar function to
the spectrum.  Operator inequalities are certified by the smallest
eigenvalue of the difference of the two sides.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from . import engine
from .engine import (DEFAULT_RTOL, CertificationReport, FunctionHandle, Shape, Verdict,
                     coefficients, dyadic_parameters, shifted_dyadic_parameters)

LOEWNER_RTOL = 1e-9
HERMITIAN_RTOL = 1e-12


class NumericalFault(ArithmeticError):
    """Two routes to the same quantity disagree beyond round-off."""


class HermitianMatrix:
    """Square Hermitian matrix with a cached eigendecomposition.

    The input is checked to be Hermitian up to ``1e-12`` of its largest
    entry and then replaced by ``(M + M^*) / 2``.
    """

    def __init__(self, data, check: bool = True):
        arr = np.array(data, dtype=complex if np.iscomplexobj(data) else float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix has non-finite entries")
        if check:
            scale = max(np.max(np.abs(arr)), 1e-300)
            asym = np.max(np.abs(arr - arr.conj().T))
            if asym > HERMITIAN_RTOL * scale:
                raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3g})")
        if np.iscomplexobj(arr) and not np.any(arr.imag):
            arr = arr.real.copy()
        self.data = 0.5 * (arr + arr.conj().T)
        self.data.setflags(write=False)

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"{type(self).__name__}({self.data!r})"

    @classmethod
    def _trusted(cls, arr, **attrs):
        """Wrap an already symmetrized, finite array without re-checking it."""
        obj = cls.__new__(cls)
        obj.data = arr
        obj.__dict__.update(attrs)
        return obj

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @cached_property
    def eigh(self):
        w, U = np.linalg.eigh(self.data)
        return w, U

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigh[0]

    @property
    def spectral_scale(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))


class PositiveMatrix(HermitianMatrix):
    """Positive semidefinite (``strict=False``) or definite matrix.

    Strict positivity means ``lambda_min > dim * 1e-12 * lambda_max``.
    """

    def __init__(self, data, strict: bool = True, check: bool = True, validate: bool = True):
        super().__init__(data, check=check)
        self.strict = strict
        self._congruences = {}
        if not validate:
            return
        lo, hi = self.eigenvalues[0], self.eigenvalues[-1]
        floor = self.dim * 1e-12 * max(hi, 0.0)
        if strict and not lo > floor:
            raise ValueError(f"matrix is not strictly positive (min eigenvalue {lo:.3g})")
        if not strict and lo < -floor - 1e-300:
            raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3g})")

    @cached_property
    def sqrt(self) -> np.ndarray:
        return _apply(self, lambda w: np.sqrt(np.clip(w, 0.0, None)))

    @cached_property
    def inv_sqrt(self) -> np.ndarray:
        return _apply(self, lambda w: 1.0 / np.sqrt(w))

    @cached_property
    def inv(self) -> np.ndarray:
        return _apply(self, lambda w: 1.0 / w)

    def power(self, t: float) -> np.ndarray:
        """``M**t`` with ``0**t = 0`` for ``t > 0`` and ``M**0 = I``."""
        if t == 0:
            return np.eye(self.dim)
        return _apply(self, lambda w: np.power(np.clip(w, 0.0, None), t))


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.conj().T)


def _apply(M: HermitianMatrix, g) -> np.ndarray:
    w, U = M.eigh
    vals = np.asarray(g(w))
    if vals.shape != w.shape or not np.all(np.isfinite(vals)):
        raise ValueError("function is undefined on the spectrum")
    out = (U * vals) @ U.conj().T
    return 0.5 * (out + out.conj().T)


def as_hermitian(M) -> HermitianMatrix:
    return M if isinstance(M, HermitianMatrix) else HermitianMatrix(M)


def as_positive(M, strict: bool = True) -> PositiveMatrix:
    if isinstance(M, PositiveMatrix) and (M.strict or not strict):
        return M
    return PositiveMatrix(np.asarray(M), strict=strict)


def hermitian_function(M, g) -> HermitianMatrix:
    """``U g(Lambda) U^*`` for ``M = U Lambda U^*``; ``g`` acts on eigenvalue arrays."""
    M = as_hermitian(M)
    with np.errstate(invalid="ignore", divide="ignore"):
        return HermitianMatrix(_apply(M, g), check=False)


# --------------------------------------------------------------------------
# means

class OpMeanKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"


def _pair(A, B):
    A, B = as_positive(A), as_positive(B)
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    return A, B


def _congruence(A: PositiveMatrix, B: PositiveMatrix) -> PositiveMatrix:
    """``X = A^{-1/2} B A^{-1/2}``, memoised on ``A`` per ``B`` object."""
    hit = A._congruences.get(id(B))
    if hit is not None and hit[0] is B:
        return hit[1]
    S = A.inv_sqrt
    X = PositiveMatrix._trusted(_sym(S @ B.data @ S), strict=True, _congruences={})
    A._congruences[id(B)] = (B, X)
    return X


def op_mean(kind, A, B, t: float) -> PositiveMatrix:
    """Weighted operator mean of parameter ``t``.

    Arithmetic ``(1-t) A + t B``; geometric
    ``A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}``; harmonic
    ``((1-t) A^{-1} + t B^{-1})^{-1}``.
    """
    kind = OpMeanKind(kind)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    A, B = _pair(A, B)
    if kind is OpMeanKind.ARITHMETIC:
        out = (1.0 - t) * A.data + t * B.data
    elif kind is OpMeanKind.GEOMETRIC:
        R = A.sqrt
        out = R @ _congruence(A, B).power(t) @ R
    else:
        S = HermitianMatrix._trusted(_sym((1.0 - t) * A.inv + t * B.inv))
        out = _apply(S, lambda w: 1.0 / w)
    return PositiveMatrix._trusted(_sym(out), strict=True, _congruences={})


def _mean_of_congruence(A: PositiveMatrix, X: PositiveMatrix, h) -> np.ndarray:
    """``A^{1/2} h(X) A^{1/2}``: every mean of the pair is of this form."""
    R = A.sqrt
    out = R @ _apply(X, h) @ R
    return 0.5 * (out + out.conj().T)


# --------------------------------------------------------------------------
# Loewner order

@dataclass(frozen=True)
class LoewnerComparison:
    """Certificate for ``lhs <= rhs`` in the Loewner order.

    ``lhs`` is always the side claimed to be smaller.
    """

    statement_id: str
    lhs: np.ndarray
    rhs: np.ndarray
    min_eig_of_difference: float
    tolerance: float
    verdict: Verdict
    details: dict = field(default_factory=dict, compare=False)

    @property
    def margin(self) -> float:
        return self.min_eig_of_difference

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def loewner_margin(P, Q, rtol: float = LOEWNER_RTOL, statement_id: str = "loewner",
                   details=None) -> LoewnerComparison:
    """Smallest eigenvalue of ``Q - P``; holds if ``>= -rtol * max(|P|, |Q|, 1)``."""
    P, Q = np.asarray(P), np.asarray(Q)
    if P.shape != Q.shape or P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError(f"dimension mismatch: {P.shape} vs {Q.shape}")
    sym = lambda M: 0.5 * (M + M.conj().T)  # noqa: E731
    P, Q = sym(P), sym(Q)
    lo = float(np.linalg.eigvalsh(Q - P)[0])
    scale = max(float(np.max(np.abs(np.linalg.eigvalsh(P)))),
                float(np.max(np.abs(np.linalg.eigvalsh(Q)))), 1.0)
    tol = rtol * scale
    verdict = Verdict.HOLDS if lo >= -tol else (
        Verdict.VIOLATED if math.isfinite(lo) else Verdict.DEGENERATE)
    return LoewnerComparison(statement_id, P, Q, lo, tol, verdict, dict(details or {}))


def _relative_gap(M1, M2):
    return float(np.linalg.norm(M1 - M2, 2) / max(np.linalg.norm(M2, 2), 1.0))


def _nonzero_levels(N, nu, shifted=False):
    engine._check_level(N)
    out = []
    for j in range(1, N + 1):
        if shifted:
            A, al, be, ga = shifted_dyadic_parameters(j, nu)
        else:
            A = coefficients(j, nu).A
            al, be, ga = dyadic_parameters(j, nu)
        if A > 0:
            out.append((A, al, be, ga))
    return out


def _second_difference(kind, A, B, al, be, ga):
    return (op_mean(kind, A, B, al).data + op_mean(kind, A, B, be).data
            - 2.0 * op_mean(kind, A, B, ga).data)


def _scalar_second_difference(h, al, be, ga):
    return lambda s: h(s, al) + h(s, be) - 2.0 * h(s, ga)


def _geom_scalar(s, t):
    return np.power(s, t)


def _harm_scalar(s, t):
    return 1.0 / ((1.0 - t) + t / s)


def op_young_refinement(A, B, nu: float, N: int, rtol: float = LOEWNER_RTOL) -> LoewnerComparison:
    """``A #_nu B + sum_j A_j (A#_alpha B + A#_beta B - 2 A#_gamma B) <= A nabla_nu B``.

    The left side is assembled from operator means at the dyadic parameters;
    ``details['congruence_gap']`` compares it with ``A^{1/2} h(X) A^{1/2}``
    for the scalar refinement ``h`` and ``X = A^{-1/2} B A^{-1/2}``.
    """
    engine._check_nu(nu)
    A, B = _pair(A, B)
    levels = _nonzero_levels(N, nu)
    lhs = op_mean("geometric", A, B, nu).data.copy()
    for w, al, be, ga in levels:
        lhs += w * _second_difference("geometric", A, B, al, be, ga)
    rhs = op_mean("arithmetic", A, B, nu).data

    def h(s):
        out = _geom_scalar(s, nu)
        for w, al, be, ga in levels:
            out = out + w * _scalar_second_difference(_geom_scalar, al, be, ga)(s)
        return out

    cong = _mean_of_congruence(A, _congruence(A, B), h)
    return loewner_margin(lhs, rhs, rtol, "op-young-refinement",
                          {"congruence_gap": _relative_gap(lhs, cong)})


def op_arith_harm_refinement(A, B, nu: float, N: int,
                             rtol: float = LOEWNER_RTOL) -> LoewnerComparison:
    """``A !_nu B + sum_j A_j (A!_alpha B + A!_beta B - 2 A!_gamma B) <= A nabla_nu B``."""
    engine._check_nu(nu)
    A, B = _pair(A, B)
    levels = _nonzero_levels(N, nu)
    lhs = op_mean("harmonic", A, B, nu).data.copy()
    for w, al, be, ga in levels:
        lhs += w * _second_difference("harmonic", A, B, al, be, ga)
    rhs = op_mean("arithmetic", A, B, nu).data

    def h(s):
        out = _harm_scalar(s, nu)
        for w, al, be, ga in levels:
            out = out + w * _scalar_second_difference(_harm_scalar, al, be, ga)(s)
        return out

    cong = _mean_of_congruence(A, _congruence(A, B), h)
    return loewner_margin(lhs, rhs, rtol, "op-arith-harm-refinement",
                          {"congruence_gap": _relative_gap(lhs, cong)})


def op_arith_harm_reverse(A, B, nu: float, N: int, rtol: float = LOEWNER_RTOL) -> LoewnerComparison:
    """``A nabla_nu B + sum_j A_j(mu) (harmonic second differences) <= A !_nu B + c (A + B - 2 A!B)``.

    ``c = 1 - nu`` and ``mu = 1 - 2 nu`` on the upper half of the parameter
    interval for ``nu <= 1/2``; ``c = nu`` and ``mu = 2 - 2 nu`` on the lower
    half otherwise.
    """
    engine._check_nu(nu)
    A, B = _pair(A, B)
    c = 1.0 - nu if nu <= 0.5 else nu
    upper = op_mean("harmonic", A, B, nu).data + c * (
        A.data + B.data - 2.0 * op_mean("harmonic", A, B, 0.5).data)
    lower = op_mean("arithmetic", A, B, nu).data.copy()
    for w, al, be, ga in _nonzero_levels(N, nu, shifted=True):
        lower += w * _second_difference("harmonic", A, B, al, be, ga)
    return loewner_margin(lower, upper, rtol, "op-arith-harm-reverse")


def op_kantorovich_geom_harm(A, B, nu: float, rtol: float = LOEWNER_RTOL) -> LoewnerComparison:
    """``(A !_nu B) ((A^{-1} B + 2 I + B^{-1} A) / 4)^r <= A #_nu B``, ``r = min(nu, 1 - nu)``.

    The left product is formed as ``A^{1/2} h(X) A^{1/2}`` with
    ``h(s) = ((1-nu) + nu/s)^{-1} ((s + 2 + 1/s)/4)^r``, which is Hermitian.
    The literal product (with a general, non-Hermitian fractional power) is
    also formed; if the two differ by more than ``1e-9`` relative a
    ``NumericalFault`` is raised.
    """
    engine._check_nu(nu)
    A, B = _pair(A, B)
    r = min(nu, 1.0 - nu)
    X = _congruence(A, B)

    def h(s):
        return _harm_scalar(s, nu) * np.power((s + 2.0 + 1.0 / s) / 4.0, r)

    lhs = _mean_of_congruence(A, X, h)
    rhs = op_mean("geometric", A, B, nu).data
    M = (A.inv @ B.data + 2.0 * np.eye(A.dim) + B.inv @ A.data) / 4.0
    literal = op_mean("harmonic", A, B, nu).data @ _general_power(M, r)
    gap = _relative_gap(literal, lhs)
    if gap > 1e-9:
        raise NumericalFault(f"literal and congruence products differ by {gap:.3g}")
    return loewner_margin(lhs, rhs, rtol, "op-kantorovich-geom-harm",
                          {"literal_gap": gap, "exponent": r})


def _general_power(M: np.ndarray, r: float) -> np.ndarray:
    if r == 0:
        return np.eye(M.shape[0])
    out = scipy.linalg.fractional_matrix_power(M, r)
    return out.real if np.isrealobj(M) else out


# --------------------------------------------------------------------------
# Heinz functionals

class NormKind(enum.Enum):
    FROBENIUS = "frobenius"
    TRACE = "trace"
    SPECTRAL = "spectral"


def matrix_norm(M, kind=NormKind.FROBENIUS) -> float:
    """Frobenius, trace (nuclear) or spectral norm."""
    kind = NormKind(kind)
    M = np.asarray(M)
    if kind is NormKind.FROBENIUS:
        return float(np.linalg.norm(M, "fro"))
    s = np.linalg.svd(M, compute_uv=False)
    return float(np.sum(s) if kind is NormKind.TRACE else np.max(s))


def _heinz_inputs(A, B, X):
    A, B = as_positive(A, strict=False), as_positive(B, strict=False)
    X = np.asarray(X)
    if not (A.dim == B.dim and X.shape == (A.dim, A.dim)):
        raise ValueError("dimension mismatch")
    return A, B, X


def heinz_functional(A, B, X, nu: float, norm=NormKind.FROBENIUS) -> float:
    """``||| A^nu X B^{1-nu} + A^{1-nu} X B^nu |||``."""
    engine._check_nu(nu)
    A, B, X = _heinz_inputs(A, B, X)
    M = A.power(nu) @ X @ B.power(1.0 - nu) + A.power(1.0 - nu) @ X @ B.power(nu)
    return matrix_norm(M, norm)


def heinz_handle(A, B, X, norm=NormKind.FROBENIUS) -> FunctionHandle:
    """``nu -> heinz_functional(A, B, X, nu, norm)`` on ``[0, 1]``.

    Convex for every unitarily invariant norm; declared log-convex for the
    Frobenius norm.
    """
    A, B, X = _heinz_inputs(A, B, X)
    norm = NormKind(norm)
    wa, Ua = A.eigh
    wb, Ub = B.eigh
    wa, wb = np.clip(wa, 0.0, None), np.clip(wb, 0.0, None)
    Y = Ua.conj().T @ X @ Ub

    def f(nu):
        # in the eigenbases the Heinz matrix is a Hadamard product with Y
        pa = np.power(wa, nu) if nu > 0 else np.ones_like(wa)
        qa = np.power(wa, 1.0 - nu) if nu < 1 else np.ones_like(wa)
        pb = np.power(wb, nu) if nu > 0 else np.ones_like(wb)
        qb = np.power(wb, 1.0 - nu) if nu < 1 else np.ones_like(wb)
        K = np.outer(pa, qb) + np.outer(qa, pb)
        return matrix_norm(K * Y, norm)

    shape = Shape.LOG_CONVEX if norm is NormKind.FROBENIUS else Shape.CONVEX
    return FunctionHandle(f, 0.0, 1.0, shape, vectorized=False, name=f"heinz-{norm.value}")


def heinz_refinement(A, B, X, nu: float, N: int, norm=NormKind.FROBENIUS,
                     rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Refined Heinz inequality
    ``f(nu) + sum_j A_j Delta_j f(nu; 0, 1) <= |||AX + XB|||``.

    The reverse form is attached as ``details['reverse']``.
    """
    f = heinz_handle(A, B, X, norm)
    rep = engine.refined_secant_margin(f, N, nu, rtol)
    report = engine.certify("heinz-refinement", rep.lhs, rep.rhs, "<=", rtol, rep.terms,
                            {"endpoint": f.at(0.0)})
    report.details["reverse"] = heinz_reverse(A, B, X, nu, N, norm, rtol, handle=f)
    return report


def heinz_reverse(A, B, X, nu: float, N: int, norm=NormKind.FROBENIUS,
                  rtol: float = DEFAULT_RTOL, handle=None) -> CertificationReport:
    """Reverse Heinz inequality
    ``f(nu) + 2c (|||AX+XB||| - 2 |||A^{1/2} X B^{1/2}|||) >= |||AX+XB||| + sum_j ...``.

    ``details['display_margin']`` holds the margin obtained with a single
    ``|||A^{1/2} X B^{1/2}|||`` in the correction, and
    ``details['display_diverges']`` whether it differs from the certified one.
    """
    f = handle or heinz_handle(A, B, X, norm)
    rep = engine.reverse_margin(f, N, nu, rtol)
    end, half = f.at(0.0), 0.5 * f.at(0.5)
    c = 1.0 - nu if nu <= 0.5 else nu
    display_lhs = f.at(nu) + 2.0 * c * (end - half)
    display_margin = display_lhs - rep.rhs
    return engine.certify("heinz-reverse", rep.lhs, rep.rhs, ">=", rtol, rep.terms, {
        "display_margin": display_margin,
        "display_diverges": abs(display_margin - rep.margin) > rep.tolerance,
        "correction_gap": abs(rep.lhs - (f.at(nu) + 2.0 * c * (end - 2.0 * half))),
    })


def heinz_logconvexity_check(A, B, X, grid_size: int = 33,
                             rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Midpoint log-convexity ``f(s) f(t) >= f((s + t)/2)^2`` over all grid pairs.

    Uses the Frobenius Heinz functional.  The reported sides are those of
    the pair with the smallest relative margin.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    f = heinz_handle(A, B, X, NormKind.FROBENIUS)
    fine = np.linspace(0.0, 1.0, 2 * (grid_size - 1) + 1)
    vals = f.at(fine)
    if not np.all(vals > 0):
        return engine.certify("heinz-log-convexity", 0.0, 0.0, "<=", rtol, margin=math.nan)
    i, k = np.triu_indices(grid_size, 1)
    fi, fk, fm = vals[2 * i], vals[2 * k], vals[i + k]
    prod, sq = fi * fk, fm * fm
    rel = (prod - sq) / np.maximum(np.maximum(prod, sq), 1.0)
    w = int(np.argmin(rel))
    return engine.certify("heinz-log-convexity", sq[w], prod[w], "<=", rtol,
                          details={"pair": (float(fine[2 * i[w]]), float(fine[2 * k[w]])),
                                   "min_relative_margin": float(rel[w])})


def heinz_squared_refinement(A, B, X, nu: float, N: int,
                             rtol: float = DEFAULT_RTOL) -> CertificationReport:
    """Squared Heinz refinement for the Frobenius norm,
    ``f(nu)^2 + 2 A_1^2 (||AX+XB||^2 - 4 ||A^{1/2} X B^{1/2}||^2)
    + sum_{j>=2} A_j Delta_j f^2 <= ||AX+XB||^2``.

    The closed-form first correction is compared against ``A_1^2 Delta_1 f^2``
    (``details['first_term_gap']``).
    """
    A, B, X = _heinz_inputs(A, B, X)
    f = heinz_handle(A, B, X, NormKind.FROBENIUS)
    rep = engine.squared_refined_margin(f, N, nu, rtol)
    A1 = coefficients(1, nu).A
    end2 = matrix_norm(A.data @ X + X @ B.data) ** 2
    mid2 = matrix_norm(A.sqrt @ X @ B.sqrt) ** 2
    first = 2.0 * A1 * A1 * (end2 - 4.0 * mid2)
    display_first = 2.0 * A1 * A1 * (end2 - 2.0 * mid2)
    engine_first = A1 * A1 * rep.terms[0].delta
    return engine.certify("heinz-squared-refinement", rep.lhs, rep.rhs, "<=", rtol, rep.terms, {
        "first_term": first,
        "first_term_gap": abs(first - engine_first),
        "display_margin": rep.margin - (display_first - first),
    })


# --------------------------------------------------------------------------
# random instances and JSON

def random_spd(dim: int, rng: np.random.Generator, complex_: bool = False,
               log_range=(-2.0, 2.0), max_condition: float = 1e4) -> np.ndarray:
    """``Q D Q^*`` with ``Q`` from a QR of a Gaussian matrix and log-uniform ``D``."""
    G = rng.standard_normal((dim, dim))
    if complex_:
        G = G + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    d = 10.0 ** rng.uniform(*log_range, size=dim)
    d = np.maximum(d, d.max() / max_condition)
    M = (Q * d) @ Q.conj().T
    return 0.5 * (M + M.conj().T)


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": n, "complex": bool, "data": [[...], ...]}``.

    Complex entries are ``[re, im]`` pairs.
    """
    try:
        dim = int(obj["dim"])
        is_complex = bool(obj.get("complex", False))
        data = obj["data"]
        if is_complex:
            arr = np.array([[complex(e[0], e[1]) for e in row] for row in data])
        else:
            arr = np.array(data, dtype=float)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if arr.shape != (dim, dim):
        raise ValueError(f"matrix data has shape {arr.shape}, expected ({dim}, {dim})")
    return arr


def matrix_to_json(M) -> dict:
    M = np.asarray(M)
    is_complex = bool(np.iscomplexobj(M) and np.any(M.imag))
    if is_complex:
        data = [[[float(e.real), float(e.imag)] for e in row] for row in M]
    else:
        data = np.real(M).astype(float).tolist()
    return {"dim": int(M.shape[0]), "complex": is_complex, "data": data}
