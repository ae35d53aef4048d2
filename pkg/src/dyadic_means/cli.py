"""Command-line front end: batch certification with CSV or JSON margin reports.

Exit status is 0 when every verdict is ``Holds``, 1 when any is not, and 2
on usage, parse or precondition errors.  Reports go to standard output and
diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable, List, Optional

import numpy as np

from . import engine, lp_interpolation as lp, matrix_means as mm, scalar_means as sm
from .engine import FunctionHandle, Shape, Verdict
from .instances import generate_instance, random_length

COLUMNS = ("statement_id", "instance_id", "N", "nu", "j", "A_j", "Delta_j", "term",
           "lhs", "rhs", "margin", "verdict")
COMMANDS = ("refine", "reverse", "converge", "means", "matrix", "lp")
CHECKS = ("young", "arith-harm", "arith-harm-reverse", "kantorovich",
          "heinz", "heinz-log", "heinz-squared")
TOL_ENV = "DYADIC_TOL"


class UsageError(ValueError):
    """Bad flags, function spec, input file or command precondition."""


# --------------------------------------------------------------------------
# function mini-language

def _floats(text: str, count: Optional[int], spec: str) -> List[float]:
    try:
        vals = [float(s) for s in text.split(",")] if text else []
    except ValueError:
        raise UsageError(f"bad numeric argument in function spec {spec!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"function spec {spec!r} needs {count} argument(s)")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"non-finite argument in function spec {spec!r}")
    return vals


def _pow_shape(k: float, a: float) -> Shape:
    if k == 0 or k == 1:
        return Shape.CONVEX
    if float(k).is_integer() and int(k) % 2 == 0 and k > 0:
        return Shape.CONVEX
    if a > 0 and k < 0:
        return Shape.LOG_CONVEX
    if a >= 0 and k > 1:
        return Shape.CONVEX
    return Shape.UNCONSTRAINED


def _heinz_from_file(path: str) -> FunctionHandle:
    data = _load_json(path)
    try:
        A, B = mm.matrix_from_json(data["A"]), mm.matrix_from_json(data["B"])
        X = mm.matrix_from_json(data["X"])
        norm = mm.NormKind(data.get("norm", "frobenius"))
        return mm.heinz_handle(A, B, X, norm)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed Heinz input {path}: {exc}") from exc


def parse_function_spec(spec: str, a: float = 0.0, b: float = 1.0,
                        assume_convex: bool = False) -> FunctionHandle:
    """Build a handle on ``[a, b]`` from the mini-language.

    ``exp``, ``exp:c``, ``pow:k``, ``poly:c0,c1,...``, ``young:x,y``,
    ``harm:x,y``, ``heinz-file:path`` and ``abs:c``.  ``--assume-convex``
    only affects ``poly``.  ``heinz-file`` always lives on ``[0, 1]``.
    """
    name, _, arg = spec.partition(":")
    try:
        if name == "exp":
            (c,) = _floats(arg, 1, spec) if arg else (1.0,)
            return FunctionHandle(lambda t: np.exp(c * t), a, b, Shape.LOG_CONVEX, name=spec)
        if name == "pow":
            (k,) = _floats(arg, 1, spec)
            if (a <= 0 and k < 0) or (a < 0 and not float(k).is_integer()):
                raise UsageError(f"t^{k} is undefined on part of [{a}, {b}]")
            return FunctionHandle(lambda t: np.power(t, k), a, b, _pow_shape(k, a), name=spec)
        if name == "poly":
            coeffs = _floats(arg, None, spec)
            if not coeffs:
                raise UsageError("poly needs at least one coefficient")
            poly = np.polynomial.Polynomial(coeffs)
            shape = Shape.CONVEX if assume_convex or len(coeffs) <= 2 else Shape.UNCONSTRAINED
            return FunctionHandle(poly, a, b, shape, name=spec)
        if name == "young":
            x, y = _floats(arg, 2, spec)
            if x <= 0 or y <= 0:
                raise UsageError("young needs positive x, y")
            return FunctionHandle(lambda t: np.power(x, 1.0 - t) * np.power(y, t), a, b,
                                  Shape.LOG_CONVEX, name=spec)
        if name == "harm":
            x, y = _floats(arg, 2, spec)
            if x <= 0 or y <= 0:
                raise UsageError("harm needs positive x, y")
            den = lambda t: (1.0 - t) / x + t / y  # noqa: E731
            if den(a) <= 0 or den(b) <= 0:
                raise UsageError(f"harm:{x},{y} is not positive on [{a}, {b}]")
            return FunctionHandle(lambda t: 1.0 / den(t), a, b, Shape.LOG_CONVEX, name=spec)
        if name == "abs":
            (c,) = _floats(arg, 1, spec)
            return FunctionHandle(lambda t: np.abs(t - c), a, b, Shape.CONVEX, name=spec)
        if name == "heinz-file":
            if not arg:
                raise UsageError("heinz-file needs a path")
            if (a, b) != (0.0, 1.0):
                raise UsageError("heinz-file handles live on [0, 1]")
            return _heinz_from_file(arg)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown function spec {spec!r}")


# --------------------------------------------------------------------------
# configuration and rows

@dataclass
class RunConfig:
    command: str
    function_spec: str = "exp"
    nu: Optional[float] = None
    a: float = 0.0
    b: float = 1.0
    N: int = 5
    trials: int = 10
    dim: Optional[int] = None
    seed: int = 0
    tol: Optional[float] = None
    output_format: str = "csv"
    input_path: Optional[str] = None
    N_max: int = 10
    grid: int = 1025
    check: str = "all"
    statement: str = "all"
    norm: str = "frobenius"
    p: Optional[float] = None
    q: Optional[float] = None
    r: Optional[float] = None
    x: Optional[float] = None
    y: Optional[float] = None
    assume_convex: bool = False
    plot_data: Optional[str] = None
    timestamp: bool = True
    jobs: int = 1
    inject_false: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.nu is not None and not 0.0 <= self.nu <= 1.0:
            raise UsageError(f"--nu must lie in [0, 1], got {self.nu}")
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise UsageError(f"need finite a < b, got [{self.a}, {self.b}]")
        for name, lo in (("N", 1), ("N_max", 1), ("trials", 1), ("grid", 2), ("jobs", 1)):
            if getattr(self, name) < lo:
                raise UsageError(f"--{name.replace('_', '-')} must be at least {lo}")
        if self.N > engine.MAX_LEVEL or self.N_max > engine.MAX_LEVEL:
            raise UsageError(f"N is limited to {engine.MAX_LEVEL}")
        if self.dim is not None and self.dim < 1:
            raise UsageError("--dim must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if self.tol is not None and not (self.tol > 0 and math.isfinite(self.tol)):
            raise UsageError("tolerance must be positive")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.check not in CHECKS + ("all",):
            raise UsageError(f"unknown check {self.check!r}")
        if self.statement != "all" and self.statement not in sm.STATEMENTS:
            raise UsageError(f"unknown statement {self.statement!r}")
        if self.norm not in [k.value for k in mm.NormKind]:
            raise UsageError(f"unknown norm {self.norm!r}")
        if (self.x is None) != (self.y is None):
            raise UsageError("--x and --y go together")
        if self.x is not None and not (self.x > 0 and self.y > 0):
            raise UsageError("--x and --y must be positive")
        given = [v is not None for v in (self.p, self.q, self.r)]
        if any(given) and not all(given):
            raise UsageError("--p, --q and --r go together")
        if all(given):
            try:
                lp.interpolation_nu(self.p, self.q, self.r)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        return self


@dataclass
class MarginRow:
    statement_id: str
    instance_id: int
    N: Optional[int]
    nu: Optional[float]
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    margin: Optional[float] = None
    verdict: Optional[str] = None
    j: Optional[int] = None
    A_j: Optional[float] = None
    Delta_j: Optional[float] = None
    term: Optional[float] = None

    @property
    def is_term(self) -> bool:
        return self.j is not None

    def as_dict(self) -> dict:
        return {c: getattr(self, c) for c in COLUMNS}


def _report_rows(rep, instance_id, N, nu, with_terms=False) -> List[MarginRow]:
    rows = []
    if with_terms:
        for t in getattr(rep, "terms", ()):
            rows.append(MarginRow(rep.statement_id, instance_id, N, nu, j=t.j, A_j=t.weight,
                                  Delta_j=t.delta, term=t.contribution))
    if isinstance(rep, mm.LoewnerComparison):
        lhs, rhs = (float(np.linalg.eigvalsh(M)[-1]) for M in (rep.lhs, rep.rhs))
    else:
        lhs, rhs = rep.lhs, rep.rhs
    rows.append(MarginRow(rep.statement_id, instance_id, N, nu, float(lhs), float(rhs),
                          float(rep.margin), rep.verdict.value))
    return rows


# --------------------------------------------------------------------------
# commands

def _rtol(config: RunConfig, default: float) -> float:
    return config.tol if config.tol is not None else default


def _single_nu(config):
    return 0.3 if config.nu is None else config.nu


def _run_refine(config: RunConfig, err) -> List[MarginRow]:
    f = parse_function_spec(config.function_spec, config.a, config.b, config.assume_convex)
    if not f.shape.is_convex:
        raise UsageError(f"{config.function_spec} is not known to be convex; "
                         "use --assume-convex for poly")
    nu, N, rtol = _single_nu(config), config.N, _rtol(config, engine.DEFAULT_RTOL)
    rows = _report_rows(engine.refined_secant_margin(f, N, nu, rtol), 0, N, nu, True)
    if f.shape is Shape.LOG_CONVEX:
        rows += _report_rows(engine.log_refinement_margin(f, N, nu, rtol), 0, N, nu)
        rows += _report_rows(engine.squared_refined_margin(f, N, nu, rtol), 0, N, nu, True)
    return rows


def _run_reverse(config: RunConfig, err) -> List[MarginRow]:
    f = parse_function_spec(config.function_spec, config.a, config.b, config.assume_convex)
    if not f.shape.is_convex:
        raise UsageError(f"{config.function_spec} is not known to be convex; "
                         "use --assume-convex for poly")
    nu, N, rtol = _single_nu(config), config.N, _rtol(config, engine.DEFAULT_RTOL)
    rows = _report_rows(engine.reverse_margin(f, N, nu, rtol), 0, N, nu, True)
    if f.shape is Shape.LOG_CONVEX:
        rows += _report_rows(engine.log_reverse_margin(f, N, nu, rtol), 0, N, nu)
        rows += _report_rows(engine.squared_reverse_margin(f, N, nu, rtol), 0, N, nu, True)
    return rows


def _run_converge(config: RunConfig, err) -> List[MarginRow]:
    """Rows ``(N, sup_gap(N))``; the statement is that the gap never grows.

    ``rhs`` is the previous gap (the sup of the secant gap itself for N = 1).
    """
    f = parse_function_spec(config.function_spec, config.a, config.b, config.assume_convex)
    if not f.shape.is_convex:
        raise UsageError(f"{config.function_spec} is not known to be convex")
    rtol = _rtol(config, engine.DEFAULT_RTOL)
    profile = engine.interpolant_gap_profile(f, config.N_max, config.grid)
    nu = np.linspace(0.0, 1.0, config.grid)
    prev = float(np.max(np.abs(engine.secant(f, nu) - f.at(nu))))
    rows = []
    for N, gap in profile:
        rep = engine.certify("interpolant-gap", gap, prev, "<=", rtol)
        rows += _report_rows(rep, 0, N, None)
        prev = gap
    if config.plot_data:
        try:
            with open(config.plot_data, "w") as fh:
                fh.write("# N sup_gap\n")
                for N, gap in profile:
                    fh.write(f"{N} {gap!r}\n")
        except OSError as exc:
            raise UsageError(f"cannot write plot data: {exc}") from exc
    return rows


def _batch(config: RunConfig, work: Callable[[int], List[MarginRow]]) -> List[MarginRow]:
    """Run ``work(index)`` for every trial; rows come back in index order."""
    indices = range(config.trials)
    if config.jobs > 1:
        with ThreadPoolExecutor(config.jobs) as pool:
            chunks = list(pool.map(work, indices))
    else:
        chunks = [work(i) for i in indices]
    return [row for chunk in chunks for row in chunk]


def _run_means(config: RunConfig, err) -> List[MarginRow]:
    rtol = _rtol(config, engine.DEFAULT_RTOL)
    names = list(sm.STATEMENTS) if config.statement == "all" else [config.statement]
    N = config.N

    def work(i):
        inst = generate_instance("scalar", 1, config.seed, i)
        pair = inst.data["pair"] if config.x is None else sm.MeanPair(config.x, config.y)
        nu = inst.nu if config.nu is None else config.nu
        rows = []
        for name in names:
            rows += _report_rows(sm.STATEMENTS[name](pair, nu, N, rtol), i, N, nu)
        return rows

    if config.x is not None:
        config.trials = 1
    return _batch(config, work)


def _matrix_reports(check, A, B, X, nu, N, norm, rtol):
    out = []
    if check in ("young", "all"):
        out.append(mm.op_young_refinement(A, B, nu, N, rtol))
    if check in ("arith-harm", "all"):
        out.append(mm.op_arith_harm_refinement(A, B, nu, N, rtol))
    if check in ("arith-harm-reverse", "all"):
        out.append(mm.op_arith_harm_reverse(A, B, nu, N, rtol))
    if check in ("kantorovich", "all"):
        out.append(mm.op_kantorovich_geom_harm(A, B, nu, rtol))
    if check in ("heinz", "all"):
        rep = mm.heinz_refinement(A, B, X, nu, N, norm, rtol)
        out += [rep, rep.details["reverse"]]
    if check in ("heinz-log", "all"):
        out.append(mm.heinz_logconvexity_check(A, B, X, rtol=rtol))
    if check in ("heinz-squared", "all"):
        out.append(mm.heinz_squared_refinement(A, B, X, nu, N, rtol))
    return out


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _matrix_input(path):
    """``{"A": matrix, "B": matrix, "X": matrix (optional)}``."""
    data = _load_json(path)
    try:
        A, B = mm.matrix_from_json(data["A"]), mm.matrix_from_json(data["B"])
        X = mm.matrix_from_json(data["X"]) if "X" in data else np.eye(A.shape[0])
        mm.as_positive(A), mm.as_positive(B)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix input {path}: {exc}") from exc
    return A, B, X


_LEVEL_FREE = frozenset({"op-kantorovich-geom-harm", "heinz-log-convexity"})


def _run_matrix(config: RunConfig, err) -> List[MarginRow]:
    rtol = _rtol(config, mm.LOEWNER_RTOL)
    norm = mm.NormKind(config.norm)
    dim, N = config.dim or 3, config.N
    fixed = _matrix_input(config.input_path) if config.input_path else None
    if fixed is not None:
        config.trials = 1

    def work(i):
        inst = generate_instance("matrix", dim, config.seed, i)
        A, B, X = fixed if fixed is not None else (inst.data["A"], inst.data["B"], inst.data["X"])
        nu = inst.nu if config.nu is None else config.nu
        rows = []
        for rep in _matrix_reports(config.check, A, B, X, nu, N, norm, rtol):
            level = None if rep.statement_id in _LEVEL_FREE else N
            rows += _report_rows(rep, i, level, nu)
        return rows

    return _batch(config, work)


def _vector_input(path):
    data = _load_json(path)
    try:
        return lp.WeightedVector.from_json(data)
    except ValueError as exc:
        raise UsageError(f"malformed vector input {path}: {exc}") from exc


def _run_lp(config: RunConfig, err) -> List[MarginRow]:
    rtol = _rtol(config, engine.DEFAULT_RTOL)
    N = config.N
    fixed = _vector_input(config.input_path) if config.input_path else None
    if fixed is not None:
        config.trials = 1
    triple = lp.ExponentTriple(config.p, config.q, config.r) if config.p is not None else None
    grid = np.linspace(0.25, 4.0, 16)

    def work(i):
        length = config.dim or random_length(config.seed, i)
        inst = generate_instance("vector", length, config.seed, i)
        v = fixed if fixed is not None else inst.data["vector"]
        tr = triple or inst.data["triple"]
        if not v.nonzero:
            raise UsageError("vector must have a nonzero entry")
        ref = lp.lp_refinement(v, tr, N, rtol)
        reports = [ref, *ref.details["one_term"], *lp.lp_reverse(v, tr, N, rtol),
                   lp.logconvexity_equivalence_check(v, grid, rtol)]
        rows = []
        for rep in reports:
            rows += _report_rows(rep, i, N, tr.nu)
        return rows

    return _batch(config, work)


RUNNERS = {"refine": _run_refine, "reverse": _run_reverse, "converge": _run_converge,
           "means": _run_means, "matrix": _run_matrix, "lp": _run_lp}


# --------------------------------------------------------------------------
# output

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(rows: List[MarginRow], output_format: str, header: Optional[str] = None) -> str:
    buf = io.StringIO()
    if output_format == "csv":
        if header:
            buf.write(f"# {header}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([_fmt(v) for v in row.as_dict().values()])
    else:
        doc = {"rows": [row.as_dict() for row in rows]}
        if header:
            doc = {"generated": header, **doc}
        buf.write(json.dumps(doc, indent=1, allow_nan=True))
        buf.write("\n")
    return buf.getvalue()


def run(config: RunConfig, out=None, err=None) -> int:
    """Execute ``config``; write the report to ``out`` and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.validate()
        rows = RUNNERS[config.command](config, err)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (ValueError, engine.ShapeError, mm.NumericalFault) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if config.inject_false:
        rows.append(MarginRow("injected-false", 0, None, None, 1.0, 0.0, -1.0,
                              Verdict.VIOLATED.value))
    header = None
    if config.timestamp:
        header = "generated " + _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    out.write(render(rows, config.output_format, header))
    finals = [r for r in rows if not r.is_term]
    failed = [r for r in finals if r.verdict != Verdict.HOLDS.value]
    for r in failed:
        print(f"{r.verdict}: {r.statement_id} instance {r.instance_id} margin {r.margin!r}",
              file=err)
    return 1 if failed else 0


# --------------------------------------------------------------------------
# argument parsing

def _real(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_real, help=f"relative tolerance (env {TOL_ENV})")
    common.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    common.add_argument("--no-timestamp", dest="timestamp", action="store_false",
                        help="omit the timestamp header line")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--nu", type=_real)
    common.add_argument("--N", type=int, default=5)
    common.add_argument("--jobs", type=int, default=1, help="worker threads for batches")
    common.add_argument("--inject-false", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="dyadic-means", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fn_args(p):
        p.add_argument("--fn", dest="function_spec", default="exp")
        p.add_argument("--a", type=_real, default=0.0)
        p.add_argument("--b", type=_real, default=1.0)
        p.add_argument("--assume-convex", action="store_true")

    for name in ("refine", "reverse"):
        fn_args(sub.add_parser(name, parents=[common], help=f"{name} a convex function"))
    p = sub.add_parser("converge", parents=[common], help="interpolant gap profile")
    fn_args(p)
    p.add_argument("--N-max", dest="N_max", type=int, default=10)
    p.add_argument("--grid", type=int, default=1025)
    p.add_argument("--plot-data", help="write 'N sup_gap' lines to this file")

    p = sub.add_parser("means", parents=[common], help="scalar mean inequalities")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--x", type=_real)
    p.add_argument("--y", type=_real)
    p.add_argument("--statement", default="all", choices=("all", *sm.STATEMENTS))

    p = sub.add_parser("matrix", parents=[common], help="operator and Heinz inequalities")
    p.add_argument("--check", default="all", choices=(*CHECKS, "all"))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--dim", type=int)
    p.add_argument("--norm", default="frobenius", choices=[k.value for k in mm.NormKind])
    p.add_argument("--input", dest="input_path")

    p = sub.add_parser("lp", parents=[common], help="L^p interpolation inequalities")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--dim", type=int, help="vector length (random in 1..64 if omitted)")
    p.add_argument("--p", type=_real)
    p.add_argument("--q", type=_real)
    p.add_argument("--r", type=_real)
    p.add_argument("--input", dest="input_path")
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    known = {f.name for f in fields(RunConfig)}
    config = RunConfig(**{k: v for k, v in vars(ns).items() if k in known})
    if config.tol is None and os.environ.get(TOL_ENV):
        try:
            config.tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} is not a number") from None
    return config


def main(argv=None) -> int:
    try:
        config = config_from_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
