import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from dyadic_means.engine import FunctionHandle, Shape  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def convex_family(rng):
    """Random convex function on a random interval, with a readable name."""
    kind = rng.integers(6)
    a = float(rng.uniform(-2.0, 1.0))
    b = a + float(rng.uniform(0.5, 3.0))
    c = float(rng.uniform(0.2, 2.0))
    s = float(rng.uniform(a, b))
    if kind == 0:
        return FunctionHandle(lambda x: np.exp(c * x), a, b, Shape.LOG_CONVEX, name=f"exp({c}x)")
    if kind == 1:
        return FunctionHandle(lambda x: c * (x - s) ** 2, a, b, Shape.CONVEX, name="parabola")
    if kind == 2:
        return FunctionHandle(lambda x: np.abs(x - s) + c * x, a, b, Shape.CONVEX, name="kink")
    if kind == 3:
        return FunctionHandle(lambda x: np.cosh(c * (x - s)), a, b, Shape.LOG_CONVEX, name="cosh")
    if kind == 4:
        return FunctionHandle(lambda x: np.logaddexp(0.0, c * x), a, b, Shape.CONVEX,
                              name="softplus")
    return FunctionHandle(lambda x: (x - a + 0.1) ** -c, a, b, Shape.LOG_CONVEX, name="inv-power")


def log_convex_family(rng):
    """Exponentials of convex functions and positive mixtures of exponentials."""
    kind = rng.integers(3)
    a = float(rng.uniform(-1.0, 0.5))
    b = a + float(rng.uniform(0.5, 2.0))
    c1, c2 = rng.uniform(-2.0, 2.0, size=2)
    w = float(rng.uniform(0.1, 3.0))
    if kind == 0:
        return FunctionHandle(lambda x: np.exp(w * x * x + c1 * x), a, b, Shape.LOG_CONVEX,
                              name="exp-quadratic")
    if kind == 1:
        return FunctionHandle(lambda x: np.exp(c1 * x) + w * np.exp(c2 * x), a, b,
                              Shape.LOG_CONVEX, name="exp-mixture")
    return FunctionHandle(lambda x: np.cosh(c1 * x) + w, a, b, Shape.LOG_CONVEX, name="cosh-shift")


def unconstrained_family(rng):
    kind = rng.integers(3)
    a = float(rng.uniform(-2.0, 1.0))
    b = a + float(rng.uniform(0.5, 3.0))
    c = float(rng.uniform(1.0, 6.0))
    if kind == 0:
        return FunctionHandle(lambda x: np.sin(c * x) + 2.0, a, b, name="sine")
    if kind == 1:
        coeffs = rng.standard_normal(5)
        return FunctionHandle(np.polynomial.Polynomial(coeffs), a, b, name="quartic")
    return FunctionHandle(lambda x: np.tanh(c * x) * x, a, b, name="tanh")


def non_convex_family(index):
    """Twenty fixed functions, each concave somewhere on its domain."""
    c = 1.0 + 0.25 * index
    table = [
        lambda x: -x * x,
        lambda x: np.sin(c * x),
        lambda x: np.sqrt(x + 1.0),
        lambda x: np.log(x + 2.0),
        lambda x: -np.abs(x - 0.3),
        lambda x: x ** 3,
        lambda x: np.cos(c * x),
        lambda x: -np.exp(c * x),
        lambda x: np.tanh(c * (x - 0.5)),
        lambda x: x ** 4 - c * x * x,
    ]
    f = table[index % len(table)]
    a, b = (-1.0, 1.0) if index < 10 else (-0.5, 2.0)
    return FunctionHandle(f, a, b, name=f"non-convex-{index}")


#: (number, title, passed, detail) lines recorded by the acceptance tests
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(
            f"{'PASS' if passed else 'FAIL'}  [{number:2d}] {title}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


FAMILIES = {"convex": convex_family, "log-convex": log_convex_family,
            "unconstrained": unconstrained_family}
