"""Seeded random instances for batch certification.

Each instance draws from its own stream ``SeedSequence(seed, spawn_key=(index,))``,
so ``(seed, index)`` fixes it bit for bit regardless of how many other
instances are generated or in which order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lp_interpolation import ExponentTriple, WeightedVector
from .matrix_means import random_spd
from .scalar_means import MeanPair

KINDS = ("scalar", "matrix", "vector")


@dataclass(frozen=True)
class Instance:
    kind: str
    index: int
    nu: float
    data: dict = field(default_factory=dict)


def instance_rng(seed: int, index: int) -> np.random.Generator:
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))


def random_triple(rng: np.random.Generator, allow_inf: bool = True) -> ExponentTriple:
    """``p`` log-uniform in ``[0.5, 4]``; ``q`` and ``r`` spaced above it.

    ``r`` is infinite with probability 1/4 when ``allow_inf``.
    """
    p = 10.0 ** rng.uniform(math.log10(0.5), math.log10(4.0))
    q = p * 10.0 ** rng.uniform(0.02, 0.6)
    if allow_inf and rng.uniform() < 0.25:
        r = math.inf
    else:
        r = q * 10.0 ** rng.uniform(0.02, 0.8)
    return ExponentTriple(p, q, r)


def generate_instance(kind: str, dim: int, seed: int, index: int) -> Instance:
    """Deterministic random instance.

    scalar
        ``MeanPair`` with entries log-uniform in ``[1e-3, 1e3]``.
    matrix
        SPD pair ``A, B`` of size ``dim`` (``Q D Q^*``, spectrum log-uniform in
        ``[1e-2, 1e2]``) and a Gaussian ``X``.
    vector
        ``WeightedVector`` of length ``dim`` with values uniform in
        ``[-10, 10]`` (never all zero), weights log-uniform in ``[0.1, 10]``,
        and a random exponent triple.

    ``nu`` is uniform in ``[0, 1]`` (derived from the triple for vectors).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}")
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = instance_rng(seed, index)
    if kind == "scalar":
        x, y = 10.0 ** rng.uniform(-3.0, 3.0, size=2)
        return Instance(kind, index, float(rng.uniform()), {"pair": MeanPair(float(x), float(y))})
    if kind == "matrix":
        A = random_spd(dim, rng)
        B = random_spd(dim, rng)
        X = rng.standard_normal((dim, dim))
        return Instance(kind, index, float(rng.uniform()), {"A": A, "B": B, "X": X})
    values = rng.uniform(-10.0, 10.0, size=dim)
    while not np.any(values):
        values = rng.uniform(-10.0, 10.0, size=dim)
    weights = 10.0 ** rng.uniform(-1.0, 1.0, size=dim)
    triple = random_triple(rng)
    return Instance(kind, index, triple.nu,
                    {"vector": WeightedVector(values, weights), "triple": triple})


def random_length(seed: int, index: int, high: int = 64) -> int:
    """Vector length uniform in ``1..high`` from a stream separate from the instance."""
    rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index), 1)))
    return int(rng.integers(1, high + 1))
