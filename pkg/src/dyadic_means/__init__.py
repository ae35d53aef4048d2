"""Dyadic refinements of convexity inequalities and their certification.

Submodules
----------
engine
    Dyadic coefficients, correction terms, remainder identity, refined,
    reversed, squared and multiplicative inequalities for a function handle.
scalar_means
    Closed forms for weighted arithmetic, geometric, harmonic and Heinz means.
matrix_means
    Operator means under the Loewner order and Heinz norm functionals.
lp_interpolation
    Weighted discrete L^p norms and refined interpolation between them.
cli
    Batch certification from the command line.
"""
from .engine import (
    CertificationReport,
    DyadicCoefficients,
    FunctionHandle,
    RefinementTerm,
    Shape,
    ShapeError,
    Verdict,
    coefficients,
    convexity_witness,
    dyadic_parameters,
    interpolant_gap_profile,
    log_refinement_margin,
    log_reverse_margin,
    refined_secant_margin,
    refinement_sum,
    refinement_sums,
    refinement_terms,
    remainder_identity,
    reverse_margin,
    secant,
    shifted_dyadic_parameters,
    squared_refined_margin,
    squared_reverse_margin,
)
from .instances import generate_instance
from .lp_interpolation import ExponentTriple, WeightedVector, interpolation_nu, lp_norm
from .matrix_means import (
    HermitianMatrix,
    LoewnerComparison,
    NormKind,
    NumericalFault,
    OpMeanKind,
    PositiveMatrix,
    heinz_functional,
    loewner_margin,
    op_mean,
)
from .scalar_means import MeanKind, MeanPair, mean

__version__ = "0.1.0"
