"""Divergence and entropy of grading functions on linearly ordered sets.

A grading function assigns strictly increasing grades along a chain; the
divergence of one grading from another sums (or integrates) the log ratio
of their increments weighted by the graded side. Shannon entropy, relative
entropy, partition entropy, a chain-minimizing entropy for monotone set
functions, and a rescaling-invariant entropy for densities on an interval
all arise as special cases.
"""

from .capacity import (
    Capacity,
    CapacityEntropyReport,
    MaximalChain,
    capacity_entropy,
    chain_divergence,
    enumerate_chains,
)
from .continuous import (
    classical_entropy,
    corrected_entropy,
    divergence_continuous,
    riemann_divergence,
    symmetric_divergence,
)
from .discrete import (
    EMPTY,
    NEGATIVE_INFINITY,
    DivergenceResult,
    ProbabilityVector,
    cdf_grading,
    divergence_discrete,
    partition_entropy,
    position_grading,
    relative_entropy,
    shannon_entropy,
)
from .errors import ComputationError, GraddivError, InvalidInputError
from .families import (
    Beta,
    ContinuousGrading,
    PiecewiseLinearCdf,
    Power,
    Triangular,
    TruncatedNormal,
    Uniform,
    bracketed_inverse,
    invert_cdf,
)
from .ordered import GradingSample, IncrementPair, increments, rate_h
from .quadrature import QuadratureOutcome, QuadratureSpec, integrate_adaptive

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "GraddivError",
    "InvalidInputError",
    "ComputationError",
    "GradingSample",
    "IncrementPair",
    "increments",
    "rate_h",
    "ProbabilityVector",
    "DivergenceResult",
    "NEGATIVE_INFINITY",
    "EMPTY",
    "divergence_discrete",
    "relative_entropy",
    "shannon_entropy",
    "partition_entropy",
    "cdf_grading",
    "position_grading",
    "Capacity",
    "MaximalChain",
    "CapacityEntropyReport",
    "capacity_entropy",
    "chain_divergence",
    "enumerate_chains",
    "ContinuousGrading",
    "Uniform",
    "Triangular",
    "Beta",
    "TruncatedNormal",
    "Power",
    "PiecewiseLinearCdf",
    "invert_cdf",
    "bracketed_inverse",
    "QuadratureSpec",
    "QuadratureOutcome",
    "integrate_adaptive",
    "divergence_continuous",
    "riemann_divergence",
    "corrected_entropy",
    "symmetric_divergence",
    "classical_entropy",
]
