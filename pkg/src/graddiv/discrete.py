"""Relative divergence over finite ordered sets and its probability forms.

The core quantity is D(F||G) = sum_k ln(dG_k / dF_k) * dF_k over the shared
increments of two grading samples. Taking F to be a cumulative distribution
and G the position function k recovers Shannon entropy; taking both to be
cumulative distributions recovers relative entropy with the sign convention
sum f ln(g/f), which is nonpositive for probability vectors (Gibbs).
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError
from .ordered import GradingSample, increments

__all__ = [
    "ProbabilityVector",
    "DivergenceResult",
    "divergence_discrete",
    "relative_entropy",
    "shannon_entropy",
    "partition_entropy",
    "cdf_grading",
    "position_grading",
]

WEIGHT_SUM_TOL = 1e-9

NEGATIVE_INFINITY = "negative_infinity"
EMPTY = "empty"
_KNOWN_FLAGS = frozenset({NEGATIVE_INFINITY, EMPTY})


@dataclass(frozen=True)
class ProbabilityVector:
    """Nonnegative weights summing to one (within a small absolute slack
    to accommodate rounding in user-supplied data)."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if not w:
            raise InvalidInputError("a probability vector cannot be empty")
        for x in w:
            if not math.isfinite(x) or x < 0:
                raise InvalidInputError(f"weights must be finite and >= 0, got {x!r}")
        total = math.fsum(w)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidInputError(
                f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got {total!r}"
            )
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class DivergenceResult:
    """A divergence value in nats plus convergence diagnostics.

    terms_used counts the terms (or quadrature panels) that entered the
    finite accumulation. dropped_mass is the total forward-grading mass
    attached to terms that could not enter it: zero-mass terms contribute
    nothing, and terms whose reference increment is zero force the value
    to -inf, recorded by the ``negative_infinity`` flag. error_estimate
    is nonzero only for quadrature-backed results.
    """

    value: float
    terms_used: int
    dropped_mass: float = 0.0
    error_estimate: float = 0.0
    flags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))
        unknown = self.flags - _KNOWN_FLAGS
        if unknown:
            raise InvalidInputError(f"unknown result flags: {sorted(unknown)}")
        if self.terms_used < 0 or self.dropped_mass < 0:
            raise InvalidInputError("terms_used and dropped_mass must be >= 0")
        if math.isfinite(self.value) == (NEGATIVE_INFINITY in self.flags):
            raise InvalidInputError(
                "value must be finite exactly when negative_infinity is not flagged"
            )

    @property
    def kl(self) -> float:
        """Negated value: the conventional nonnegative Kullback-Leibler
        orientation for probability inputs."""
        return -self.value


def _result(value: float, terms: int, dropped: float, neg_inf: bool,
            empty: bool = False) -> DivergenceResult:
    flags = set()
    if neg_inf:
        flags.add(NEGATIVE_INFINITY)
        value = -math.inf
    if empty:
        flags.add(EMPTY)
    # + 0.0 turns a -0.0 accumulator into +0.0
    return DivergenceResult(
        value=value + 0.0,
        terms_used=terms,
        dropped_mass=dropped,
        flags=frozenset(flags),
    )


def divergence_discrete(f: GradingSample, g: GradingSample) -> DivergenceResult:
    """Relative divergence of grading sample f from g on a shared ordered set.

    Both samples are strictly increasing, so every increment is positive and
    the result is always finite.
    """
    if len(f) != len(g):
        raise InvalidInputError(
            f"samples live on different ordered sets: {len(f)} vs {len(g)} grades"
        )
    total = 0.0
    for df, dg in zip(increments(f), increments(g)):
        total += math.log(dg / df) * df
    return _result(total, terms=len(f) - 1, dropped=0.0, neg_inf=False)


def relative_entropy(f: ProbabilityVector, g: ProbabilityVector) -> DivergenceResult:
    """sum_k f_k ln(g_k / f_k), nonpositive for probability vectors.

    Terms with f_k = 0 contribute nothing and are dropped from the term
    count. A term with f_k > 0 and g_k = 0 diverges: the value becomes -inf
    and f_k joins dropped_mass. Use ``.kl`` for the nonnegative orientation.
    """
    if len(f) != len(g):
        raise InvalidInputError(
            f"vectors have different lengths: {len(f)} vs {len(g)}"
        )
    total = 0.0
    terms = 0
    dropped = 0.0
    neg_inf = False
    for fk, gk in zip(f.weights, g.weights):
        if fk == 0.0:
            continue
        if gk == 0.0:
            neg_inf = True
            dropped += fk
            continue
        total += fk * math.log(gk / fk)
        terms += 1
    return _result(total, terms, dropped, neg_inf)


def shannon_entropy(f: ProbabilityVector) -> DivergenceResult:
    """-sum_k f_k ln f_k with 0 ln 0 = 0.

    Equals the divergence of the running-sum grading of f from the position
    function, which is what makes it a special case of divergence_discrete.
    """
    total = 0.0
    terms = 0
    for fk in f.weights:
        if fk == 0.0:
            continue
        total -= fk * math.log(fk)
        terms += 1
    return _result(total, terms, dropped=0.0, neg_inf=False)


def partition_entropy(masses) -> DivergenceResult:
    """-sum_k m_k ln m_k for nonnegative cell masses.

    No normalization is required: masses above 1 contribute negative terms,
    so the total may be negative for non-normalized measures.
    """
    ms = [float(m) for m in masses]
    for m in ms:
        if not math.isfinite(m) or m < 0:
            raise InvalidInputError(f"masses must be finite and >= 0, got {m!r}")
    total = 0.0
    terms = 0
    for m in ms:
        if m == 0.0:
            continue
        total -= m * math.log(m)
        terms += 1
    return _result(total, terms, dropped=0.0, neg_inf=False, empty=not ms)


def cdf_grading(f: ProbabilityVector) -> GradingSample:
    """Running-sum grading 0, f_1, f_1+f_2, ... of a probability vector.

    Requires strictly positive weights, otherwise consecutive grades tie.
    """
    grades = [0.0]
    acc = 0.0
    for fk in f.weights:
        acc += fk
        grades.append(acc)
    return GradingSample(tuple(grades))


def position_grading(n: int) -> GradingSample:
    """The position function 0, 1, ..., n on an enumerated set."""
    if n < 1:
        raise InvalidInputError(f"need at least one element, got n={n}")
    return GradingSample(tuple(float(k) for k in range(n + 1)))
