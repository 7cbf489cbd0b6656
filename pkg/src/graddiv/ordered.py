"""Grading functions on finite linearly ordered sets.

A grading function assigns strictly increasing real grades to the elements
of a linearly ordered set, so its values alone can reconstruct the order.
This module holds the finite sampled form of such a function, its forward
increments, and the log-ratio rate function that drives every divergence
formula in the package.
"""

import math
from dataclasses import dataclass

from .errors import InvalidInputError

__all__ = ["GradingSample", "IncrementPair", "increments", "rate_h"]


@dataclass(frozen=True)
class GradingSample:
    """A grading function observed on an enumerated ordered set.

    ``grades[k]`` is the grade of the k-th element. Strict monotonicity is
    the defining property of a grading function and is enforced eagerly:
    a repeated grade would make downstream increment ratios undefined.
    """

    grades: tuple[float, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        grades = tuple(float(g) for g in self.grades)
        if len(grades) < 2:
            raise InvalidInputError(
                f"a grading sample needs at least 2 grades, got {len(grades)}"
            )
        for g in grades:
            if not math.isfinite(g):
                raise InvalidInputError(f"grades must be finite, got {g!r}")
        for k in range(1, len(grades)):
            if grades[k] <= grades[k - 1]:
                raise InvalidInputError(
                    "grades must be strictly increasing: "
                    f"grades[{k}]={grades[k]!r} <= grades[{k - 1}]={grades[k - 1]!r}"
                )
        labels = self.labels
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != len(grades):
                raise InvalidInputError(
                    f"{len(labels)} labels for {len(grades)} grades"
                )
        object.__setattr__(self, "grades", grades)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.grades)


@dataclass(frozen=True)
class IncrementPair:
    """Grade changes of two grading functions over the same element pair.

    Zero increments are representable (consumers decide how to treat them),
    negative ones are not: a grading function cannot decrease.
    """

    delta_g: float
    delta_f: float

    def __post_init__(self):
        object.__setattr__(self, "delta_g", float(self.delta_g))
        object.__setattr__(self, "delta_f", float(self.delta_f))
        for name, v in (("delta_g", self.delta_g), ("delta_f", self.delta_f)):
            if not math.isfinite(v):
                raise InvalidInputError(f"{name} must be finite, got {v!r}")
            if v < 0:
                raise InvalidInputError(f"{name} must be >= 0, got {v!r}")


def increments(sample: GradingSample) -> list[float]:
    """Forward differences grades[k] - grades[k-1], all strictly positive."""
    g = sample.grades
    return [g[k] - g[k - 1] for k in range(1, len(g))]


def rate_h(pair: IncrementPair) -> float:
    """Divergence rate per unit grade change: ln(delta_g / delta_f).

    Returns -inf when delta_g is zero (the weighted divergence term then
    genuinely diverges). Undefined when delta_f is zero, since the rate is
    measured per unit change of the forward grading.
    """
    if pair.delta_f == 0.0:
        raise InvalidInputError("rate is undefined for delta_f = 0")
    if pair.delta_g == 0.0:
        return -math.inf
    return math.log(pair.delta_g / pair.delta_f)
