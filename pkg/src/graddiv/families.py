"""Continuous grading functions on a finite support interval.

Each family bundles a strictly increasing cdf with its density on a closed
interval [a, b]. The catalog is deliberately closed (arbitrary user code is
not a safe CLI input); piecewise_linear_cdf is the extensibility escape
hatch. Families admitting a closed-form quantile use it; the generic
fallback is a bracketed bisection/secant hybrid driven to a residual
tolerance, which monotonicity of the cdf guarantees to converge.
"""

import abc
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, ClassVar

from scipy.special import betainc, betaincinv, betaln, ndtri

from .errors import ComputationError, InvalidInputError

__all__ = [
    "ContinuousGrading",
    "Uniform",
    "Triangular",
    "Beta",
    "TruncatedNormal",
    "Power",
    "PiecewiseLinearCdf",
    "bracketed_inverse",
    "invert_cdf",
    "PROBABILITY_TOL",
    "INVERSE_RESIDUAL_TOL",
]

PROBABILITY_TOL = 1e-12

# Residual target for cdf inversion, relative to the grade span.
INVERSE_RESIDUAL_TOL = 1e-12

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _check_interval(a: float, b: float) -> tuple[float, float]:
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InvalidInputError(f"support endpoints must be finite, got [{a!r}, {b!r}]")
    if not a < b:
        raise InvalidInputError(f"support must satisfy a < b, got [{a!r}, {b!r}]")
    return a, b


def bracketed_inverse(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    residual_tol: float,
    max_iter: int = 200,
) -> float:
    """Solve fn(x) = target for increasing fn on [lo, hi].

    Alternates secant proposals with bisection so the bracket provably
    shrinks, and stops on the residual |fn(x) - target| rather than on x,
    which is the tolerance the cdf-inversion contract is stated in.
    """
    flo = fn(lo) - target
    fhi = fn(hi) - target
    if flo > 0.0 or fhi < 0.0:
        raise ComputationError(
            f"target {target!r} is not bracketed by [{lo!r}, {hi!r}]"
        )
    if abs(flo) <= residual_tol:
        return lo
    if abs(fhi) <= residual_tol:
        return hi
    for step in range(max_iter):
        x = None
        if step % 2 == 0 and fhi > flo:
            x = lo - flo * (hi - lo) / (fhi - flo)  # secant through the bracket
        if x is None or not lo < x < hi:
            x = 0.5 * (lo + hi)
        if not lo < x < hi:
            # bracket narrowed to adjacent floats without meeting the
            # residual: the function jumps across the target
            raise ComputationError(
                f"bracket exhausted at x={lo!r} with residual {flo!r}"
            )
        fx = fn(x) - target
        if abs(fx) <= residual_tol:
            return x
        if fx < 0.0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    raise ComputationError(
        f"no solution to residual {residual_tol!r} within {max_iter} iterations"
    )


class ContinuousGrading(abc.ABC):
    """A cdf/density pair acting as a grading function on [a, b]."""

    family: ClassVar[str]

    @property
    @abc.abstractmethod
    def support(self) -> tuple[float, float]: ...

    @abc.abstractmethod
    def cdf(self, x: float) -> float: ...

    @abc.abstractmethod
    def density(self, x: float) -> float: ...

    @abc.abstractmethod
    def shape_params(self) -> dict: ...

    @property
    def image(self) -> tuple[float, float]:
        a, b = self.support
        return (self.cdf(a), self.cdf(b))

    @property
    def grade_span(self) -> float:
        lo, hi = self.image
        return hi - lo

    def is_probability(self, tol: float = PROBABILITY_TOL) -> bool:
        lo, hi = self.image
        return abs(lo) <= tol and abs(hi - 1.0) <= tol

    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the density is not smooth."""
        return ()

    def inverse(self, u: float) -> float:
        """Quantile at grade u; overridden wherever a closed form exists."""
        a, b = self.support
        return bracketed_inverse(
            self.cdf, a, b, u, residual_tol=INVERSE_RESIDUAL_TOL * self.grade_span
        )


def invert_cdf(F: ContinuousGrading, u: float) -> float:
    """Quantile of F at u, validated against im(F) and clamped to support."""
    u = float(u)
    lo, hi = F.image
    if not lo <= u <= hi:
        raise InvalidInputError(f"u={u!r} is outside the grade image [{lo!r}, {hi!r}]")
    a, b = F.support
    return min(max(F.inverse(u), a), b)


@dataclass(frozen=True)
class Uniform(ContinuousGrading):
    a: float
    b: float

    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def cdf(self, x: float) -> float:
        return (x - self.a) / (self.b - self.a)

    def density(self, x: float) -> float:
        return 1.0 / (self.b - self.a)

    def inverse(self, u: float) -> float:
        return self.a + u * (self.b - self.a)

    def shape_params(self) -> dict:
        return {}


@dataclass(frozen=True)
class Triangular(ContinuousGrading):
    """Triangular density on [a, b] with mode c, a <= c <= b."""

    a: float
    c: float
    b: float

    family: ClassVar[str] = "triangular"

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        c = float(self.c)
        if not a <= c <= b:
            raise InvalidInputError(f"mode must satisfy a <= c <= b, got c={c!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def cdf(self, x: float) -> float:
        a, c, b = self.a, self.c, self.b
        if x <= c:
            if c == a:
                return 0.0 if x <= a else (x - a) / (b - a)  # unreachable x>c guard
            return (x - a) ** 2 / ((b - a) * (c - a))
        if c == b:
            return 1.0 if x >= b else (x - a) / (b - a)
        return 1.0 - (b - x) ** 2 / ((b - a) * (b - c))

    def density(self, x: float) -> float:
        a, c, b = self.a, self.c, self.b
        if x < c:
            return 2.0 * (x - a) / ((b - a) * (c - a))
        if x > c:
            return 2.0 * (b - x) / ((b - a) * (b - c))
        return 2.0 / (b - a)

    def inverse(self, u: float) -> float:
        a, c, b = self.a, self.c, self.b
        split = (c - a) / (b - a)
        if u <= split:
            return a + math.sqrt(u * (b - a) * (c - a))
        return b - math.sqrt((1.0 - u) * (b - a) * (b - c))

    def breakpoints(self) -> tuple[float, ...]:
        if self.a < self.c < self.b:
            return (self.c,)
        return ()

    def shape_params(self) -> dict:
        return {"c": self.c}


@dataclass(frozen=True)
class Beta(ContinuousGrading):
    """Beta(alpha, beta) density mapped affinely onto [a, b]."""

    alpha: float
    beta: float
    a: float = 0.0
    b: float = 1.0

    family: ClassVar[str] = "beta"

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        alpha, beta = float(self.alpha), float(self.beta)
        if not (alpha > 0 and beta > 0 and math.isfinite(alpha) and math.isfinite(beta)):
            raise InvalidInputError(
                f"shape parameters must be positive and finite, got ({alpha!r}, {beta!r})"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def _t(self, x: float) -> float:
        return (x - self.a) / (self.b - self.a)

    def cdf(self, x: float) -> float:
        return float(betainc(self.alpha, self.beta, min(max(self._t(x), 0.0), 1.0)))

    def density(self, x: float) -> float:
        t = self._t(x)
        width = self.b - self.a
        if t <= 0.0:
            return self._edge_density(self.alpha, width)
        if t >= 1.0:
            return self._edge_density(self.beta, width)
        log_pdf = (
            (self.alpha - 1.0) * math.log(t)
            + (self.beta - 1.0) * math.log1p(-t)
            - float(betaln(self.alpha, self.beta))
        )
        return math.exp(log_pdf) / width

    def _edge_density(self, shape: float, width: float) -> float:
        if shape > 1.0:
            return 0.0
        if shape == 1.0:
            return math.exp(-float(betaln(self.alpha, self.beta))) / width
        return math.inf

    def inverse(self, u: float) -> float:
        t = float(betaincinv(self.alpha, self.beta, u))
        return self.a + t * (self.b - self.a)

    def shape_params(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


def _phi(z: float) -> float:
    """Standard normal cdf, via erfc for accuracy in the tails."""
    return 0.5 * math.erfc(-z / _SQRT2)


@dataclass(frozen=True)
class TruncatedNormal(ContinuousGrading):
    """Normal(mu, sigma) restricted and renormalized to [a, b]."""

    mu: float
    sigma: float
    a: float
    b: float

    family: ClassVar[str] = "truncated_normal"

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        mu, sigma = float(self.mu), float(self.sigma)
        if not (math.isfinite(mu) and math.isfinite(sigma) and sigma > 0):
            raise InvalidInputError(
                f"need finite mu and sigma > 0, got ({mu!r}, {sigma!r})"
            )
        z_mass = _phi((b - mu) / sigma) - _phi((a - mu) / sigma)
        if z_mass <= 0.0:
            raise InvalidInputError(
                "the interval carries no normal mass at this mu/sigma "
                "(truncation window too deep in a tail)"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def _z(self, x: float) -> float:
        return (x - self.mu) / self.sigma

    @property
    def _mass(self) -> float:
        return _phi(self._z(self.b)) - _phi(self._z(self.a))

    def cdf(self, x: float) -> float:
        return (_phi(self._z(x)) - _phi(self._z(self.a))) / self._mass

    def density(self, x: float) -> float:
        z = self._z(x)
        return math.exp(-0.5 * z * z) / (self.sigma * _SQRT_2PI * self._mass)

    def inverse(self, u: float) -> float:
        p = _phi(self._z(self.a)) + u * self._mass
        return self.mu + self.sigma * float(ndtri(p))

    def shape_params(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class Power(ContinuousGrading):
    """cdf t^p on the unit interval, mapped affinely onto [a, b]."""

    p: float
    a: float = 0.0
    b: float = 1.0

    family: ClassVar[str] = "power"

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        p = float(self.p)
        if not (math.isfinite(p) and p > 0):
            raise InvalidInputError(f"exponent must be positive and finite, got {p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def _t(self, x: float) -> float:
        return (x - self.a) / (self.b - self.a)

    def cdf(self, x: float) -> float:
        return min(max(self._t(x), 0.0), 1.0) ** self.p

    def density(self, x: float) -> float:
        t = self._t(x)
        width = self.b - self.a
        if t <= 0.0:
            if self.p > 1.0:
                return 0.0
            return 1.0 / width if self.p == 1.0 else math.inf
        return self.p * min(t, 1.0) ** (self.p - 1.0) / width

    def inverse(self, u: float) -> float:
        return self.a + u ** (1.0 / self.p) * (self.b - self.a)

    def shape_params(self) -> dict:
        return {"p": self.p}


@dataclass(frozen=True)
class PiecewiseLinearCdf(ContinuousGrading):
    """A grading interpolated linearly through knots (x_i, y_i).

    Both coordinates must be strictly increasing. The grades need not run
    from 0 to 1: any strictly increasing polyline is a valid grading
    function, probability or not.
    """

    knots: tuple[tuple[float, float], ...]

    family: ClassVar[str] = "piecewise_linear_cdf"

    def __post_init__(self):
        try:
            knots = tuple((float(x), float(y)) for x, y in self.knots)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"knots must be (x, y) pairs: {exc}") from exc
        if len(knots) < 2:
            raise InvalidInputError("need at least 2 knots")
        for x, y in knots:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise InvalidInputError(f"knots must be finite, got ({x!r}, {y!r})")
        for k in range(1, len(knots)):
            if knots[k][0] <= knots[k - 1][0] or knots[k][1] <= knots[k - 1][1]:
                raise InvalidInputError(
                    "knots must be strictly increasing in both coordinates, "
                    f"got {knots[k - 1]!r} then {knots[k]!r}"
                )
        object.__setattr__(self, "knots", knots)

    @property
    def support(self) -> tuple[float, float]:
        return (self.knots[0][0], self.knots[-1][0])

    def _segment(self, x: float) -> int:
        xs = [k[0] for k in self.knots]
        return min(max(bisect_right(xs, x) - 1, 0), len(self.knots) - 2)

    def cdf(self, x: float) -> float:
        if x >= self.knots[-1][0]:
            return self.knots[-1][1]
        if x <= self.knots[0][0]:
            return self.knots[0][1]
        i = self._segment(x)
        (x0, y0), (x1, y1) = self.knots[i], self.knots[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def density(self, x: float) -> float:
        i = self._segment(x)
        (x0, y0), (x1, y1) = self.knots[i], self.knots[i + 1]
        return (y1 - y0) / (x1 - x0)

    def inverse(self, u: float) -> float:
        if u >= self.knots[-1][1]:
            return self.knots[-1][0]
        if u <= self.knots[0][1]:
            return self.knots[0][0]
        ys = [k[1] for k in self.knots]
        i = min(max(bisect_right(ys, u) - 1, 0), len(self.knots) - 2)
        (x0, y0), (x1, y1) = self.knots[i], self.knots[i + 1]
        return x0 + (u - y0) * (x1 - x0) / (y1 - y0)

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.knots[1:-1])

    def shape_params(self) -> dict:
        return {"knots": [[x, y] for x, y in self.knots]}
