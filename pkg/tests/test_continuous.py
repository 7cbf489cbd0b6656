import math
from dataclasses import dataclass

import pytest

from graddiv import (
    NEGATIVE_INFINITY,
    Beta,
    ContinuousGrading,
    InvalidInputError,
    PiecewiseLinearCdf,
    Power,
    QuadratureSpec,
    Triangular,
    TruncatedNormal,
    Uniform,
    classical_entropy,
    corrected_entropy,
    divergence_continuous,
    riemann_divergence,
    symmetric_divergence,
)

U01 = Uniform(0.0, 1.0)
P2 = Power(2.0)

PROBABILITY_FAMILIES = [
    Uniform(0.0, 1.0),
    Uniform(-3.0, 7.0),
    Triangular(0.0, 0.25, 1.0),
    Triangular(-1.0, 2.0, 4.0),
    Beta(2.0, 2.0),
    Beta(2.0, 5.0, a=-1.0, b=3.0),
    TruncatedNormal(0.0, 1.0, -1.0, 2.0),
    Power(2.0),
    Power(3.0, a=1.0, b=2.0),
    PiecewiseLinearCdf(((0.0, 0.0), (1.0, 0.5), (3.0, 1.0))),
]


@dataclass(frozen=True)
class _HalfSupported(ContinuousGrading):
    """Test double whose density vanishes on the right half of [0, 1].

    Bypasses the catalog on purpose: a genuine zero-density region makes
    the divergence of any fully supported grading from it -inf.
    """

    family = "test_half_supported"

    @property
    def support(self):
        return (0.0, 1.0)

    def cdf(self, x):
        return min(2.0 * x, 1.0)

    def density(self, x):
        return 2.0 if x < 0.5 else 0.0

    def shape_params(self):
        return {}


class TestDivergenceContinuous:
    def test_power_two_from_uniform(self):
        r = divergence_continuous(P2, U01)
        assert r.value == pytest.approx(0.5 - math.log(2.0), abs=1e-8)
        assert r.terms_used > 0
        assert r.error_estimate > 0.0
        assert r.flags == frozenset()

    def test_uniform_from_power_two(self):
        r = divergence_continuous(U01, P2)
        assert r.value == pytest.approx(math.log(2.0) - 1.0, abs=1e-8)

    def test_self_divergence_is_zero(self):
        assert divergence_continuous(U01, U01).value == 0.0

    def test_support_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            divergence_continuous(U01, Uniform(0.0, 2.0))

    def test_zero_density_region_diverges(self):
        r = divergence_continuous(U01, _HalfSupported())
        assert r.value == -math.inf
        assert r.flags == frozenset({NEGATIVE_INFINITY})

    def test_gibbs_bound_for_probability_pairs(self):
        pairs = [
            (Triangular(0.0, 0.25, 1.0), Beta(2.0, 2.0)),
            (Beta(2.0, 2.0), Power(2.0)),
            (Power(2.0), Triangular(0.0, 0.75, 1.0)),
        ]
        for F, G in pairs:
            assert divergence_continuous(F, G).value <= 1e-12

    def test_beta_pair_with_shared_support(self):
        r = divergence_continuous(Beta(5.0, 5.0), Beta(2.0, 2.0))
        assert math.isfinite(r.value)
        assert r.value < 0.0

    def test_custom_spec_tightens_estimate(self):
        loose = divergence_continuous(P2, U01, QuadratureSpec(rel_tol=1e-6))
        tight = divergence_continuous(P2, U01, QuadratureSpec(rel_tol=1e-10))
        assert tight.error_estimate < loose.error_estimate
        exact = 0.5 - math.log(2.0)
        assert abs(tight.value - exact) <= abs(loose.value - exact) + 1e-12


class TestRiemannDivergence:
    def test_uniform_self_is_exactly_zero(self):
        assert riemann_divergence(Uniform(0.0, 2.0), Uniform(0.0, 2.0), 7) == 0.0

    def test_first_order_convergence(self):
        exact = 0.5 - math.log(2.0)
        errs = [abs(riemann_divergence(P2, U01, n) - exact) for n in (100, 1000, 10000)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-4

    def test_agrees_with_quadrature_on_beta(self):
        b22 = Beta(2.0, 2.0)
        quad = divergence_continuous(b22, U01).value
        grid = riemann_divergence(b22, U01, 100_000)
        assert grid == pytest.approx(quad, abs=1e-4)

    def test_rejects_small_grids(self):
        with pytest.raises(InvalidInputError):
            riemann_divergence(U01, U01, 1)

    def test_rejects_support_mismatch(self):
        with pytest.raises(InvalidInputError):
            riemann_divergence(U01, Uniform(0.0, 2.0), 100)

    def test_returns_plain_float(self):
        assert isinstance(riemann_divergence(P2, U01, 50), float)


class TestCorrectedEntropy:
    def test_uniform_is_zero(self):
        assert corrected_entropy(Uniform(0.0, 10.0)).value == 0.0
        assert corrected_entropy(Uniform(-4.0, -1.0)).value == 0.0

    def test_beta_two_two(self):
        # 5/3 - ln 6: corrected entropy of the symmetric quadratic density
        r = corrected_entropy(Beta(2.0, 2.0))
        assert r.value == pytest.approx(5.0 / 3.0 - math.log(6.0), abs=1e-8)

    def test_power_two(self):
        r = corrected_entropy(P2)
        assert r.value == pytest.approx(0.5 - math.log(2.0), abs=1e-8)

    def test_arcsine_shape_within_algebraic_floor(self):
        # Endpoint densities diverge like x^(-1/2); dyadic panels carry a
        # self-similar error floor near 1e-7, so the tolerance is coarser.
        r = corrected_entropy(Beta(0.5, 0.5))
        assert r.value == pytest.approx(math.log(math.pi / 4.0), abs=1e-6)

    def test_rejects_non_probability_grading(self):
        with pytest.raises(InvalidInputError):
            corrected_entropy(PiecewiseLinearCdf(((0.0, 0.0), (1.0, 0.5))))

    def test_rescaling_invariance(self):
        # Affinely transplanting a shape to another interval must not move
        # its corrected entropy.
        pairs = [
            (Uniform(0.0, 1.0), Uniform(-7.0, 4.0)),
            (Triangular(0.0, 0.25, 1.0), Triangular(10.0, 10.5, 12.0)),
            (Beta(2.0, 5.0), Beta(2.0, 5.0, a=-1.0, b=3.0)),
            (Power(2.0), Power(2.0, a=5.0, b=6.5)),
            (
                TruncatedNormal(0.5, 0.5, 0.0, 1.0),
                TruncatedNormal(5.0, 1.0, 4.0, 6.0),
            ),
        ]
        for base, moved in pairs:
            hb = corrected_entropy(base).value
            hm = corrected_entropy(moved).value
            assert hm == pytest.approx(hb, abs=1e-8)


class TestClassicalEntropy:
    def test_uniform(self):
        r = classical_entropy(Uniform(0.0, 10.0))
        assert r.value == pytest.approx(math.log(10.0), abs=1e-10)

    def test_triangular(self):
        # 1/2 + ln((b - a) / 2) for any triangular density
        r = classical_entropy(Triangular(0.0, 1.0, 2.0))
        assert r.value == pytest.approx(0.5, abs=1e-8)

    def test_shift_invariance(self):
        a = classical_entropy(TruncatedNormal(0.0, 1.0, -1.0, 1.0)).value
        b = classical_entropy(TruncatedNormal(5.0, 1.0, 4.0, 6.0)).value
        assert a == pytest.approx(b, abs=1e-10)

    def test_split_from_corrected_by_log_width(self):
        for F in PROBABILITY_FAMILIES:
            a, b = F.support
            corrected = corrected_entropy(F).value
            classical = classical_entropy(F).value
            assert corrected == pytest.approx(
                classical - math.log(b - a), abs=1e-6
            )


class TestSymmetricDivergence:
    def test_uniform_power_pair(self):
        r = symmetric_divergence(U01, P2)
        assert r.value == pytest.approx(-0.5, abs=1e-8)

    def test_swap_invariance(self):
        pairs = [
            (U01, P2),
            (Beta(2.0, 2.0), Triangular(0.0, 0.25, 1.0)),
            (TruncatedNormal(0.0, 1.0, -1.0, 2.0), Uniform(-1.0, 2.0)),
        ]
        for F, G in pairs:
            assert abs(
                symmetric_divergence(F, G).value - symmetric_divergence(G, F).value
            ) <= 1e-10

    def test_self_pair_is_zero(self):
        assert symmetric_divergence(P2, P2).value == 0.0

    def test_nonpositive_for_probability_pairs(self):
        r = symmetric_divergence(Beta(2.0, 2.0), Triangular(0.0, 0.5, 1.0))
        assert r.value <= 0.0

    def test_zero_density_region_diverges(self):
        r = symmetric_divergence(U01, _HalfSupported())
        assert r.value == -math.inf
        assert NEGATIVE_INFINITY in r.flags
