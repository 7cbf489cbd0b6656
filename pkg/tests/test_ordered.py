import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graddiv import GradingSample, IncrementPair, InvalidInputError, increments, rate_h

from conftest import grading_samples


class TestGradingSample:
    def test_grades_coerced_to_float_tuple(self):
        s = GradingSample((0, 1, 2))
        assert s.grades == (0.0, 1.0, 2.0)
        assert all(isinstance(g, float) for g in s.grades)

    def test_labels_default_none(self):
        assert GradingSample((0.0, 1.0)).labels is None

    def test_labels_kept(self):
        s = GradingSample((0.0, 1.0, 2.0), labels=("a", "b", "c"))
        assert s.labels == ("a", "b", "c")

    def test_too_few_grades(self):
        with pytest.raises(InvalidInputError):
            GradingSample((1.0,))

    def test_non_increasing(self):
        with pytest.raises(InvalidInputError):
            GradingSample((0.0, 1.0, 1.0))
        with pytest.raises(InvalidInputError):
            GradingSample((0.0, 2.0, 1.0))

    def test_non_finite(self):
        with pytest.raises(InvalidInputError):
            GradingSample((0.0, math.inf))
        with pytest.raises(InvalidInputError):
            GradingSample((math.nan, 1.0))

    def test_label_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            GradingSample((0.0, 1.0), labels=("a",))


class TestIncrements:
    def test_two_point_sample(self):
        s = GradingSample((0.0, 1.0))
        assert increments(s) == [1.0]

    def test_three_point_sample(self):
        s = GradingSample((0.0, 0.25, 1.0))
        assert increments(s) == [0.25, 0.75]

    def test_negative_grades(self):
        s = GradingSample((-2.0, -0.5, 3.0))
        assert increments(s) == [1.5, 3.5]

    @given(grading_samples)
    def test_increments_telescope(self, sample):
        total = math.fsum(increments(sample))
        span = sample.grades[-1] - sample.grades[0]
        assert abs(total - span) <= 1e-12 * max(1.0, abs(span))

    @given(grading_samples)
    def test_increments_positive(self, sample):
        assert all(d > 0 for d in increments(sample))


class TestIncrementPair:
    def test_negative_delta_g(self):
        with pytest.raises(InvalidInputError):
            IncrementPair(-1.0, 1.0)

    def test_negative_delta_f(self):
        with pytest.raises(InvalidInputError):
            IncrementPair(1.0, -1.0)

    def test_non_finite(self):
        with pytest.raises(InvalidInputError):
            IncrementPair(math.inf, 1.0)
        with pytest.raises(InvalidInputError):
            IncrementPair(1.0, math.nan)

    def test_zero_allowed(self):
        pair = IncrementPair(0.0, 0.0)
        assert pair.delta_g == 0.0 and pair.delta_f == 0.0


class TestRateH:
    def test_unit_ratio_is_exactly_zero(self):
        assert rate_h(IncrementPair(1.0, 1.0)) == 0.0

    def test_ratio_two(self):
        assert rate_h(IncrementPair(2.0, 1.0)) == math.log(2.0)

    def test_ratio_one_quarter(self):
        assert rate_h(IncrementPair(0.5, 2.0)) == math.log(0.25)

    def test_zero_numerator_diverges(self):
        assert rate_h(IncrementPair(0.0, 1.0)) == -math.inf

    def test_zero_denominator_rejected(self):
        with pytest.raises(InvalidInputError):
            rate_h(IncrementPair(1.0, 0.0))

    @given(st.floats(1e-6, 1e6))
    def test_equal_increments_give_zero(self, s):
        assert rate_h(IncrementPair(s, s)) == 0.0

    @given(
        st.floats(1e-3, 1e3),
        st.floats(1e-3, 1e3),
    )
    def test_additive_on_products(self, x, y):
        hx = rate_h(IncrementPair(x, 1.0))
        hy = rate_h(IncrementPair(y, 1.0))
        hxy = rate_h(IncrementPair(x * y, 1.0))
        tol = 4 * math.ulp(max(1.0, abs(hx), abs(hy), abs(hxy)))
        assert abs(hxy - (hx + hy)) <= tol

    @given(
        st.integers(-30, 30),
        st.floats(1e-3, 1e3),
        st.floats(1e-3, 1e3),
    )
    def test_scale_invariance_exact_for_dyadic_factors(self, k, dg, df):
        # Powers of two multiply without rounding, so the scaled quotient
        # is bit-identical and the rate must match exactly.
        a = math.ldexp(1.0, k)
        assert rate_h(IncrementPair(a * dg, a * df)) == rate_h(IncrementPair(dg, df))
