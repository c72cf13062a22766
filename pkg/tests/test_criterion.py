"""Sum criterion and critical order tests against independent oracles."""

import math

import pytest

from dinicert import (
    DiniFamily,
    DomainError,
    NumericFailure,
    Order,
    PoleError,
    bessel_j,
    critical_equation,
    critical_order,
    evaluate_criterion,
    sum_closed,
    sum_truncated,
)

# Root of J_nu(1) = J_{nu+1}(1): the first Dini zero of the a=1 family sits
# exactly at radius 1 there, so the closed-form sum has a pole.
NU_POLE_A1 = -0.3400924939228838


def exact_partial_half(n_terms):
    """Partial criterion sum for (a=1, nu=1/2): zeros are (2n-1)pi/2."""
    return math.fsum(1.0 / (((2 * n - 1) * math.pi / 2.0) ** 2 - 1.0)
                     for n in range(1, n_terms + 1))


class TestSumClosed:
    def test_tangent_value(self):
        val = sum_closed(DiniFamily(1.0, Order(0.5)))
        assert val == pytest.approx(math.tan(1.0) / 2.0, abs=1e-10)

    def test_half_integer_a2(self):
        # assembled from J_{1/2}(1), J'_{1/2}(1) in closed form
        j = math.sqrt(2.0 / math.pi) * math.sin(1.0)
        jp = math.sqrt(2.0 / math.pi) * (math.cos(1.0) - 0.5 * math.sin(1.0))
        expected = -0.5 * (-1.5 * j + jp) / (1.5 * j + jp)
        val = sum_closed(DiniFamily(2.0, Order(0.5)))
        assert val == pytest.approx(expected, rel=1e-12)
        assert val == pytest.approx(0.4134685738456465, rel=1e-12)

    def test_pole_raises(self):
        with pytest.raises(PoleError):
            sum_closed(DiniFamily(1.0, Order(NU_POLE_A1)))


class TestSumTruncated:
    def test_exact_partial_and_tail(self):
        value, tail = sum_truncated(DiniFamily(1.0, Order(0.5)), 8)
        assert value == pytest.approx(exact_partial_half(8), abs=1e-12)
        true_tail = math.tan(1.0) / 2.0 - value
        assert tail >= true_tail > 0.0
        # integral-comparison bound from the eighth zero with spacing pi
        om8 = 15.0 * math.pi / 2.0
        ref = math.log((om8 + 1.0) / (om8 - 1.0)) / (2.0 * math.pi)
        assert tail == pytest.approx(ref, abs=1e-10)

    def test_empty_sum(self):
        fam = DiniFamily(1.0, Order(0.5))
        value, tail = sum_truncated(fam, 0)
        assert value == 0.0
        assert tail >= sum_closed(fam)

    def test_tail_decreases_with_terms(self):
        fam = DiniFamily(1.0, Order(0.5))
        tails = [sum_truncated(fam, n)[1] for n in (4, 8, 12)]
        assert tails[0] > tails[1] > tails[2]

    def test_enclosure(self):
        fam = DiniFamily(2.0, Order(1.0))
        value, tail = sum_truncated(fam, 10)
        closed = sum_closed(fam)
        assert value <= closed <= value + tail

    def test_inapplicable_when_zero_inside(self):
        with pytest.raises(NumericFailure):
            sum_truncated(DiniFamily(1.0, Order(-0.5)), 6)

    def test_term_count_validation(self):
        fam = DiniFamily(1.0, Order(0.5))
        with pytest.raises(DomainError):
            sum_truncated(fam, -1)
        with pytest.raises(DomainError):
            sum_truncated(fam, 19)


class TestEvaluateCriterion:
    def test_fields(self):
        fam = DiniFamily(1.0, Order(0.5))
        crit = evaluate_criterion(fam, n_terms=8)
        assert crit.terms_used == 8
        assert crit.threshold_margin == pytest.approx(1.0 - crit.closed_value,
                                                      rel=1e-15)
        assert crit.truncated_value <= crit.closed_value
        assert crit.closed_value <= crit.truncated_value + crit.tail_bound

    def test_truncated_route_none_when_inapplicable(self):
        crit = evaluate_criterion(DiniFamily(1.0, Order(-0.5)), n_terms=6)
        assert crit.truncated_value is None and crit.tail_bound is None


class TestCriticalEquation:
    def test_positive_above_threshold(self):
        # 3 J_1(1) - 2 J_2(1) > 0, consistent with nu = 1 exceeding nu_2
        val = critical_equation(2.0, 1.0)
        ref = 3.0 * bessel_j(Order(1.0), 1.0) - 2.0 * bessel_j(Order(2.0), 1.0)
        assert val == pytest.approx(ref, rel=1e-13)
        assert val > 0.0

    @pytest.mark.parametrize("nu", [-0.5, 0.0, 0.8])
    def test_special_case_forms(self, nu):
        # a=2 reduces to 3 J_nu(1) + 2(nu-2) J_{nu+1}(1),
        # a=1 to J_nu(1) - (3-2nu) J_{nu+1}(1)
        j0 = bessel_j(Order(nu), 1.0)
        j1 = bessel_j(Order(nu + 1.0), 1.0)
        assert critical_equation(2.0, nu) == pytest.approx(
            3.0 * j0 + 2.0 * (nu - 2.0) * j1, rel=1e-13)
        assert critical_equation(1.0, nu) == pytest.approx(
            j0 - (3.0 - 2.0 * nu) * j1, rel=1e-13)


class TestCriticalOrder:
    def test_a2_root(self):
        res = critical_order(2.0)
        assert res.nu_a == pytest.approx(-0.1438607404254301, abs=1e-9)
        assert res.hi - res.lo <= 1e-10
        assert critical_equation(2.0, res.lo) * critical_equation(2.0, res.hi) < 0
        assert abs(res.sum_at_root - 1.0) <= 1e-8
        assert res.unique_in_scan

    def test_a1_root(self):
        res = critical_order(1.0)
        assert res.nu_a == pytest.approx(0.3060766614512549, abs=1e-9)
        assert abs(res.sum_at_root - 1.0) <= 1e-8

    def test_residual_scale(self):
        res = critical_order(2.0)
        j0 = bessel_j(Order(res.nu_a), 1.0)
        j1 = bessel_j(Order(res.nu_a + 1.0), 1.0)
        scale = abs(3.0 * j0) + abs((2.0 - 2.0 * res.nu_a + 2.0) * j1)
        assert res.residual <= 1e-12 * scale

    def test_degenerate_coupling_is_exact(self):
        # at a = 1/2 the J_nu term drops out and the root is nu = 5/4
        res = critical_order(0.5)
        assert res.nu_a == pytest.approx(1.25, abs=1e-10)

    def test_validation(self):
        with pytest.raises(DomainError):
            critical_order(0.0)
        with pytest.raises(DomainError):
            critical_order(1.0, search=(0.5, 0.2))
        with pytest.raises(DomainError):
            critical_order(1.0, tol=0.0)

    def test_no_sign_change(self):
        with pytest.raises(NumericFailure, match="no sign change"):
            critical_order(0.1)


class TestCriterionShape:
    @pytest.mark.parametrize("a,start", [(1.0, -0.2), (2.0, -0.45)])
    def test_margin_strictly_increasing(self, a, start):
        # on the subinterval where omega_1 > 1 the margin 1 - S increases
        nus = [start + 0.2 * k for k in range(17)]
        sums = [sum_closed(DiniFamily(a, Order(nu))) for nu in nus]
        for s1, s2 in zip(sums, sums[1:]):
            assert s1 > s2

    def test_nu_a_continuous_in_a(self):
        grid = [0.5 + 0.25 * k for k in range(11)]
        roots = [critical_order(a).nu_a for a in grid]
        for r1, r2 in zip(roots, roots[1:]):
            # generous secant bound: |d nu_a / d a| < 3 on [0.5, 4]
            assert abs(r2 - r1) <= 0.75
