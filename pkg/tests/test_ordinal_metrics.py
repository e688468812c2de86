"""Tests for ρ, Δ, Ξ, f and oscillation."""

from itertools import combinations

import pytest

from app.models.config import SchemeConfig
from app.models.errors import NonIntegerQuotient, PreconditionViolation
from app.services.scheme_engine import SchemeView
from app.services.type_core import builtin_type
from app.services.ordinal_metrics import INFINITY, MetricView


class TestRho:
    """Test the ordinal metric ρ."""

    @pytest.mark.parametrize(
        "a, b, expected", [(1, 2, 2), (0, 2, 1), (5, 5, 0), (0, 3, 1), (2, 8, 4)]
    )
    def test_values(self, tstar_metrics, a, b, expected):
        assert tstar_metrics.rho(a, b) == expected

    def test_symmetric(self, tstar_metrics):
        for a, b in combinations(range(14), 2):
            assert tstar_metrics.rho(a, b) == tstar_metrics.rho(b, a)

    def test_zero_iff_equal(self, tstar_metrics):
        for a, b in combinations(range(14), 2):
            assert tstar_metrics.rho(a, b) > 0

    def test_diameter(self, tstar_metrics):
        assert tstar_metrics.rho_diameter((1, 2)) == 2
        assert tstar_metrics.rho_diameter((7,)) == 0
        assert tstar_metrics.rho_diameter((0, 1, 2, 3)) == 2

    def test_rho_function(self, tstar_metrics):
        assert tstar_metrics.rho_function(3, range(4)) == {0: 1, 1: 2, 2: 2, 3: 0}


class TestDelta:
    """Test Δ."""

    def test_values(self, tstar_metrics):
        assert tstar_metrics.delta(1, 2) == 2
        assert tstar_metrics.delta(2, 8) == 4

    def test_equal_arguments(self, tstar_metrics):
        assert tstar_metrics.delta(4, 4) is INFINITY
        assert 100 < INFINITY

    def test_delta_at_most_rho(self, tstar_metrics):
        for a, b in combinations(range(20), 2):
            assert tstar_metrics.delta(a, b) <= tstar_metrics.rho(a, b)

    def test_min_difference_absent_on_long_prefix(self, tstar_metrics):
        assert tstar_metrics.delta_min_difference(1, 2) is None


class TestXi:
    """Test the piece index Ξ."""

    @pytest.mark.parametrize("alpha, k, expected", [(0, 2, -1), (2, 2, 1), (3, 2, 2), (5, 0, 0)])
    def test_tstar_values(self, tstar_metrics, alpha, k, expected):
        assert tstar_metrics.xi(alpha, k) == expected

    def test_t2_values(self, t2_metrics):
        assert [t2_metrics.xi(2, k) for k in (1, 2, 3)] == [1, 1, 0]

    def test_non_integer_quotient(self, mocker, tstar):
        """Test a size jump that is not a multiple of the block width is reported."""
        metrics = MetricView(tstar)
        mocker.patch.object(metrics, "f", side_effect=lambda alpha, l: {1: 2, 2: 4}[l])
        mocker.patch.object(tstar, "m", return_value=4)
        mocker.patch.object(tstar, "r", return_value=1)

        with pytest.raises(NonIntegerQuotient, match="not integral"):
            metrics._xi(9, 2)

    def test_negative_level(self, tstar_metrics):
        with pytest.raises(PreconditionViolation, match="k >= 0"):
            tstar_metrics.xi(4, -1)

    def test_xi_lemma(self, tstar_metrics):
        """Test Ξ agrees below Δ and is ordered at ρ."""
        for a, b in combinations(range(14), 2):
            rho, delta = tstar_metrics.rho(a, b), tstar_metrics.delta(a, b)
            for k in range(delta):
                assert tstar_metrics.xi(a, k) == tstar_metrics.xi(b, k)
            assert 0 <= tstar_metrics.xi(a, rho) < tstar_metrics.xi(b, rho)


class TestF:
    """Test f_α and the mod-finite comparison."""

    def test_t2_values(self, t2_metrics):
        assert t2_metrics.f(1, 1) == 2
        assert all(t2_metrics.f(0, l) == 1 for l in range(6))

    def test_rank_zero_closures_are_singletons(self, tstar_metrics):
        assert all(tstar_metrics.f(alpha, 0) == 1 for alpha in range(10))

    def test_compare_strict_from_one(self, tstar_metrics):
        comparison = tstar_metrics.f_mod_finite_compare(0, 2)

        assert comparison.relation == "lt_star"
        assert comparison.rho == 1
        assert comparison.strict_from == 1

    def test_compare_strict_from_two(self, tstar_metrics):
        comparison = tstar_metrics.f_mod_finite_compare(1, 2)

        assert comparison.everywhere_leq
        assert comparison.strict_from == 2
        assert comparison.pointwise == [[0, 1, 1], [1, 2, 2]]

    def test_compare_equal(self, tstar_metrics):
        assert tstar_metrics.f_mod_finite_compare(3, 3).relation == "equal"

    def test_compare_needs_order(self, tstar_metrics):
        with pytest.raises(ValueError, match="expects alpha < beta"):
            tstar_metrics.f_mod_finite_compare(2, 1)


class TestOscillation:
    """Test oscillation witnesses."""

    def test_no_witnesses_when_dominated(self, t2_metrics):
        assert t2_metrics.osc(0, 1, 0) == (0, ())

    def test_equal_arguments(self, tstar_metrics):
        assert tstar_metrics.osc(6, 6) == (0, ())

    def test_witnesses_below_rho(self, tstar_metrics):
        for a, b in combinations(range(14), 2):
            count, witnesses = tstar_metrics.osc(a, b)
            assert count == len(witnesses)
            assert all(0 <= s < tstar_metrics.rho(a, b) for s in witnesses)


class TestClosureHelpers:
    def test_increasing_bijection(self, tstar_metrics):
        assert tstar_metrics.increasing_bijection(1, 2, 1) == {0: 0, 1: 2}

    def test_increasing_bijection_size_mismatch(self, tstar_metrics):
        with pytest.raises(ValueError, match="differ in size"):
            tstar_metrics.increasing_bijection(1, 2, 2)

    def test_ultrametric_failures_are_reported(self, tstar_metrics):
        failures = tstar_metrics.ultrametric_failures(8, limit=3)

        assert len(failures) <= 3
        for a, b, c in failures:
            assert tstar_metrics.rho(a, c) > max(tstar_metrics.rho(a, b), tstar_metrics.rho(b, c))


class TestMemoTables:
    """Test the metric tables are bounded by the scheme configuration."""

    def test_default_bound(self, tstar_metrics):
        assert tstar_metrics.rho.cache_info().maxsize == 1 << 16

    def test_configured_bound(self):
        scheme = SchemeView(builtin_type("tstar"), SchemeConfig(cache_size=4))
        metrics = MetricView(scheme)
        for b in range(1, 10):
            metrics.rho(0, b)

        assert scheme.closure.cache_info().maxsize == 4
        tables = (metrics.rho, metrics.delta, metrics.xi)
        assert [table.cache_info().maxsize for table in tables] == [4, 4, 4]
        assert metrics.rho.cache_info().currsize == 4
