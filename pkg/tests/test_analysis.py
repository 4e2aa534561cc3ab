import math

import numpy as np
import pytest

from rieszwell.analysis import (BranchChoice, boundary_residual,
                                branch_ambiguity_demo, consistency_sweep,
                                i_hybrid, monotonicity_scan,
                                replacement_value)
from rieszwell.closedform import (FractionalOrder, WellConfig, f_closed,
                                  i_closed)
from rieszwell.errors import DomainError
from rieszwell.oracle import QuadratureSettings

WELL = WellConfig()


class TestIHybrid:
    def test_closed_route_away_from_edge(self):
        res = i_hybrid(FractionalOrder(0.5), WELL, 0.3)
        assert res.method == "closed"
        assert res.value == i_closed(FractionalOrder(0.5), WELL, 0.3).value

    def test_oracle_route_inside_window(self):
        res = i_hybrid(FractionalOrder(0.5), WELL, 0.99995)
        assert res.method == "oracle"
        assert not res.degraded

    def test_exact_boundary_is_closed_definition(self):
        res = i_hybrid(FractionalOrder(0.5), WELL, 1.0)
        assert res.method == "closed"
        assert res.value == 2.0 * f_closed(FractionalOrder(0.5)).value

    def test_routes_agree_across_the_window(self):
        # I closes onto the edge value like delta**(1-alpha); the hybrid
        # routing must not introduce any jump beyond that cusp scaling
        order = FractionalOrder(0.5)
        edge = i_hybrid(order, WELL, 1.0).value
        for delta in (2e-4, 5e-5, 1e-5):
            for sign in (-1.0, 1.0):
                value = i_hybrid(order, WELL, 1.0 + sign * delta).value
                assert abs(value - edge) <= 5.0 * delta ** 0.5


class TestBoundaryResidual:
    def test_sign_opposite_to_alpha(self):
        assert boundary_residual(FractionalOrder(0.5), WELL).value < 0.0
        assert boundary_residual(FractionalOrder(-0.5), WELL).value > 0.0

    def test_nonzero_for_spot_orders(self):
        for alpha in (0.25, 0.5, 0.75, -0.25, -0.75):
            assert abs(boundary_residual(FractionalOrder(alpha),
                                         WELL).value) > 1e-3

    def test_small_alpha_probe(self):
        assert abs(boundary_residual(FractionalOrder(1e-4),
                                     WELL).value) <= 1e-3

    def test_proportional_to_f(self):
        # residual == -(2A/pi) (pi hbar/2a)^alpha f(alpha) exactly
        for well in (WELL, WellConfig(a=2.0, amplitude=3.0, hbar=0.5)):
            for alpha in (0.5, -0.25, 0.75):
                order = FractionalOrder(alpha)
                expected = -(2.0 * well.amplitude / math.pi) \
                    * (math.pi * well.hbar / (2.0 * well.a)) ** alpha \
                    * f_closed(order).value
                res = boundary_residual(order, well)
                assert abs(res.value - expected) <= 1e-12 * abs(expected)


class TestMonotonicityScan:
    def test_forty_point_grid(self):
        grid = [a for a in np.linspace(-0.9, 0.9, 40) if abs(a) >= 1e-3]
        report = monotonicity_scan(grid)
        assert report.passed
        assert report.strictly_increasing
        assert report.derivatives_positive
        assert report.violations == []

    def test_two_point_grid_brackets_zero(self):
        report = monotonicity_scan([-0.5, 0.5])
        assert report.values[0] < 0.0 < report.values[1]
        assert report.passed

    def test_single_point_grid_trivially_passes(self):
        report = monotonicity_scan([0.3])
        assert report.passed
        assert len(report.values) == 1

    def test_rejects_unsorted_grid(self):
        with pytest.raises(DomainError):
            monotonicity_scan([0.5, 0.25])

    def test_rejects_invalid_grid_point(self):
        with pytest.raises(DomainError):
            monotonicity_scan([-0.5, 0.0, 0.5])


class TestBranchAmbiguity:
    GRID = [0.5, -0.5, 1.0, -1.0, 2.0, -2.0]

    def test_four_choices_enumerated(self):
        choices = BranchChoice.all_choices()
        assert len(choices) == 4
        assert len({(c.cut_first, c.cut_second) for c in choices}) == 4

    def test_mixed_choice_reproduces_abs_power(self):
        report = branch_ambiguity_demo(FractionalOrder(0.5), self.GRID)
        mixed = [d for d in report.deviations if d.choice.is_mixed]
        assert len(mixed) == 1
        assert mixed[0].sup_dev <= 1e-12

    def test_half_plane_analytic_choices_fail_one_semi_axis(self):
        report = branch_ambiguity_demo(FractionalOrder(0.5), self.GRID)
        analytic = [d for d in report.deviations
                    if d.choice.is_half_plane_analytic]
        assert len(analytic) == 2
        for dev in analytic:
            assert dev.max_dev_positive <= 1e-12
            assert dev.max_dev_negative >= 1.0

    def test_every_choice_exact_on_at_least_one_semi_axis(self):
        report = branch_ambiguity_demo(FractionalOrder(0.5), self.GRID)
        both_exact = 0
        for dev in report.deviations:
            assert min(dev.max_dev_positive, dev.max_dev_negative) <= 1e-12
            if dev.sup_dev <= 1e-12:
                both_exact += 1
                assert dev.choice.is_mixed
        assert both_exact == 1

    def test_upper_analytic_deviation_at_minus_one(self):
        # continuation through the lower half plane rotates the negative
        # semi-axis value; at alpha = 1/2, q = -1 the deviation exceeds 1
        order = FractionalOrder(0.5)
        value = replacement_value(BranchChoice("upper", "upper"), order, -1.0)
        assert abs(value - 1.0) >= 1.0

    def test_rejects_zero_in_grid(self):
        with pytest.raises(DomainError):
            branch_ambiguity_demo(FractionalOrder(0.5), [1.0, 0.0])
        with pytest.raises(DomainError):
            replacement_value(BranchChoice("upper", "lower"),
                              FractionalOrder(0.5), 0.0)

    def test_rejects_unknown_cut(self):
        with pytest.raises(DomainError):
            BranchChoice("sideways", "lower")


class TestConsistencySweep:
    def test_small_grid_passes(self):
        report = consistency_sweep([-0.5, 0.5], [0.0, 0.5, 1.1, 2.0], WELL)
        assert report.passed
        assert report.max_mixed_diff <= report.tolerance
        assert len(report.grid) == 8
        assert report.failures == []
        assert report.worst_point in report.grid

    def test_empty_grids_pass(self):
        report = consistency_sweep([], [], WELL)
        assert report.passed
        assert report.grid == []
        assert report.worst_point is None

    def test_invalid_alpha_recorded_not_fatal(self):
        report = consistency_sweep([0.0, 0.5], [0.5, 1.5], WELL)
        assert len(report.failures) == 2
        assert all(f.alpha == 0.0 for f in report.failures)
        assert len(report.grid) == 2  # the alpha=0.5 points survive
        assert report.passed

    def test_report_alignment_guard(self):
        from rieszwell.analysis import ConsistencyReport
        with pytest.raises(DomainError):
            ConsistencyReport(grid=[(0.5, 0.0)], closed_values=[],
                              oracle_values=[], max_abs_diff=0.0,
                              max_rel_diff=0.0, max_mixed_diff=0.0,
                              worst_point=None, tolerance=1e-6, passed=True)

    def test_pass_stable_under_tolerance_halving_of_oracle(self):
        cfg = QuadratureSettings(rel_tol=1e-8)
        tighter = QuadratureSettings(rel_tol=5e-9)
        grid_a = consistency_sweep([0.5], [0.5, 1.5], WELL, cfg)
        grid_b = consistency_sweep([0.5], [0.5, 1.5], WELL, tighter)
        assert grid_a.passed == grid_b.passed
